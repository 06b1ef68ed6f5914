//! Browser bindings. Every function takes an input document in the TOML
//! format of `lefschetz::document` and returns a JSON string, either
//! `{"ok": ...}` or `{"error": {"class": ..., "message": ...}}`.

use lefschetz::decision::{slp_degree1, wlp_report};
use lefschetz::document::InputObject;
use lefschetz::incidence::multiplication_matrix;
use lefschetz::multiplicity::is_birational;
use lefschetz::{Error, ErrorClass, Monomial, MonomialAlgebra, WlpOptions};
use num_traits::ToPrimitive;
use serde_json::{json, Value};
use wasm_bindgen::prelude::wasm_bindgen;

fn respond(r: lefschetz::Result<Value>) -> String {
    let v = match r {
        Ok(v) => json!({ "ok": v }),
        Err(e) => {
            let class = match e.class() {
                ErrorClass::Input => "input",
                ErrorClass::Precondition => "precondition",
                ErrorClass::Internal => "internal",
            };
            json!({ "error": { "class": class, "message": e.to_string() } })
        }
    };
    v.to_string()
}

fn algebra(obj: &InputObject) -> lefschetz::Result<MonomialAlgebra> {
    match obj {
        InputObject::Complex(delta) => MonomialAlgebra::squarefree_reduction(delta),
        InputObject::Ideal(input) => MonomialAlgebra::new(input.ideal.clone()),
    }
}

/// f-vector, purity and the degree-one strong Lefschetz data of a complex.
#[wasm_bindgen]
pub fn analyze_complex(document: &str) -> String {
    respond((|| {
        let delta = match InputObject::parse(document)? {
            InputObject::Complex(delta) => delta,
            InputObject::Ideal(_) => {
                return Err(Error::Malformed("expected kind = \"complex\"".into()))
            }
        };
        let f = delta.f_vector()?;
        Ok(json!({
            "vertices": delta.vertices(),
            "facets": delta.facet_labels(),
            "f_vector": f.entries(),
            "dim": f.dim(),
            "pure": delta.is_pure(),
            "slp1": serde_json::to_value(slp_degree1(&delta)?).unwrap(),
        }))
    })())
}

/// Weak Lefschetz verdicts and failing primes per degree, for a complex or
/// an Artinian ideal.
#[wasm_bindgen]
pub fn wlp(document: &str) -> String {
    respond((|| {
        let a = algebra(&InputObject::parse(document)?)?;
        let report = wlp_report(&a, &WlpOptions::default())?;
        let mut v = serde_json::to_value(&report).unwrap();
        v["wlp_char0"] = json!(report.has_wlp_char0());
        Ok(v)
    })())
}

/// Determinant and Cremona verdict. An ideal with a `degree` uses the rows
/// of its multiplication matrix in that degree; otherwise the generators.
#[wasm_bindgen]
pub fn birational(document: &str) -> String {
    respond((|| {
        let obj = InputObject::parse(document)?;
        let system = match &obj {
            InputObject::Ideal(input) => match input.degree {
                None => input.system.clone(),
                Some(i) => {
                    let m = multiplication_matrix(&algebra(&obj)?, i).entries;
                    (0..m.rows())
                        .map(|r| {
                            Monomial::from_exponents(
                                m.row(r).iter().map(|e| e.to_u32().unwrap()).collect(),
                            )
                        })
                        .collect()
                }
            },
            InputObject::Complex(_) => {
                return Err(Error::Malformed("expected kind = \"ideal\"".into()))
            }
        };
        let b = is_birational(&system)?;
        Ok(serde_json::to_value(b).unwrap())
    })())
}
