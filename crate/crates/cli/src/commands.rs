use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::Path;

use lefschetz::decision::{
    slp_degree1, wlp_degree, wlp_fullrank_bound_report, wlp_report, Characteristic,
};
use lefschetz::document::{IdealInput, InputObject};
use lefschetz::incidence::{
    facet_ideal_skeleton, incidence_ideal, incidence_matrix, multiplication_matrix, slp1_matrix,
};
use lefschetz::multiplicity::{
    analytic_spread, failure_char_set, is_birational, last_mixed_mult, mixed_mult_positive,
    simplex_mixed_mult,
};
use lefschetz::primes::prime_factors;
use lefschetz::{
    EquigeneratedIdeal, Error, ErrorClass, FailureSet, IntegerMatrix, LabeledMatrix, LoopGraph,
    Monomial, MonomialAlgebra, SimplicialComplex, WlpOptions,
};
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::{Command, MatrixKind};

#[derive(Debug)]
pub struct CliError {
    pub class: &'static str,
    pub message: String,
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let class = match e.class() {
            ErrorClass::Input => "input",
            ErrorClass::Precondition => "precondition",
            ErrorClass::Internal => "internal",
        };
        CliError {
            class,
            message: e.to_string(),
        }
    }
}

impl CliError {
    pub fn input(message: impl Into<String>) -> Self {
        CliError {
            class: "input",
            message: message.into(),
        }
    }
}

pub type Res<T> = std::result::Result<T, CliError>;

pub struct Outcome {
    pub results: Value,
    pub crosschecks: Map<String, Value>,
    pub text: String,
    pub exit: u8,
}

impl Outcome {
    fn new(results: Value, text: String) -> Self {
        Outcome {
            results,
            crosschecks: Map::new(),
            text,
            exit: 0,
        }
    }
}

/// Records an agreeing cross-check, or fails with an internal error.
fn agree<T: PartialEq + std::fmt::Debug>(
    checks: &mut Map<String, Value>,
    name: &str,
    main: T,
    other: T,
) -> Res<()> {
    if main != other {
        return Err(Error::CrossCheck(format!("{name}: {main:?} vs {other:?}")).into());
    }
    checks.insert(name.to_string(), Value::Bool(true));
    Ok(())
}

fn to_json<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report serializes")
}

fn big(v: &BigInt) -> Value {
    match v.to_i64() {
        Some(x) => json!(x),
        None => json!(v.to_string()),
    }
}

pub fn load(path: &Path) -> Res<InputObject> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::input(format!("cannot read {}: {e}", path.display())))?;
    Ok(InputObject::parse(&text)?)
}

fn kind(obj: &InputObject) -> &'static str {
    match obj {
        InputObject::Complex(_) => "complex",
        InputObject::Ideal(_) => "ideal",
    }
}

fn algebra_of(obj: &InputObject) -> Res<MonomialAlgebra> {
    Ok(match obj {
        InputObject::Complex(delta) => MonomialAlgebra::squarefree_reduction(delta)?,
        InputObject::Ideal(input) => MonomialAlgebra::new(input.ideal.clone())?,
    })
}

fn complex_of(obj: &InputObject) -> Res<SimplicialComplex> {
    match obj {
        InputObject::Complex(delta) => Ok(delta.clone()),
        InputObject::Ideal(_) => algebra_of(obj)?.squarefree_complex().ok_or_else(|| {
            Error::Hypothesis(
                "ideal is not generated by squarefree monomials and all variable squares".into(),
            )
            .into()
        }),
    }
}

fn system_ideal(input: &IdealInput) -> Res<EquigeneratedIdeal> {
    Ok(EquigeneratedIdeal::new(
        input.ideal.variables().to_vec(),
        input.system.clone(),
    )?)
}

/// The equigenerated ideal a spread or mixed-multiplicity command acts on.
fn target_ideal(obj: &InputObject, degree: Option<usize>) -> Res<(EquigeneratedIdeal, String)> {
    match (obj, degree) {
        (InputObject::Ideal(input), None) => Ok((system_ideal(input)?, "input generators".into())),
        (_, Some(i)) => Ok((incidence_ideal(&complex_of(obj)?, i)?, format!("I_Δ({i})"))),
        (InputObject::Complex(_), None) => Err(Error::Hypothesis(
            "a complex needs --degree to select an incidence ideal".into(),
        )
        .into()),
    }
}

fn matrix_rows_as_system(m: &IntegerMatrix) -> Res<Vec<Monomial>> {
    (0..m.rows())
        .map(|r| {
            m.row(r)
                .iter()
                .map(|v| {
                    v.to_u32()
                        .ok_or_else(|| CliError::input("negative exponent"))
                })
                .collect::<Res<Vec<u32>>>()
                .map(Monomial::from_exponents)
        })
        .collect()
}

fn degree_of_ideal(obj: &InputObject, flag: Option<usize>) -> Option<usize> {
    match obj {
        InputObject::Ideal(input) => flag.or(input.degree),
        InputObject::Complex(_) => flag,
    }
}

pub fn execute(command: &Command) -> (Value, Res<Outcome>) {
    let path = match command {
        Command::Fvector { file }
        | Command::Matrix { file, .. }
        | Command::IncidenceIdeal { file, .. }
        | Command::Spread { file, .. }
        | Command::Wlp { file, .. }
        | Command::Slp1 { file }
        | Command::CharAnalysis { file, .. }
        | Command::Birational { file, .. }
        | Command::GraphCriteria { file }
        | Command::MixedMult { file, .. } => file,
        Command::Corpus { .. } => unreachable!("corpus is dispatched separately"),
    };
    let obj = match load(path) {
        Ok(obj) => obj,
        Err(e) => {
            return (
                json!({ "path": path.display().to_string(), "kind": null }),
                Err(e),
            )
        }
    };
    let input = json!({ "path": path.display().to_string(), "kind": kind(&obj) });
    (input, dispatch(command, &obj))
}

pub fn dispatch(command: &Command, obj: &InputObject) -> Res<Outcome> {
    match command {
        Command::Fvector { .. } => fvector(obj),
        Command::Matrix { degree, kind, .. } => matrix(obj, *degree, *kind),
        Command::IncidenceIdeal { degree, .. } => incidence(obj, *degree),
        Command::Spread {
            degree,
            facet_skeleton,
            ..
        } => spread(obj, *degree, *facet_skeleton),
        Command::Wlp {
            degree,
            characteristic,
            mixed_multiplicity,
            ..
        } => wlp(obj, *degree, characteristic, *mixed_multiplicity),
        Command::Slp1 { .. } => slp1(obj),
        Command::CharAnalysis { degree, oracle, .. } => char_analysis(obj, *degree, *oracle),
        Command::Birational { degree, .. } => birational(obj, *degree),
        Command::GraphCriteria { .. } => graph_criteria(obj),
        Command::MixedMult { degree, .. } => mixed_mult(obj, *degree),
        Command::Corpus { .. } => unreachable!("corpus is dispatched separately"),
    }
}

fn fvector(obj: &InputObject) -> Res<Outcome> {
    let delta = complex_of(obj)?;
    let f = delta.f_vector()?;
    let mut out = Outcome::new(
        json!({ "f_vector": f.entries(), "dim": f.dim(), "pure": delta.is_pure() }),
        format!("f-vector (from f_-1): {f}\ndimension: {}\n", f.dim()),
    );
    let hilbert: Vec<u64> = MonomialAlgebra::squarefree_reduction(&delta)?
        .hilbert_function()
        .into_iter()
        .map(|h| h as u64)
        .collect();
    agree(
        &mut out.crosschecks,
        "hilbert_function",
        f.entries().to_vec(),
        hilbert,
    )?;
    Ok(out)
}

fn matrix(obj: &InputObject, i: usize, kind: Option<MatrixKind>) -> Res<Outcome> {
    let kind = kind.unwrap_or(match obj {
        InputObject::Complex(_) => MatrixKind::Incidence,
        InputObject::Ideal(_) => MatrixKind::Multiplication,
    });
    let mut checks = Map::new();
    let (m, name): (LabeledMatrix, &str) = match kind {
        MatrixKind::Incidence => {
            let delta = complex_of(obj)?;
            let m = incidence_matrix(&delta, i);
            let mult = multiplication_matrix(&MonomialAlgebra::squarefree_reduction(&delta)?, i);
            agree(
                &mut checks,
                "multiplication_matrix",
                &m.entries,
                &mult.entries,
            )?;
            (m, "incidence")
        }
        MatrixKind::Multiplication => (
            multiplication_matrix(&algebra_of(obj)?, i),
            "multiplication",
        ),
        MatrixKind::Slp1 => {
            if i == 0 {
                return Err(Error::Hypothesis("powers L^d start at d = 1".into()).into());
            }
            (slp1_matrix(&complex_of(obj)?, i), "slp1")
        }
    };
    let rank = m.entries.rank_q();
    let mut text = format!(
        "{name} matrix, degree {i}: {} x {}, rank {rank}\n",
        m.entries.rows(),
        m.entries.cols()
    );
    text.push_str(&m.to_text());
    let mut out = Outcome::new(
        json!({
            "kind": name,
            "degree": i,
            "shape": [m.entries.rows(), m.entries.cols()],
            "rank_q": rank,
            "row_sum": m.stochastic_degree().as_ref().map(big),
            "matrix": to_json(&m),
        }),
        text,
    );
    out.crosschecks = checks;
    Ok(out)
}

fn incidence(obj: &InputObject, i: usize) -> Res<Outcome> {
    let delta = complex_of(obj)?;
    let ideal = incidence_ideal(&delta, i)?;
    let gens = ideal.generator_strings();
    let mut out = Outcome::new(
        json!({
            "degree": ideal.degree,
            "variables": ideal.variables,
            "generators": gens,
        }),
        format!(
            "I_Δ({i}) in {} variables, generated in degree {}:\n{}\n",
            ideal.nvars(),
            ideal.degree,
            gens.join("\n")
        ),
    );
    agree(
        &mut out.crosschecks,
        "log_matrix_is_incidence",
        &ideal.log_matrix()?.entries,
        &incidence_matrix(&delta, i).entries,
    )?;
    Ok(out)
}

fn spread(obj: &InputObject, degree: Option<usize>, skeleton: Option<usize>) -> Res<Outcome> {
    let mut checks = Map::new();
    let (ideal, source) = match skeleton {
        Some(d) => (
            facet_ideal_skeleton(&complex_of(obj)?, d)?,
            format!("facet ideal of the {d}-skeleton"),
        ),
        None => target_ideal(obj, degree)?,
    };
    let l = analytic_spread(&ideal)?;
    if let (Some(i), None) = (degree, skeleton) {
        let rank = incidence_matrix(&complex_of(obj)?, i).entries.rank_q();
        agree(&mut checks, "incidence_rank", l, rank)?;
    }
    let mut out = Outcome::new(
        json!({
            "ideal": source,
            "generators": ideal.generators.len(),
            "variables": ideal.nvars(),
            "analytic_spread": l,
        }),
        format!("analytic spread of {source}: {l}\n"),
    );
    out.crosschecks = checks;
    Ok(out)
}

enum CharChoice {
    One(Characteristic),
    All,
}

fn parse_char(s: &str) -> Res<CharChoice> {
    if s == "all" {
        return Ok(CharChoice::All);
    }
    let c: u64 = s
        .parse()
        .map_err(|_| CliError::input(format!("--char expects 0, a prime or `all`, got `{s}`")))?;
    Ok(CharChoice::One(Characteristic::new(c)?))
}

fn wlp(obj: &InputObject, degree: Option<usize>, ch: &str, mixed: bool) -> Res<Outcome> {
    let choice = parse_char(ch)?;
    let algebra = algebra_of(obj)?;
    let report = wlp_report(
        &algebra,
        &WlpOptions {
            mixed_multiplicity: mixed,
        },
    )?;
    let degrees: Vec<_> = match degree {
        Some(i) => report.degrees.iter().filter(|d| d.degree == i).collect(),
        None => report.degrees.iter().collect(),
    };
    let mut checks = Map::new();
    let mut rows = Vec::new();
    let mut text = format!("Hilbert function: {:?}\n", report.hilbert_function);
    if let Some(level) = report.level {
        let _ = writeln!(text, "level: {level}");
    }
    let mut verdict = true;
    for d in &degrees {
        let mut row = to_json(d);
        for (name, v) in &d.crosschecks {
            checks.insert(format!("degree {}: {name}", d.degree), Value::Bool(*v));
        }
        for (name, why) in &d.skipped {
            checks.insert(
                format!("degree {}: {name}", d.degree),
                Value::String(format!("skipped: {why}")),
            );
        }
        match choice {
            CharChoice::One(c) => {
                let full = d.full_rank_in(c);
                if let Characteristic::Prime(_) = c {
                    let direct = wlp_degree(&algebra, d.degree, c)?;
                    agree(
                        &mut checks,
                        &format!("degree {}: rank mod {c}", d.degree),
                        full,
                        direct,
                    )?;
                }
                verdict &= full;
                row["full_rank"] = Value::Bool(full);
                let _ = writeln!(
                    text,
                    "degree {}: {:?} rank {} -> {}",
                    d.degree,
                    d.dims,
                    d.rank_q,
                    if full { "full rank" } else { "not full rank" }
                );
            }
            CharChoice::All => {
                let _ = writeln!(
                    text,
                    "degree {}: {:?} rank {} fails in characteristic {}",
                    d.degree, d.dims, d.rank_q, d.failure
                );
            }
        }
        rows.push(row);
    }
    let mut results = json!({
        "hilbert_function": report.hilbert_function,
        "level": report.level,
        "degrees": rows,
    });
    match choice {
        CharChoice::One(c) => {
            results["characteristic"] = json!(c);
            results["wlp"] = Value::Bool(verdict);
            let _ = writeln!(
                text,
                "{} in characteristic {c}: {}",
                if degree.is_some() {
                    "WLP in this degree"
                } else {
                    "WLP"
                },
                verdict
            );
        }
        CharChoice::All => {
            results["characteristic"] = json!("all");
            let bad: BTreeSet<String> = degrees
                .iter()
                .flat_map(|d| match &d.failure {
                    FailureSet::Primes(ps) => ps.iter().map(ToString::to_string).collect(),
                    FailureSet::AllCharacteristics => vec!["all".to_string()],
                    FailureSet::None => vec![],
                })
                .collect();
            results["failing_characteristics"] = json!(bad);
        }
    }
    let mut out = Outcome::new(results, text);
    out.crosschecks = checks;
    Ok(out)
}

fn slp1(obj: &InputObject) -> Res<Outcome> {
    let delta = complex_of(obj)?;
    let report = slp_degree1(&delta)?;
    let mut text = format!("f_0 = {}\n", report.f0);
    let mut out_checks = Map::new();
    for r in &report.records {
        let _ = writeln!(
            text,
            "d = {}: f_d = {}, rank {} -> {}",
            r.d,
            r.f_d,
            r.rank,
            if r.full_rank {
                "full rank"
            } else {
                "not full rank"
            }
        );
        out_checks.insert(format!("d = {}: analytic_spread", r.d), Value::Bool(true));
    }
    let _ = writeln!(
        text,
        "SLP in degree 1 (characteristic 0): {}",
        report.slp_degree1
    );
    let mut out = Outcome::new(to_json(&report), text);
    out.crosschecks = out_checks;
    Ok(out)
}

fn char_analysis(obj: &InputObject, i: usize, oracle: bool) -> Res<Outcome> {
    let mut checks = Map::new();
    let mut results = json!({ "degree": i });
    let failure = match obj {
        InputObject::Complex(delta) => {
            let failure = failure_char_set(delta, i, oracle)?;
            if oracle {
                checks.insert("subset_gcd".into(), Value::Bool(true));
            }
            let bound = wlp_fullrank_bound_report(delta, i);
            match bound {
                Ok(b) => {
                    agree(&mut checks, "bound_report_failure", &b.failure, &failure)?;
                    results["bound"] = to_json(&b.bound);
                    results["guarantee_holds"] = Value::Bool(b.guarantee_holds);
                }
                Err(e @ Error::Hypothesis(_)) => {
                    checks.insert("bound".into(), Value::String(format!("skipped: {e}")));
                }
                Err(e) => return Err(e.into()),
            }
            failure
        }
        InputObject::Ideal(_) => {
            let m = multiplication_matrix(&algebra_of(obj)?, i).entries;
            let failure = if m.rows().min(m.cols()) == 0 {
                FailureSet::None
            } else {
                m.full_rank_failure_primes()
            };
            if oracle && m.rows().min(m.cols()) > 0 {
                let g = m
                    .maximal_minors()?
                    .iter()
                    .fold(BigInt::zero(), |g, x| num_integer::Integer::gcd(&g, x));
                let by_minors = if g.is_zero() {
                    FailureSet::AllCharacteristics
                } else {
                    FailureSet::from_primes(prime_factors(g.magnitude()))
                };
                agree(&mut checks, "maximal_minor_gcd", &failure, &by_minors)?;
            }
            failure
        }
    };
    results["failure"] = to_json(&failure);
    let mut text = format!("degree {i}: fails in characteristic {failure}\n");
    if let Some(b) = results.get("bound") {
        let _ = writeln!(text, "characteristic bound: {}", b["bound"]);
    }
    let mut out = Outcome::new(results, text);
    out.crosschecks = checks;
    Ok(out)
}

fn birational(obj: &InputObject, degree: Option<usize>) -> Res<Outcome> {
    let (system, source) = match (obj, degree_of_ideal(obj, degree)) {
        (InputObject::Ideal(input), None) => (input.system.clone(), "input generators".to_string()),
        (InputObject::Ideal(_), Some(i)) => (
            matrix_rows_as_system(&multiplication_matrix(&algebra_of(obj)?, i).entries)?,
            format!("rows of the multiplication matrix in degree {i}"),
        ),
        (InputObject::Complex(delta), Some(i)) => (
            matrix_rows_as_system(&incidence_matrix(delta, i).entries)?,
            format!("rows of the incidence matrix in degree {i}"),
        ),
        (InputObject::Complex(_), None) => {
            return Err(Error::Hypothesis(
                "a complex needs --degree to give a square system".into(),
            )
            .into())
        }
    };
    let b = is_birational(&system)?;
    let mut out = Outcome::new(
        json!({
            "system": source,
            "size": system.len(),
            "determinant": big(&b.determinant),
            "degree": b.degree,
            "birational": b.birational,
        }),
        format!(
            "{source}: {} monomials of degree {}\ndeterminant: {}\nbirational: {}\n",
            system.len(),
            b.degree,
            b.determinant,
            b.birational
        ),
    );
    let e = simplex_mixed_mult(&system)?;
    agree(
        &mut out.crosschecks,
        "degree_times_mixed_multiplicity",
        b.determinant.magnitude().clone(),
        e * b.degree,
    )?;
    Ok(out)
}

fn graph_json(g: &LoopGraph) -> Value {
    let edges: Vec<String> = g.edges().iter().map(|&e| g.edge_label(e)).collect();
    json!({
        "vertices": g.labels(),
        "edges": edges,
        "components": to_json(&g.classify_components()),
    })
}

fn graph_criteria(obj: &InputObject) -> Res<Outcome> {
    let algebra = algebra_of(obj)?;
    let rank_full = wlp_degree(&algebra, 1, Characteristic::Zero)?;
    let mut checks = Map::new();
    let mut results = json!({ "wlp1_by_rank": rank_full });
    let mut text = String::new();

    let graph = algebra.underlying_graph();
    results["underlying_graph"] = graph_json(&graph);
    let _ = writeln!(
        text,
        "underlying graph: {} vertices, {} edges ({} loops), components: {}",
        graph.vertex_count(),
        graph.edges().len(),
        graph.loop_count(),
        graph.components().len()
    );
    let mut verdict =
        |name: &str, r: lefschetz::Result<bool>, checks: &mut Map<String, Value>| -> Res<()> {
            match r {
                Ok(v) => {
                    agree(checks, name, v, rank_full)?;
                    results[name] = Value::Bool(v);
                    let _ = writeln!(text, "{name}: {v}");
                }
                Err(e @ Error::Hypothesis(_)) => {
                    checks.insert(name.to_string(), Value::String(format!("skipped: {e}")));
                    let _ = writeln!(text, "{name}: not applicable ({e})");
                }
                Err(e) => return Err(e.into()),
            }
            Ok(())
        };
    verdict(
        "monomial_wlp1",
        lefschetz::graph::monomial_wlp1(&algebra),
        &mut checks,
    )?;
    if let Some(delta) = algebra.squarefree_complex() {
        verdict(
            "daonair_wlp1",
            lefschetz::graph::daonair_wlp1(&delta),
            &mut checks,
        )?;
        let skeleton = LoopGraph::one_skeleton(&delta);
        match skeleton.disconnected_shortcut() {
            Ok(forced) => {
                if forced && rank_full {
                    return Err(Error::CrossCheck(
                        "a component with fewer edges than vertices, yet full rank".into(),
                    )
                    .into());
                }
                checks.insert("disconnected_shortcut".into(), Value::Bool(true));
                results["forced_failure"] = Value::Bool(forced);
            }
            Err(e @ Error::Hypothesis(_)) => {
                checks.insert(
                    "disconnected_shortcut".into(),
                    Value::String(format!("skipped: {e}")),
                );
            }
            Err(e) => return Err(e.into()),
        }
        results["one_skeleton"] = graph_json(&skeleton);
    }
    let _ = writeln!(
        text,
        "WLP in degree 1 (characteristic 0, by rank): {rank_full}"
    );
    let mut out = Outcome::new(results, text);
    out.crosschecks = checks;
    Ok(out)
}

fn mixed_mult(obj: &InputObject, degree: Option<usize>) -> Res<Outcome> {
    let (ideal, source) = target_ideal(obj, degree)?;
    let n = ideal.nvars();
    let l = analytic_spread(&ideal)?;
    let e = last_mixed_mult(&ideal)?;
    let mut positive = Vec::new();
    let mut text = format!(
        "{source}: n = {n}, analytic spread {l}\ne_(0,{}) = {e}\n",
        n - 1
    );
    for b in 0..n {
        let p = mixed_mult_positive(n - 1 - b, b, &ideal)?;
        positive.push(json!({ "a": n - 1 - b, "b": b, "positive": p }));
        let _ = writeln!(text, "e_({},{b}) > 0: {p}", n - 1 - b);
    }
    let mut out = Outcome::new(
        json!({
            "ideal": source,
            "variables": n,
            "analytic_spread": l,
            "last_mixed_mult": e.to_string().parse::<u64>().map(Value::from).unwrap_or_else(|_| json!(e.to_string())),
            "positivity": positive,
        }),
        text,
    );
    agree(
        &mut out.crosschecks,
        "last_positive_iff_full_spread",
        !e.is_zero(),
        l == n,
    )?;
    Ok(out)
}
