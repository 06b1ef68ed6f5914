//! The TOML input format shared by the command line and the browser demo.
//!
//! ```toml
//! kind = "complex"
//! vertices = ["a", "b", "c", "d", "e"]   # optional; declares isolated vertices
//! facets = [["a", "b", "c"], ["a", "c", "d"], ["b", "c", "d"]]
//! ```
//!
//! ```toml
//! kind = "ideal"
//! variables = ["x1", "x2", "x3", "x4"]
//! generators = ["x1*x3", "x1*x2*x4", "x1^3", "x2^2", "x3^5", "x4^2"]
//! degree = 1                              # optional default degree
//! ```

use serde::{Deserialize, Serialize};

use crate::complex::SimplicialComplex;
use crate::monomial::{parse_monomial, Monomial, MonomialIdeal};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum InputDocument {
    Complex {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        vertices: Option<Vec<String>>,
        facets: Vec<Vec<String>>,
    },
    Ideal {
        variables: Vec<String>,
        generators: Vec<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        degree: Option<usize>,
    },
}

/// An ideal as written: the minimalized ideal plus the generator list in
/// input order, which doubles as a monomial system for birationality checks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealInput {
    pub ideal: MonomialIdeal,
    pub system: Vec<Monomial>,
    pub degree: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InputObject {
    Complex(SimplicialComplex),
    Ideal(IdealInput),
}

impl InputDocument {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Malformed(e.message().to_string()))
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("document serializes")
    }

    pub fn build(&self) -> Result<InputObject> {
        match self {
            InputDocument::Complex { vertices, facets } => {
                let declared = vertices.clone().unwrap_or_default();
                Ok(InputObject::Complex(SimplicialComplex::new(
                    &declared, facets,
                )?))
            }
            InputDocument::Ideal {
                variables,
                generators,
                degree,
            } => {
                let system = generators
                    .iter()
                    .map(|g| parse_monomial(g, variables))
                    .collect::<Result<Vec<_>>>()?;
                let ideal = MonomialIdeal::new(variables.clone(), system.clone())?;
                Ok(InputObject::Ideal(IdealInput {
                    ideal,
                    system,
                    degree: *degree,
                }))
            }
        }
    }
}

impl InputObject {
    pub fn parse(text: &str) -> Result<Self> {
        InputDocument::parse(text)?.build()
    }

    pub fn to_document(&self) -> InputDocument {
        match self {
            InputObject::Complex(delta) => {
                let isolated = delta.isolated_vertices();
                InputDocument::Complex {
                    vertices: (!isolated.is_empty()).then(|| delta.vertices().to_vec()),
                    facets: delta
                        .facet_labels()
                        .into_iter()
                        .filter(|f| f.len() > 1 || !isolated.contains(&f[0]))
                        .collect(),
                }
            }
            InputObject::Ideal(input) => InputDocument::Ideal {
                variables: input.ideal.variables().to_vec(),
                generators: input
                    .system
                    .iter()
                    .map(|m| m.format(input.ideal.variables()))
                    .collect(),
                degree: input.degree,
            },
        }
    }
}
