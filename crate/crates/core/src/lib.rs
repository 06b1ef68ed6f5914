//! Exact decision procedures for the Weak and Strong Lefschetz properties of
//! Artinian monomial algebras.
//!
//! Every question is reduced to exact integer data: ranks and Smith normal
//! forms of incidence and multiplication matrices, lattice ranks of exponent
//! vectors, graph shapes of the degree-two part, and normalized volumes of
//! exponent polytopes. No floating point is used anywhere.
//!
//! ```
//! use lefschetz::{SimplicialComplex, MonomialAlgebra, decision::wlp_report, WlpOptions};
//!
//! let delta = SimplicialComplex::from_facets(&[&["a", "b", "c"], &["a", "c", "d"], &["b", "c", "d"]]).unwrap();
//! let algebra = MonomialAlgebra::squarefree_reduction(&delta).unwrap();
//! let report = wlp_report(&algebra, &WlpOptions::default()).unwrap();
//! assert!(report.has_wlp_char0());
//! ```

pub mod complex;
pub mod decision;
pub mod document;
mod error;
pub mod graph;
pub mod hull;
pub mod incidence;
pub mod linalg;
pub mod monomial;
pub mod multiplicity;
pub mod primes;

pub use complex::{FVector, Face, SimplicialComplex};
pub use decision::{Characteristic, LefschetzReport, WlpOptions};
pub use error::{Error, ErrorClass, Result};
pub use graph::{ComponentClass, LoopGraph};
pub use incidence::{EquigeneratedIdeal, LabeledMatrix};
pub use linalg::{IntegerMatrix, SmithForm};
pub use monomial::{Monomial, MonomialAlgebra, MonomialIdeal};
pub use multiplicity::{ExponentPolytope, FailureSet};

/// Version of this library, reported by front ends.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
