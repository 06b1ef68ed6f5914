//! Per-degree Lefschetz verdicts with cross-validation between routes.
//!
//! The primary route is always the rank of the multiplication map by
//! `L = x_1 + ... + x_n`, which is a general enough form for monomial
//! ideals. Where a theorem's hypotheses hold, the graph, analytic-spread and
//! mixed-multiplicity criteria are evaluated independently and must agree;
//! a disagreement is reported as [`Error::CrossCheck`].

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::Zero;
use serde::Serialize;

use crate::complex::SimplicialComplex;
use crate::graph::{daonair_wlp1, monomial_wlp1};
use crate::incidence::{facet_ideal_skeleton, incidence_ideal, multiplication_matrix, slp1_matrix};
use crate::monomial::MonomialAlgebra;
use crate::multiplicity::{
    analytic_spread, last_mixed_mult, mixed_mult_positive, wlp_char_bound, CharBound, FailureSet,
};
use crate::primes::is_prime_u64;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Characteristic {
    Zero,
    Prime(u64),
}

impl Characteristic {
    pub fn new(c: u64) -> Result<Self> {
        match c {
            0 => Ok(Characteristic::Zero),
            p if is_prime_u64(p) => Ok(Characteristic::Prime(p)),
            other => Err(Error::NotPrime(other)),
        }
    }
}

impl std::fmt::Display for Characteristic {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Characteristic::Zero => write!(f, "0"),
            Characteristic::Prime(p) => write!(f, "{p}"),
        }
    }
}

/// Which optional routes [`wlp_report`] evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct WlpOptions {
    /// Normalized-volume route; costly on wide matrices.
    pub mixed_multiplicity: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeRecord {
    pub degree: usize,
    /// `(dim A_i, dim A_{i+1})`.
    pub dims: (usize, usize),
    pub rank_q: usize,
    pub full_rank_char0: bool,
    pub failure: FailureSet,
    pub crosschecks: BTreeMap<String, bool>,
    /// Routes whose hypotheses held but which were not evaluated, with why.
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub skipped: BTreeMap<String, String>,
}

impl DegreeRecord {
    pub fn is_vacuous(&self) -> bool {
        self.dims.0.min(self.dims.1) == 0
    }

    pub fn full_rank_in(&self, ch: Characteristic) -> bool {
        match ch {
            Characteristic::Zero => self.full_rank_char0,
            Characteristic::Prime(p) => !self.failure.fails_at(p),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LefschetzReport {
    pub hilbert_function: Vec<usize>,
    pub degrees: Vec<DegreeRecord>,
    /// For `A(Δ)`: level exactly when `Δ` is pure.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub level: Option<bool>,
}

impl LefschetzReport {
    pub fn has_wlp_char0(&self) -> bool {
        self.degrees.iter().all(|d| d.full_rank_char0)
    }

    pub fn has_wlp_in(&self, ch: Characteristic) -> bool {
        self.degrees.iter().all(|d| d.full_rank_in(ch))
    }

    pub fn degree(&self, i: usize) -> Option<&DegreeRecord> {
        self.degrees.get(i)
    }
}

/// Full rank of `×L : A_i -> A_{i+1}` in the given characteristic. Degrees
/// where either side is zero are vacuously full rank.
pub fn wlp_degree(algebra: &MonomialAlgebra, i: usize, ch: Characteristic) -> Result<bool> {
    let m = multiplication_matrix(algebra, i).entries;
    let target = m.rows().min(m.cols());
    if target == 0 {
        return Ok(true);
    }
    let rank = match ch {
        Characteristic::Zero => m.rank_q(),
        Characteristic::Prime(p) => m.rank_mod_p(p)?,
    };
    Ok(rank == target)
}

/// Verdicts for every degree below the socle degree.
pub fn wlp_report(algebra: &MonomialAlgebra, options: &WlpOptions) -> Result<LefschetzReport> {
    let delta = algebra.squarefree_complex();
    let mut degrees = Vec::new();
    for i in 0..algebra.socle_degree() {
        let m = multiplication_matrix(algebra, i).entries;
        let dims = (m.cols(), m.rows());
        let target = dims.0.min(dims.1);
        let rank_q = m.rank_q();
        let full = rank_q == target;
        let failure = if target == 0 {
            FailureSet::None
        } else {
            m.full_rank_failure_primes()
        };
        if full == (failure == FailureSet::AllCharacteristics) {
            return Err(Error::CrossCheck(format!(
                "degree {i}: rank {rank_q} of {target} but failure set {failure}"
            )));
        }

        let mut checks = BTreeMap::new();
        let mut skipped = BTreeMap::new();
        if target > 0 && i >= 1 {
            if let Some(delta) = &delta {
                squarefree_routes(delta, i, options, &mut checks, &mut skipped)?;
            }
        }
        if target > 0 && i == 1 && dims.0 <= dims.1 {
            checks.insert("graph_underlying".to_string(), monomial_wlp1(algebra)?);
        }
        if let Some((name, _)) = checks.iter().find(|(_, &v)| v != full) {
            return Err(Error::CrossCheck(format!(
                "degree {i}: rank route says {full}, {name} says {}",
                !full
            )));
        }
        degrees.push(DegreeRecord {
            degree: i,
            dims,
            rank_q,
            full_rank_char0: full,
            failure,
            crosschecks: checks,
            skipped,
        });
    }
    Ok(LefschetzReport {
        hilbert_function: algebra.hilbert_function(),
        degrees,
        level: delta.as_ref().map(SimplicialComplex::is_pure),
    })
}

fn squarefree_routes(
    delta: &SimplicialComplex,
    i: usize,
    options: &WlpOptions,
    checks: &mut BTreeMap<String, bool>,
    skipped: &mut BTreeMap<String, String>,
) -> Result<()> {
    let f = delta.f_vector()?;
    let (lo, hi) = (f.get(i as isize - 1) as usize, f.get(i as isize) as usize);
    let ideal = incidence_ideal(delta, i)?;
    let spread = analytic_spread(&ideal)?;
    checks.insert("analytic_spread".to_string(), spread == lo.min(hi));
    if i == 1 {
        checks.insert("graph_skeleton".to_string(), daonair_wlp1(delta)?);
    }
    if options.mixed_multiplicity {
        if lo <= hi {
            match last_mixed_mult(&ideal) {
                Ok(e) => {
                    checks.insert("mixed_multiplicity".to_string(), !e.is_zero());
                }
                Err(Error::VolumeBounds(why)) => {
                    skipped.insert("mixed_multiplicity".to_string(), why);
                }
                Err(e) => return Err(e),
            }
        } else {
            checks.insert(
                "mixed_multiplicity".to_string(),
                mixed_mult_positive(lo - hi, hi - 1, &ideal)?,
            );
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Slp1Record {
    pub d: usize,
    pub f_d: u64,
    pub rank: usize,
    pub analytic_spread: usize,
    pub full_rank: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Slp1Report {
    pub f0: u64,
    pub records: Vec<Slp1Record>,
    pub slp_degree1: bool,
}

/// Strong Lefschetz property of `A(Δ)` in degree one, characteristic zero:
/// each `×L^d : A_1 -> A_{d+1}` has full rank. Rank and analytic spread of
/// the skeleton facet ideal are both computed and must agree.
pub fn slp_degree1(delta: &SimplicialComplex) -> Result<Slp1Report> {
    let f = delta.f_vector()?;
    let f0 = f.get(0);
    let mut records = Vec::new();
    for d in 1..=delta.dim().max(0) as usize {
        let fd = f.get(d as isize);
        if fd == 0 {
            continue;
        }
        let rank = slp1_matrix(delta, d).entries.rank_q();
        let spread = analytic_spread(&facet_ideal_skeleton(delta, d)?)?;
        if rank != spread {
            return Err(Error::CrossCheck(format!(
                "SLP degree {d}: rank {rank} but analytic spread {spread}"
            )));
        }
        records.push(Slp1Record {
            d,
            f_d: fd,
            rank,
            analytic_spread: spread,
            full_rank: rank as u64 == f0.min(fd),
        });
    }
    Ok(Slp1Report {
        f0,
        slp_degree1: records.iter().all(|r| r.full_rank),
        records,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub degree: usize,
    pub vacuous: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<CharBound>,
    pub failure: FailureSet,
    /// Every failing prime divides `i + 1` or is at most the bound.
    pub guarantee_holds: bool,
}

/// The mixed-multiplicity characteristic bound next to the exact failure set.
pub fn wlp_fullrank_bound_report(delta: &SimplicialComplex, i: usize) -> Result<BoundReport> {
    let f = delta.f_vector()?;
    if f.get(i as isize - 1).min(f.get(i as isize)) == 0 {
        return Ok(BoundReport {
            degree: i,
            vacuous: true,
            bound: None,
            failure: FailureSet::None,
            guarantee_holds: true,
        });
    }
    let bound = wlp_char_bound(delta, i)?;
    let failure = crate::incidence::incidence_matrix(delta, i)
        .entries
        .full_rank_failure_primes();
    let guarantee_holds = match &failure {
        FailureSet::None => true,
        FailureSet::AllCharacteristics => false,
        FailureSet::Primes(ps) => ps
            .iter()
            .all(|p| *p <= bound.bound || bound.excluded.contains(p) || p.is_zero()),
    };
    Ok(BoundReport {
        degree: i,
        vacuous: false,
        bound: Some(bound),
        failure,
        guarantee_holds,
    })
}

/// Primes dividing `i + 1`; kept for callers that report the exclusion set.
pub fn excluded_primes(i: usize) -> Vec<BigUint> {
    crate::primes::prime_factors(&BigUint::from(i as u64 + 1))
        .into_iter()
        .collect()
}
