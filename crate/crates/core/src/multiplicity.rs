//! Analytic spread, mixed multiplicities as normalized volumes, and the
//! characteristic analysis built on them.
//!
//! For an ideal `J` generated in one degree `d` by monomials in `n`
//! variables, the analytic spread is the rank of the exponent vectors and the
//! last mixed multiplicity `e_(0,n-1)(m | J)` is the normalized volume of the
//! exponent polytope projected along one coordinate. For a square system the
//! polytope is a simplex and the volume is `|det log(S)| / d`.

use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};

use crate::complex::{subsets_of_size, SimplicialComplex};
use crate::hull;
use crate::incidence::{incidence_ideal, incidence_matrix, log_matrix, EquigeneratedIdeal};
use crate::linalg::{binomial, IntegerMatrix, MINOR_ENUMERATION_BOUND};
use crate::monomial::Monomial;
use crate::primes::prime_factors;
use crate::{Error, Result};

/// The characteristics in which a map fails to have full rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FailureSet {
    None,
    Primes(BTreeSet<BigUint>),
    AllCharacteristics,
}

impl FailureSet {
    /// An empty set of primes normalizes to [`FailureSet::None`].
    pub fn from_primes(primes: BTreeSet<BigUint>) -> Self {
        if primes.is_empty() {
            FailureSet::None
        } else {
            FailureSet::Primes(primes)
        }
    }

    pub fn primes<I: IntoIterator<Item = u64>>(primes: I) -> Self {
        Self::from_primes(primes.into_iter().map(BigUint::from).collect())
    }

    /// Whether full rank fails in characteristic `p`.
    pub fn fails_at(&self, p: u64) -> bool {
        match self {
            FailureSet::None => false,
            FailureSet::Primes(s) => s.contains(&BigUint::from(p)),
            FailureSet::AllCharacteristics => true,
        }
    }

    pub fn is_subset_of(&self, allowed: &[u64]) -> bool {
        match self {
            FailureSet::None => true,
            FailureSet::Primes(s) => s
                .iter()
                .all(|p| allowed.iter().any(|&a| *p == BigUint::from(a))),
            FailureSet::AllCharacteristics => false,
        }
    }
}

impl std::fmt::Display for FailureSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FailureSet::None => write!(f, "none"),
            FailureSet::AllCharacteristics => write!(f, "all characteristics"),
            FailureSet::Primes(s) => {
                let v: Vec<String> = s.iter().map(ToString::to_string).collect();
                write!(f, "{{{}}}", v.join(", "))
            }
        }
    }
}

impl Serialize for FailureSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            kind: &'a str,
            #[serde(skip_serializing_if = "Option::is_none")]
            primes: Option<Vec<serde_json_number::Num>>,
        }
        let repr = match self {
            FailureSet::None => Repr {
                kind: "none",
                primes: None,
            },
            FailureSet::AllCharacteristics => Repr {
                kind: "all_characteristics",
                primes: None,
            },
            FailureSet::Primes(p) => Repr {
                kind: "primes",
                primes: Some(p.iter().map(serde_json_number::Num::from).collect()),
            },
        };
        repr.serialize(s)
    }
}

mod serde_json_number {
    use num_bigint::BigUint;
    use num_traits::ToPrimitive;
    use serde::{Serialize, Serializer};

    /// Serializes as a JSON number when it fits in 64 bits, else a string.
    pub struct Num(BigUint);

    impl From<&BigUint> for Num {
        fn from(v: &BigUint) -> Self {
            Num(v.clone())
        }
    }

    impl Serialize for Num {
        fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
            match self.0.to_u64() {
                Some(x) => s.serialize_u64(x),
                None => s.serialize_str(&self.0.to_string()),
            }
        }
    }
}

/// Exponent vectors of one degree `d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExponentPolytope {
    pub ambient_dim: usize,
    pub points: Vec<Vec<i64>>,
    pub degree: i64,
}

impl ExponentPolytope {
    pub fn new(points: Vec<Vec<i64>>) -> Result<Self> {
        let first = points.first().ok_or(Error::EmptyMonomialList)?;
        let ambient_dim = first.len();
        let degree: i64 = first.iter().sum();
        if points.iter().any(|p| p.len() != ambient_dim) {
            return Err(Error::Malformed("points of mixed dimension".into()));
        }
        if points.iter().any(|p| p.iter().sum::<i64>() != degree) {
            return Err(Error::UnequalDegrees);
        }
        Ok(ExponentPolytope {
            ambient_dim,
            points,
            degree,
        })
    }

    pub fn of_ideal(ideal: &EquigeneratedIdeal) -> Result<Self> {
        Self::new(
            ideal
                .generators
                .iter()
                .map(|m| m.exponents().iter().map(|&e| e as i64).collect())
                .collect(),
        )
    }

    /// Normalized volume after dropping the first coordinate.
    pub fn normalized_volume(&self) -> Result<BigUint> {
        self.normalized_volume_dropping(0)
    }

    /// Normalized volume after dropping coordinate `k`. All points lie on
    /// the hyperplane of coordinate sum `d`, so every choice of `k` is a
    /// unimodular projection and gives the same value.
    pub fn normalized_volume_dropping(&self, k: usize) -> Result<BigUint> {
        if self.ambient_dim == 0 || self.ambient_dim > hull::MAX_DIM + 1 {
            return Err(Error::VolumeBounds(format!(
                "{} variables outside 1..={}",
                self.ambient_dim,
                hull::MAX_DIM + 1
            )));
        }
        let projected: Vec<Vec<i64>> = self
            .points
            .iter()
            .map(|p| {
                p.iter()
                    .enumerate()
                    .filter(|&(j, _)| j != k)
                    .map(|(_, &x)| x)
                    .collect()
            })
            .collect();
        hull::normalized_volume(&projected)
    }
}

/// `ℓ(J)`: rank of the exponent vectors of the generators.
pub fn analytic_spread(ideal: &EquigeneratedIdeal) -> Result<usize> {
    if ideal.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    Ok(ideal.log_matrix()?.entries.rank_q())
}

fn common_degree(system: &[Monomial]) -> Result<u32> {
    let d = system.first().ok_or(Error::EmptyMonomialList)?.degree();
    if system.iter().any(|m| m.degree() != d) {
        return Err(Error::UnequalDegrees);
    }
    Ok(d)
}

fn system_log(system: &[Monomial]) -> Result<(IntegerMatrix, u32)> {
    let d = common_degree(system)?;
    let n = system[0].nvars();
    if system.len() != n {
        return Err(Error::NotSquare {
            rows: system.len(),
            cols: n,
        });
    }
    let names: Vec<String> = (0..n).map(|k| k.to_string()).collect();
    Ok((log_matrix(system, &names)?.entries, d))
}

/// `|det log(S)| / d` for `n` monomials of degree `d` in `n` variables.
pub fn simplex_mixed_mult(system: &[Monomial]) -> Result<BigUint> {
    let (m, d) = system_log(system)?;
    let det = m.determinant()?;
    let (q, r) = det.abs().div_rem(&BigInt::from(d));
    debug_assert!(
        r.is_zero(),
        "determinant of a d-stochastic matrix is divisible by d"
    );
    Ok(q.to_biguint().unwrap())
}

/// Normalized volume of an exponent polytope.
pub fn polytope_normalized_volume(polytope: &ExponentPolytope) -> Result<BigUint> {
    polytope.normalized_volume()
}

/// `e_(0,n-1)(m | J)`.
pub fn last_mixed_mult(ideal: &EquigeneratedIdeal) -> Result<BigUint> {
    if ideal.is_zero() {
        return Ok(BigUint::zero());
    }
    ExponentPolytope::of_ideal(ideal)?.normalized_volume()
}

/// `e_(a,b)(m | J) > 0`, for `a + b = n - 1`, holds exactly when `b <= ℓ(J) - 1`.
pub fn mixed_mult_positive(a: usize, b: usize, ideal: &EquigeneratedIdeal) -> Result<bool> {
    let n = ideal.nvars();
    if a + b + 1 != n {
        return Err(Error::Hypothesis(format!(
            "mixed multiplicity indices must sum to n - 1 = {}, got {a} + {b}",
            n as isize - 1
        )));
    }
    Ok(b < analytic_spread(ideal)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Birationality {
    #[serde(serialize_with = "crate::primes::serialize_bigint")]
    pub determinant: BigInt,
    pub degree: u32,
    pub birational: bool,
}

/// A square monomial system of degree `d` defines a Cremona transformation
/// exactly when `det log(M) = ±d`.
pub fn is_birational(system: &[Monomial]) -> Result<Birationality> {
    let (m, d) = system_log(system)?;
    let determinant = m.determinant()?;
    Ok(Birationality {
        birational: determinant.abs() == BigInt::from(d),
        determinant,
        degree: d,
    })
}

fn require_widening(delta: &SimplicialComplex, i: usize) -> Result<(u64, u64)> {
    let f = delta.f_vector()?;
    let (lo, hi) = (f.get(i as isize - 1), f.get(i as isize));
    if lo > hi {
        return Err(Error::Hypothesis(format!(
            "f_{} = {lo} > f_{i} = {hi}; analyze the transposed map through the degree report",
            i as isize - 1
        )));
    }
    Ok((lo, hi))
}

/// Characteristics where `A(Δ)` fails the WLP in degree `i`, for
/// `f_{i-1} <= f_i`. With `oracle` set, also computes the prime divisors of
/// the gcd of `(i+1) · e(m | I_S)` over all square row selections `S` and
/// requires agreement.
pub fn failure_char_set(delta: &SimplicialComplex, i: usize, oracle: bool) -> Result<FailureSet> {
    if i == 0 {
        return Err(Error::Hypothesis(
            "characteristic analysis starts at degree 1".into(),
        ));
    }
    require_widening(delta, i)?;
    let m = incidence_matrix(delta, i).entries;
    let production = m.full_rank_failure_primes();
    if oracle {
        let by_subsets = failure_set_from_subset_gcd(delta, i)?;
        if by_subsets != production {
            return Err(Error::CrossCheck(format!(
                "failure set in degree {i}: elimination gives {production}, subset gcd gives {by_subsets}"
            )));
        }
    }
    Ok(production)
}

fn failure_set_from_subset_gcd(delta: &SimplicialComplex, i: usize) -> Result<FailureSet> {
    let ideal = incidence_ideal(delta, i)?;
    let n = ideal.nvars();
    let count = binomial(ideal.generators.len() as u128, n as u128);
    if count > MINOR_ENUMERATION_BOUND {
        return Err(Error::TooManyMinors {
            count,
            bound: MINOR_ENUMERATION_BOUND,
        });
    }
    let all: Vec<usize> = (0..ideal.generators.len()).collect();
    let weight = BigUint::from(i as u64 + 1);
    let mut g = BigUint::zero();
    for sel in subsets_of_size(&all, n) {
        let system: Vec<Monomial> = sel.iter().map(|&k| ideal.generators[k].clone()).collect();
        g = g.gcd(&(&weight * simplex_mixed_mult(&system)?));
    }
    Ok(if g.is_zero() {
        FailureSet::AllCharacteristics
    } else {
        FailureSet::from_primes(prime_factors(&g))
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CharBound {
    /// `e_(0, f_{i-1}-1)(m | I_Δ(i))`; every prime above it that does not
    /// divide `i + 1` gives the WLP in degree `i`.
    #[serde(serialize_with = "serialize_biguint")]
    pub bound: BigUint,
    #[serde(serialize_with = "serialize_biguints")]
    pub excluded: Vec<BigUint>,
}

fn serialize_biguint<S: Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    serde_json_number::Num::from(v).serialize(s)
}

fn serialize_biguints<S: Serializer>(v: &[BigUint], s: S) -> std::result::Result<S::Ok, S::Error> {
    let nums: Vec<serde_json_number::Num> = v.iter().map(serde_json_number::Num::from).collect();
    nums.serialize(s)
}

impl CharBound {
    /// Whether the bound guarantees the WLP in characteristic `p`.
    pub fn guarantees(&self, p: u64) -> bool {
        let p = BigUint::from(p);
        p > self.bound && !self.excluded.contains(&p)
    }
}

/// Characteristic bound for the WLP of `A(Δ)` in degree `i`.
pub fn wlp_char_bound(delta: &SimplicialComplex, i: usize) -> Result<CharBound> {
    if i == 0 {
        return Err(Error::Hypothesis(
            "characteristic bound starts at degree 1".into(),
        ));
    }
    let (lo, _) = require_widening(delta, i)?;
    let ideal = incidence_ideal(delta, i)?;
    let spread = analytic_spread(&ideal)?;
    if (spread as u64) < lo {
        return Err(Error::Hypothesis(format!(
            "no WLP in degree {i} over characteristic zero (ℓ = {spread} < f_{} = {lo})",
            i as isize - 1
        )));
    }
    Ok(CharBound {
        bound: last_mixed_mult(&ideal)?,
        excluded: prime_factors(&BigUint::from(i as u64 + 1))
            .into_iter()
            .collect(),
    })
}

/// `e(m | J) <= e(m | I)` for `J ⊆ I` generated in the same degree.
pub fn monotonicity_check(
    smaller: &EquigeneratedIdeal,
    larger: &EquigeneratedIdeal,
) -> Result<bool> {
    if smaller.degree != larger.degree || smaller.nvars() != larger.nvars() {
        return Err(Error::Hypothesis(
            "ideals must share degree and ring".into(),
        ));
    }
    if !smaller
        .generators
        .iter()
        .all(|g| larger.generators.contains(g))
    {
        return Err(Error::Hypothesis(
            "generators of J must be generators of I".into(),
        ));
    }
    Ok(last_mixed_mult(smaller)? <= last_mixed_mult(larger)?)
}
