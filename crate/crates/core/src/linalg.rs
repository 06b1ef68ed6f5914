//! Exact integer linear algebra over arbitrary-precision integers.
//!
//! Ranks and determinants use fraction-free (Bareiss) elimination, so every
//! intermediate value stays an integer and every division is exact. The Smith
//! normal form tracks invariant factors only; the unimodular transforms are
//! never needed downstream.

use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::primes;
use crate::{Error, Result};

/// Default cap on the number of row selections [`IntegerMatrix::maximal_minors`]
/// will enumerate.
pub const MINOR_ENUMERATION_BOUND: u128 = 2_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

/// Invariant factors `s_1 | s_2 | ... | s_r` of an integer matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SmithForm {
    pub rank: usize,
    #[serde(serialize_with = "crate::primes::serialize_bigints")]
    pub invariant_factors: Vec<BigInt>,
}

impl SmithForm {
    /// `g_k = s_1 ... s_k`, the gcd of all `k x k` minors.
    pub fn determinantal_divisors(&self) -> Vec<BigInt> {
        let mut acc = BigInt::one();
        self.invariant_factors
            .iter()
            .map(|s| {
                acc *= s;
                acc.clone()
            })
            .collect()
    }

    /// Rank over the field with `p` elements: factors not divisible by `p`.
    pub fn rank_mod(&self, p: u64) -> usize {
        let p = BigInt::from(p);
        self.invariant_factors
            .iter()
            .filter(|s| !(*s % &p).is_zero())
            .count()
    }
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        IntegerMatrix {
            rows: rows.len(),
            cols,
            data: rows
                .iter()
                .flat_map(|r| r.iter().cloned().map(Into::into))
                .collect(),
        }
    }

    /// An empty matrix still records its column count.
    pub fn from_flat(rows: usize, cols: usize, data: Vec<BigInt>) -> Self {
        assert_eq!(rows * cols, data.len());
        IntegerMatrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows_i64(&self) -> Vec<Vec<i64>> {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|v| v.to_i64().expect("entry fits in i64"))
                    .collect()
            })
            .collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn select_rows(&self, rows: &[usize]) -> Self {
        let data = rows
            .iter()
            .flat_map(|&i| self.row(i).iter().cloned())
            .collect();
        Self::from_flat(rows.len(), self.cols, data)
    }

    pub fn select_cols(&self, cols: &[usize]) -> Self {
        let mut data = Vec::with_capacity(self.rows * cols.len());
        for i in 0..self.rows {
            data.extend(cols.iter().map(|&j| self.get(i, j).clone()));
        }
        Self::from_flat(self.rows, cols.len(), data)
    }

    /// Row sums if they are all equal (the matrix is `d`-stochastic).
    pub fn constant_row_sum(&self) -> Option<BigInt> {
        let mut sums = (0..self.rows).map(|i| self.row(i).iter().sum::<BigInt>());
        let first = sums.next()?;
        sums.all(|s| s == first).then_some(first)
    }

    pub fn rank_q(&self) -> usize {
        let mut work = self.data.clone();
        bareiss(&mut work, self.rows, self.cols).rank
    }

    pub fn determinant(&self) -> Result<BigInt> {
        if self.rows != self.cols {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        if self.rows == 0 {
            return Ok(BigInt::one());
        }
        let mut work = self.data.clone();
        let out = bareiss(&mut work, self.rows, self.cols);
        if out.rank < self.rows {
            return Ok(BigInt::zero());
        }
        let det = work[self.rows * self.cols - 1].clone();
        Ok(if out.swaps % 2 == 1 { -det } else { det })
    }

    /// Rank of the matrix reduced modulo the prime `p`.
    pub fn rank_mod_p(&self, p: u64) -> Result<usize> {
        if !primes::is_prime_u64(p) {
            return Err(Error::NotPrime(p));
        }
        let pb = BigInt::from(p);
        let mut a: Vec<u64> = self
            .data
            .iter()
            .map(|v| v.mod_floor(&pb).to_u64().unwrap())
            .collect();
        let (rows, cols) = (self.rows, self.cols);
        let mulmod = |x: u64, y: u64| ((x as u128 * y as u128) % p as u128) as u64;
        let mut rank = 0;
        for col in 0..cols {
            if rank == rows {
                break;
            }
            let Some(piv) = (rank..rows).find(|&r| a[r * cols + col] != 0) else {
                continue;
            };
            if piv != rank {
                for j in 0..cols {
                    a.swap(piv * cols + j, rank * cols + j);
                }
            }
            let inv = primes::inverse_mod(a[rank * cols + col], p);
            for r in rank + 1..rows {
                let f = a[r * cols + col];
                if f == 0 {
                    continue;
                }
                let f = mulmod(f, inv);
                for j in col..cols {
                    let sub = mulmod(f, a[rank * cols + j]);
                    a[r * cols + j] = (a[r * cols + j] + p - sub) % p;
                }
            }
            rank += 1;
        }
        Ok(rank)
    }

    /// Invariant factors by elimination modulo `D`, the absolute value of a
    /// nonzero `r x r` minor. Every `s_k` divides `D`, and the unimodular
    /// transforms used here are invertible modulo `D`, so the factors are
    /// `gcd(a_kk, D)` after diagonalizing over `Z/DZ`. Entries never exceed
    /// `D`, which keeps dense inputs from blowing up.
    pub fn smith_normal_form(&self) -> SmithForm {
        let mut work = self.data.clone();
        let out = bareiss(&mut work, self.rows, self.cols);
        let r = out.rank;
        if r == 0 {
            return SmithForm {
                rank: 0,
                invariant_factors: Vec::new(),
            };
        }
        let d = out.last_pivot.abs();
        let mut a = self.clone();
        for v in a.data.iter_mut() {
            *v = v.mod_floor(&d);
        }
        let mut factors = Vec::with_capacity(r);
        for t in 0..r {
            let Some((pi, pj)) = a.min_abs_entry(t) else {
                break;
            };
            a.swap_rows(t, pi);
            a.swap_cols(t, pj);
            loop {
                let mut changed = false;
                for i in t + 1..a.rows {
                    changed |= a.bezout_rows(t, i, &d);
                }
                for j in t + 1..a.cols {
                    changed |= a.bezout_cols(t, j, &d);
                }
                if changed {
                    continue;
                }
                let g = a.get(t, t).gcd(&d);
                let offender = (t + 1..a.rows)
                    .find(|&i| (t + 1..a.cols).any(|j| !(a.get(i, j) % &g).is_zero()));
                match offender {
                    Some(i) => {
                        a.add_row_multiple(t, i, &BigInt::one());
                        a.reduce_row(t, &d);
                    }
                    None => break,
                }
            }
            factors.push(a.get(t, t).gcd(&d));
        }
        // a trailing block that vanishes mod D still has rank r over Z
        factors.resize(r, d);
        SmithForm {
            rank: r,
            invariant_factors: factors,
        }
    }

    pub fn determinantal_divisors(&self) -> Vec<BigInt> {
        self.smith_normal_form().determinantal_divisors()
    }

    /// Every maximal minor, in lexicographic order of the selected rows
    /// (columns when the matrix is wide).
    pub fn maximal_minors(&self) -> Result<Vec<BigInt>> {
        self.maximal_minors_bounded(MINOR_ENUMERATION_BOUND)
    }

    pub fn maximal_minors_bounded(&self, bound: u128) -> Result<Vec<BigInt>> {
        if self.rows < self.cols {
            return self.transpose().maximal_minors_bounded(bound);
        }
        let count = binomial(self.rows as u128, self.cols as u128);
        if count > bound {
            return Err(Error::TooManyMinors { count, bound });
        }
        let all: Vec<usize> = (0..self.rows).collect();
        crate::complex::subsets_of_size(&all, self.cols)
            .into_iter()
            .map(|sel| self.select_rows(&sel).determinant())
            .collect()
    }

    /// Primes `p` for which the matrix loses full rank modulo `p`.
    pub fn full_rank_failure_primes(&self) -> crate::FailureSet {
        let target = self.rows.min(self.cols);
        let snf = self.smith_normal_form();
        if snf.rank < target {
            return crate::FailureSet::AllCharacteristics;
        }
        let g: BigInt = snf.invariant_factors.iter().product();
        let g = g.magnitude().clone();
        crate::FailureSet::from_primes(primes::prime_factors(&g))
    }

    fn min_abs_entry(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, &BigInt)> = None;
        for i in t..self.rows {
            for j in t..self.cols {
                let v = self.get(i, j);
                if v.is_zero() {
                    continue;
                }
                if best.is_none_or(|(_, _, b)| v.magnitude() < b.magnitude()) {
                    best = Some((i, j, v));
                }
            }
        }
        best.map(|(i, j, _)| (i, j))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    fn reduce_row(&mut self, i: usize, d: &BigInt) {
        for j in 0..self.cols {
            let v = self.get(i, j).mod_floor(d);
            self.set(i, j, v);
        }
    }

    /// Clears `a[i][t]` against the pivot `a[t][t]` with a determinant-one
    /// transform of rows `t` and `i`; returns whether the pivot changed.
    fn bezout_rows(&mut self, t: usize, i: usize, d: &BigInt) -> bool {
        let b = self.get(i, t).clone();
        if b.is_zero() {
            return false;
        }
        let a = self.get(t, t).clone();
        if !a.is_zero() && (&b % &a).is_zero() {
            let q = &b / &a;
            self.add_row_multiple(i, t, &-q);
            self.reduce_row(i, d);
            return false;
        }
        let e = a.extended_gcd(&b);
        let (x, y, g) = (e.x, e.y, e.gcd);
        let (ag, bg) = (&a / &g, &b / &g);
        for j in 0..self.cols {
            let (u, v) = (self.get(t, j).clone(), self.get(i, j).clone());
            self.set(t, j, (&x * &u + &y * &v).mod_floor(d));
            self.set(i, j, (&ag * &v - &bg * &u).mod_floor(d));
        }
        true
    }

    fn bezout_cols(&mut self, t: usize, j: usize, d: &BigInt) -> bool {
        let b = self.get(t, j).clone();
        if b.is_zero() {
            return false;
        }
        let a = self.get(t, t).clone();
        if !a.is_zero() && (&b % &a).is_zero() {
            let q = &b / &a;
            self.add_col_multiple(j, t, &-q);
            for i in 0..self.rows {
                let v = self.get(i, j).mod_floor(d);
                self.set(i, j, v);
            }
            return false;
        }
        let e = a.extended_gcd(&b);
        let (x, y, g) = (e.x, e.y, e.gcd);
        let (ag, bg) = (&a / &g, &b / &g);
        for i in 0..self.rows {
            let (u, v) = (self.get(i, t).clone(), self.get(i, j).clone());
            self.set(i, t, (&x * &u + &y * &v).mod_floor(d));
            self.set(i, j, (&ag * &v - &bg * &u).mod_floor(d));
        }
        true
    }

    /// row[dst] += k * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        for j in 0..self.cols {
            let v = self.get(src, j) * k;
            self.data[dst * self.cols + j] += v;
        }
    }

    /// col[dst] += k * col[src]
    fn add_col_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        for i in 0..self.rows {
            let v = self.get(i, src) * k;
            self.data[i * self.cols + dst] += v;
        }
    }
}

struct BareissOutcome {
    rank: usize,
    swaps: usize,
    /// Last pivot: a nonzero `rank x rank` minor (1 when the rank is 0).
    last_pivot: BigInt,
}

/// In-place fraction-free elimination to row echelon form. Columns without a
/// pivot are skipped. For a full-rank square matrix the last diagonal entry
/// is the determinant up to the sign of the row swaps.
fn bareiss(a: &mut [BigInt], rows: usize, cols: usize) -> BareissOutcome {
    let mut prev = BigInt::one();
    let mut rank = 0;
    let mut swaps = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(piv) = (rank..rows).find(|&r| !a[r * cols + col].is_zero()) else {
            continue;
        };
        if piv != rank {
            for j in 0..cols {
                a.swap(piv * cols + j, rank * cols + j);
            }
            swaps += 1;
        }
        let p = a[rank * cols + col].clone();
        for r in rank + 1..rows {
            let f = a[r * cols + col].clone();
            for j in col + 1..cols {
                let v = &p * &a[r * cols + j] - &f * &a[rank * cols + j];
                a[r * cols + j] = v / &prev;
            }
            a[r * cols + col] = BigInt::zero();
        }
        // rows above the pivot row keep their values; rows below were scaled
        prev = p;
        rank += 1;
    }
    BareissOutcome {
        rank,
        swaps,
        last_pivot: prev,
    }
}

pub(crate) fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    acc
}

/// Nonnegative magnitude as an unsigned integer.
pub fn magnitude(v: &BigInt) -> BigUint {
    v.magnitude().clone()
}

pub fn is_negative(v: &BigInt) -> bool {
    v.sign() == Sign::Minus
}

impl fmt::Display for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}
