//! Shared generators, brute-force oracles and property checks for the
//! integration tests. Every check takes plain data so the proptest suite and
//! the seeded acceptance runner exercise the same code.
#![allow(dead_code)]

use std::collections::BTreeSet;

use lefschetz::decision::{wlp_fullrank_bound_report, wlp_report};
use lefschetz::graph::{daonair_wlp1, monomial_wlp1};
use lefschetz::incidence::{
    incidence_ideal, incidence_matrix, loopgraph_incidence, multiplication_matrix,
};
use lefschetz::multiplicity::{
    analytic_spread, failure_char_set, is_birational, last_mixed_mult, mixed_mult_positive,
    monotonicity_check, simplex_mixed_mult,
};
use lefschetz::{
    EquigeneratedIdeal, Error, ExponentPolytope, FailureSet, IntegerMatrix, LoopGraph, Monomial,
    MonomialAlgebra, MonomialIdeal, SimplicialComplex, WlpOptions,
};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng;

pub const SEED: u64 = 0x1e75_c4e7;

/// `Ok(true)`: checked; `Ok(false)`: hypotheses not met, case skipped.
pub type Check = Result<bool, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

// ---------------------------------------------------------------- builders

pub fn letters(n: usize) -> Vec<String> {
    (0..n)
        .map(|k| ((b'a' + k as u8) as char).to_string())
        .collect()
}

pub fn vars(n: usize) -> Vec<String> {
    (1..=n).map(|k| format!("x{k}")).collect()
}

/// All `nv` vertices are declared, so isolated vertices occur naturally.
pub fn complex(nv: usize, facets: &[Vec<usize>]) -> SimplicialComplex {
    let labels = letters(nv);
    let facets: Vec<Vec<String>> = facets
        .iter()
        .map(|f| {
            f.iter()
                .map(|&v| labels[v % nv].clone())
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect()
        })
        .collect();
    SimplicialComplex::new(&labels, &facets).expect("generated complex is valid")
}

pub fn graph(n: usize, edges: &[(usize, usize)]) -> LoopGraph {
    LoopGraph::new(letters(n), edges.iter().map(|&(i, j)| (i % n, j % n)))
}

/// Degree-`d` monomial from a list of `d` variable indices.
pub fn monomial_from_indices(n: usize, idx: &[usize]) -> Monomial {
    let mut e = vec![0u32; n];
    for &i in idx {
        e[i % n] += 1;
    }
    Monomial::from_exponents(e)
}

/// Artinian ideal: `x_k^{powers[k]}` plus extra generators of degree >= 2.
pub fn artinian_ideal(powers: &[u32], extra: &[Vec<usize>]) -> MonomialIdeal {
    let n = powers.len();
    let mut gens: Vec<Monomial> = (0..n)
        .map(|k| {
            let mut e = vec![0u32; n];
            e[k] = powers[k].max(2);
            Monomial::from_exponents(e)
        })
        .collect();
    gens.extend(
        extra
            .iter()
            .filter(|m| m.len() >= 2)
            .map(|m| monomial_from_indices(n, m)),
    );
    MonomialIdeal::new(vars(n), gens).expect("generated ideal is valid")
}

// ---------------------------------------------------------------- random data

pub fn random_facets(
    rng: &mut impl Rng,
    nv: usize,
    max_facets: usize,
    max_size: usize,
) -> Vec<Vec<usize>> {
    let count = rng.gen_range(1..=max_facets);
    (0..count)
        .map(|_| {
            let size = rng.gen_range(1..=max_size);
            (0..size).map(|_| rng.gen_range(0..nv)).collect()
        })
        .collect()
}

pub fn random_edges(
    rng: &mut impl Rng,
    n: usize,
    max_edges: usize,
    loops: bool,
) -> Vec<(usize, usize)> {
    let count = if n < 2 && !loops {
        0
    } else {
        rng.gen_range(0..=max_edges)
    };
    let mut out = Vec::new();
    while out.len() < count {
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if i != j || loops {
            out.push((i, j));
        }
    }
    out
}

pub fn random_matrix(
    rng: &mut impl Rng,
    rows: usize,
    cols: usize,
    lo: i64,
    hi: i64,
) -> Vec<Vec<i64>> {
    (0..rows)
        .map(|_| (0..cols).map(|_| rng.gen_range(lo..=hi)).collect())
        .collect()
}

/// Rows of `d` variable indices each.
pub fn random_system(rng: &mut impl Rng, rows: usize, n: usize, d: usize) -> Vec<Vec<usize>> {
    (0..rows)
        .map(|_| (0..d).map(|_| rng.gen_range(0..n)).collect())
        .collect()
}

// ---------------------------------------------------------------- oracles

/// Rank by Gaussian elimination over the rationals, fractions kept reduced.
pub fn rank_oracle(m: &IntegerMatrix) -> usize {
    let mut a: Vec<Vec<(BigInt, BigInt)>> = (0..m.rows())
        .map(|i| {
            m.row(i)
                .iter()
                .map(|x| (x.clone(), BigInt::one()))
                .collect()
        })
        .collect();
    let mut rank = 0;
    for c in 0..m.cols() {
        let Some(p) = (rank..a.len()).find(|&r| !a[r][c].0.is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        for r in rank + 1..a.len() {
            if a[r][c].0.is_zero() {
                continue;
            }
            // factor = a[r][c] / a[rank][c]
            let factor = frac_div(&a[r][c], &a[rank][c]);
            let pivot = a[rank].clone();
            for (x, y) in a[r][c..].iter_mut().zip(&pivot[c..]) {
                *x = frac_sub(x, &frac_mul(&factor, y));
            }
        }
        rank += 1;
    }
    rank
}

fn reduce(n: BigInt, d: BigInt) -> (BigInt, BigInt) {
    let g = n.gcd(&d);
    let (mut n, mut d) = (n / &g, d / &g);
    if d.is_negative() {
        n = -n;
        d = -d;
    }
    (n, d)
}

fn frac_mul(a: &(BigInt, BigInt), b: &(BigInt, BigInt)) -> (BigInt, BigInt) {
    if a.0.is_zero() || b.0.is_zero() {
        return (BigInt::zero(), BigInt::one());
    }
    reduce(&a.0 * &b.0, &a.1 * &b.1)
}

fn frac_div(a: &(BigInt, BigInt), b: &(BigInt, BigInt)) -> (BigInt, BigInt) {
    reduce(&a.0 * &b.1, &a.1 * &b.0)
}

fn frac_sub(a: &(BigInt, BigInt), b: &(BigInt, BigInt)) -> (BigInt, BigInt) {
    let n = &a.0 * &b.1 - &b.0 * &a.1;
    if n.is_zero() {
        return (BigInt::zero(), BigInt::one());
    }
    reduce(n, &a.1 * &b.1)
}

/// Laplace expansion along the first row.
pub fn det_cofactor(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut total = BigInt::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<BigInt>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(k, _)| k != j)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        let term = &m[0][j] * det_cofactor(&minor);
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

pub fn to_big(m: &IntegerMatrix) -> Vec<Vec<BigInt>> {
    (0..m.rows()).map(|i| m.row(i).to_vec()).collect()
}

pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// All `k x k` minors by cofactor expansion.
pub fn minors_oracle(m: &IntegerMatrix, k: usize) -> Vec<BigInt> {
    let a = to_big(m);
    let mut out = Vec::new();
    for rows in combinations(m.rows(), k) {
        for cols in combinations(m.cols(), k) {
            let sub: Vec<Vec<BigInt>> = rows
                .iter()
                .map(|&r| cols.iter().map(|&c| a[r][c].clone()).collect())
                .collect();
            out.push(det_cofactor(&sub));
        }
    }
    out
}

pub fn gcd_all(values: &[BigInt]) -> BigInt {
    values.iter().fold(BigInt::zero(), |g, v| g.gcd(v))
}

/// Determinantal divisors `g_1, ..., g_r` by exhaustive minors.
pub fn divisors_oracle(m: &IntegerMatrix) -> Vec<BigInt> {
    let mut out = Vec::new();
    for k in 1..=m.rows().min(m.cols()) {
        let g = gcd_all(&minors_oracle(m, k));
        if g.is_zero() {
            break;
        }
        out.push(g);
    }
    out
}

/// Normalized volume by Ehrhart counting: lattice points of the dilates
/// `t P` for `t = 0..=dim`, then the leading coefficient of the
/// interpolating polynomial times `dim!`, which is the `dim`-th finite
/// difference. `count(t)` must return `#(t P ∩ Z^dim)`.
pub fn ehrhart_normalized_volume(dim: usize, count: impl Fn(u64) -> u64) -> i64 {
    let values: Vec<i64> = (0..=dim as u64).map(|t| count(t) as i64).collect();
    // dim-th forward difference at 0
    (0..=dim)
        .map(|k| {
            let sign = if (dim - k).is_multiple_of(2) { 1 } else { -1 };
            sign * binom(dim, k) * values[k]
        })
        .sum()
}

fn binom(n: usize, k: usize) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

pub fn is_power_of_two(v: &BigInt) -> bool {
    let v = v.magnitude();
    !v.is_zero() && (v & (v - BigUint::one())).is_zero()
}

// ---------------------------------------------------------------- checks

fn err(e: Error) -> String {
    format!("unexpected error: {e}")
}

/// rank of a loopless graph's incidence matrix = n - #bipartite components.
pub fn check_bipartite_rank(n: usize, edges: &[(usize, usize)]) -> Check {
    let loopless: Vec<(usize, usize)> = edges
        .iter()
        .copied()
        .filter(|&(i, j)| i % n != j % n)
        .collect();
    let g = graph(n, &loopless);
    let m = loopgraph_incidence(&g).entries;
    let bipartite = g
        .classify_components()
        .iter()
        .filter(|c| c.is_bipartite)
        .count();
    let rank = m.rank_q();
    ensure!(
        rank == rank_oracle(&m),
        "rank_q {rank} disagrees with elimination oracle"
    );
    ensure!(
        rank == n - bipartite,
        "rank {rank} but n - bipartite = {}",
        n - bipartite
    );
    Ok(true)
}

/// Maximal minors of a loop-graph incidence matrix with |E| >= |V| are 0 or ±2^k.
pub fn check_loop_graph_minors(n: usize, edges: &[(usize, usize)]) -> Check {
    let g = graph(n, edges);
    let m = loopgraph_incidence(&g).entries;
    if m.rows() < m.cols() {
        return Ok(false);
    }
    let minors = m.maximal_minors().map_err(err)?;
    for v in &minors {
        ensure!(
            v.is_zero() || is_power_of_two(v),
            "minor {v} is not 0 or a power of two"
        );
    }
    Ok(true)
}

/// Connected loop-graph with |V| = |E| built as a tree plus one edge.
pub fn unicyclic(n: usize, parents: &[usize], extra: (usize, usize)) -> LoopGraph {
    let mut edges: Vec<(usize, usize)> = (1..n).map(|v| (parents[v - 1] % v, v)).collect();
    edges.push((extra.0 % n, extra.1 % n));
    graph(n, &edges)
}

/// det ≠ 0 ⟺ unique odd cycle (loopless) or tree with one loop.
pub fn check_quadratic_cremona(n: usize, parents: &[usize], extra: (usize, usize)) -> Check {
    let g = unicyclic(n, parents, extra);
    if g.edges().len() != n {
        return Ok(false); // the extra edge duplicated a tree edge
    }
    // gcd of the edge monomials must be 1: no vertex lies on every edge
    if (0..n).any(|v| g.edges().iter().all(|&(i, j)| i == v || j == v)) {
        return Ok(false);
    }
    let comps = g.classify_components();
    ensure!(comps.len() == 1, "generator produced a disconnected graph");
    let c = &comps[0];
    let det = loopgraph_incidence(&g).entries.determinant().map_err(err)?;
    let oracle = det_cofactor(&to_big(&loopgraph_incidence(&g).entries));
    ensure!(det == oracle, "Bareiss {det} vs cofactor {oracle}");
    let shape = (c.loop_count == 0 && c.has_unique_cycle_and_odd) || c.is_tree_with_one_loop;
    ensure!(
        !det.is_zero() == shape,
        "det {det} but shape criterion {shape} on {:?}",
        g.edges()
    );
    Ok(true)
}

pub fn check_skeleton_criterion(nv: usize, facets: &[Vec<usize>]) -> Check {
    let d = complex(nv, facets);
    let f = d.f_vector().map_err(err)?;
    let m = incidence_matrix(&d, 1).entries;
    let full = rank_oracle(&m) as u64 == f.get(0).min(f.get(1));
    let verdict = daonair_wlp1(&d).map_err(err)?;
    ensure!(
        verdict == full,
        "graph criterion {verdict}, rank says {full}"
    );
    Ok(true)
}

pub fn check_underlying_graph_criterion(powers: &[u32], extra: &[Vec<usize>]) -> Check {
    let a = MonomialAlgebra::new(artinian_ideal(powers, extra)).map_err(err)?;
    if a.dim(1) > a.dim(2) {
        return Ok(false);
    }
    let m = multiplication_matrix(&a, 1).entries;
    let full = rank_oracle(&m) == a.dim(1);
    let verdict = monomial_wlp1(&a).map_err(err)?;
    ensure!(
        verdict == full,
        "loop-graph criterion {verdict}, rank says {full}"
    );
    Ok(true)
}

/// Rank, spread and mixed-multiplicity routes agree in every degree.
pub fn check_routes(nv: usize, facets: &[Vec<usize>]) -> Check {
    let d = complex(nv, facets);
    let f = d.f_vector().map_err(err)?;
    for i in 1..=d.dim().max(0) as usize {
        let (lo, hi) = (f.get(i as isize - 1), f.get(i as isize));
        let full = rank_oracle(&incidence_matrix(&d, i).entries) as u64 == lo.min(hi);
        let ideal = incidence_ideal(&d, i).map_err(err)?;
        let spread = analytic_spread(&ideal).map_err(err)? as u64;
        ensure!(
            (spread == lo.min(hi)) == full,
            "degree {i}: spread {spread}, rank full {full}"
        );
        let mm = if lo <= hi {
            match last_mixed_mult(&ideal) {
                Ok(e) => Some(!e.is_zero()),
                Err(Error::VolumeBounds(_)) => None,
                Err(e) => return Err(err(e)),
            }
        } else {
            Some(mixed_mult_positive((lo - hi) as usize, hi as usize - 1, &ideal).map_err(err)?)
        };
        if let Some(mm) = mm {
            ensure!(
                mm == full,
                "degree {i}: mixed multiplicity route {mm}, rank full {full}"
            );
        }
    }
    Ok(true)
}

/// rank mod p = #{k : p does not divide s_k}, plus divisibility of the factors.
pub fn check_snf(rows: &[Vec<i64>]) -> Check {
    let m = IntegerMatrix::from_rows(rows);
    let snf = m.smith_normal_form();
    ensure!(
        snf.rank == rank_oracle(&m),
        "SNF rank {} vs oracle",
        snf.rank
    );
    for w in snf.invariant_factors.windows(2) {
        ensure!(
            (&w[1] % &w[0]).is_zero(),
            "{} does not divide {}",
            w[0],
            w[1]
        );
    }
    let mut product = BigInt::one();
    for (k, g) in snf.determinantal_divisors().iter().enumerate() {
        product *= &snf.invariant_factors[k];
        ensure!(
            *g == product,
            "g_{} = {g} is not the product of the first factors",
            k + 1
        );
    }
    for p in [2u64, 3, 5, 7, 11] {
        let expected = snf
            .invariant_factors
            .iter()
            .filter(|s| !(*s % BigInt::from(p)).is_zero())
            .count();
        let got = m.rank_mod_p(p).map_err(err)?;
        ensure!(
            got == expected,
            "rank mod {p} is {got}, SNF predicts {expected}"
        );
    }
    Ok(true)
}

/// d · simplex_mixed_mult = |det log|, and the triangulation agrees on simplices.
pub fn check_det_identity(n: usize, system: &[Vec<usize>]) -> Check {
    let monos: Vec<Monomial> = system.iter().map(|r| monomial_from_indices(n, r)).collect();
    let d = monos[0].degree();
    let rows: Vec<Vec<i64>> = monos
        .iter()
        .map(|m| m.exponents().iter().map(|&e| e as i64).collect())
        .collect();
    let det = det_cofactor(&to_big(&IntegerMatrix::from_rows(&rows)));
    ensure!(
        (&det % BigInt::from(d)).is_zero(),
        "det {det} of a {d}-stochastic matrix not divisible by {d}"
    );
    let e = simplex_mixed_mult(&monos).map_err(err)?;
    ensure!(
        BigInt::from(e.clone()) * BigInt::from(d) == det.abs(),
        "{d}·{e} != |{det}|"
    );
    let b = is_birational(&monos).map_err(err)?;
    ensure!(
        b.determinant == det,
        "reported determinant {} vs {det}",
        b.determinant
    );
    let vol = ExponentPolytope::new(rows)
        .map_err(err)?
        .normalized_volume()
        .map_err(err)?;
    ensure!(vol == e, "triangulated volume {vol} vs simplex formula {e}");
    Ok(true)
}

pub fn check_coordinate_drop(n: usize, points: &[Vec<usize>]) -> Check {
    let rows: Vec<Vec<i64>> = points
        .iter()
        .map(|r| {
            monomial_from_indices(n, r)
                .exponents()
                .iter()
                .map(|&e| e as i64)
                .collect()
        })
        .collect();
    let p = ExponentPolytope::new(rows).map_err(err)?;
    let first = p.normalized_volume_dropping(0).map_err(err)?;
    for k in 1..n {
        let other = p.normalized_volume_dropping(k).map_err(err)?;
        ensure!(
            other == first,
            "dropping coordinate {k} gives {other}, coordinate 0 gives {first}"
        );
    }
    Ok(true)
}

fn equigenerated(n: usize, gens: &[Vec<usize>]) -> Result<EquigeneratedIdeal, String> {
    let mut ms: Vec<Monomial> = gens.iter().map(|r| monomial_from_indices(n, r)).collect();
    ms.sort();
    ms.dedup();
    EquigeneratedIdeal::new(vars(n), ms).map_err(err)
}

/// e(J) <= e(I) for J generated by a subset of I's generators.
pub fn check_monotone_mixed_mult(n: usize, gens: &[Vec<usize>], keep: &[bool]) -> Check {
    let big = equigenerated(n, gens)?;
    let sub: Vec<Vec<usize>> = gens
        .iter()
        .zip(keep.iter().cycle())
        .filter(|(_, &k)| k)
        .map(|(g, _)| g.clone())
        .collect();
    if sub.is_empty() {
        return Ok(false);
    }
    let small = equigenerated(n, &sub)?;
    ensure!(
        monotonicity_check(&small, &big).map_err(err)?,
        "e(J) > e(I)"
    );
    Ok(true)
}

/// Top mixed multiplicity positive exactly at full analytic spread.
pub fn check_positivity_top(n: usize, gens: &[Vec<usize>]) -> Check {
    let ideal = equigenerated(n, gens)?;
    let e = last_mixed_mult(&ideal).map_err(err)?;
    let spread = analytic_spread(&ideal).map_err(err)?;
    ensure!(
        !e.is_zero() == (spread == n),
        "e = {e} but spread {spread} of {n}"
    );
    Ok(true)
}

/// Degree-one failure set is ALL or a subset of {2} when f_0 <= f_1.
pub fn check_degree_one_dichotomy(nv: usize, facets: &[Vec<usize>]) -> Check {
    let d = complex(nv, facets);
    let f = d.f_vector().map_err(err)?;
    if f.get(0) > f.get(1) {
        return Ok(false);
    }
    let fs = incidence_matrix(&d, 1).entries.full_rank_failure_primes();
    ensure!(
        fs == FailureSet::AllCharacteristics || fs.is_subset_of(&[2]),
        "degree-one failure set {fs}"
    );
    Ok(true)
}

/// Elimination failure set equals the subset-gcd set wherever f_i <= 8.
pub fn check_failure_oracle(nv: usize, facets: &[Vec<usize>]) -> Check {
    let d = complex(nv, facets);
    let f = d.f_vector().map_err(err)?;
    let mut any = false;
    for i in 1..=d.dim().max(0) as usize {
        let (lo, hi) = (f.get(i as isize - 1), f.get(i as isize));
        if lo > hi || hi > 8 {
            continue;
        }
        failure_char_set(&d, i, true).map_err(err)?;
        any = true;
    }
    Ok(any)
}

/// Every failing prime divides i + 1 or is at most the mixed-multiplicity bound.
pub fn check_bound_soundness(nv: usize, facets: &[Vec<usize>]) -> Check {
    let d = complex(nv, facets);
    let mut any = false;
    for i in 1..=d.dim().max(0) as usize {
        match wlp_fullrank_bound_report(&d, i) {
            Ok(r) => {
                ensure!(
                    r.guarantee_holds,
                    "degree {i}: failure {} escapes the bound",
                    r.failure
                );
                if let (Some(b), FailureSet::Primes(ps)) = (&r.bound, &r.failure) {
                    for p in ps {
                        let divides = (BigUint::from(i as u64 + 1) % p).is_zero();
                        ensure!(
                            divides || *p <= b.bound,
                            "prime {p} above bound {}",
                            b.bound
                        );
                    }
                }
                any |= !r.vacuous;
            }
            Err(Error::Hypothesis(_) | Error::VolumeBounds(_)) => {}
            Err(e) => return Err(err(e)),
        }
    }
    Ok(any)
}

/// Full report over A(Δ): routes agree (else the report errors) and records
/// are internally consistent.
pub fn check_report_complex(nv: usize, facets: &[Vec<usize>]) -> Check {
    let d = complex(nv, facets);
    let a = MonomialAlgebra::squarefree_reduction(&d).map_err(err)?;
    check_report(&a)
}

pub fn check_report_ideal(powers: &[u32], extra: &[Vec<usize>]) -> Check {
    let a = MonomialAlgebra::new(artinian_ideal(powers, extra)).map_err(err)?;
    check_report(&a)
}

fn check_report(a: &MonomialAlgebra) -> Check {
    let r = wlp_report(
        a,
        &WlpOptions {
            mixed_multiplicity: true,
        },
    )
    .map_err(err)?;
    for rec in &r.degrees {
        let target = rec.dims.0.min(rec.dims.1);
        ensure!(
            rec.full_rank_char0 == (rec.rank_q == target),
            "degree {}: verdict vs rank",
            rec.degree
        );
        let m = multiplication_matrix(a, rec.degree).entries;
        ensure!(
            rec.rank_q == rank_oracle(&m),
            "degree {}: rank_q vs oracle",
            rec.degree
        );
        for p in [2u64, 3, 5, 7] {
            let full_p = target == 0 || m.rank_mod_p(p).map_err(err)? == target;
            ensure!(
                full_p == !rec.failure.fails_at(p),
                "degree {}: char {p} disagrees with {}",
                rec.degree,
                rec.failure
            );
        }
    }
    Ok(true)
}
