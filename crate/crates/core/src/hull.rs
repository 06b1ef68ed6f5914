//! Exact normalized volume of the convex hull of integer points.
//!
//! The hull is triangulated by placing points one at a time in canonical
//! order (a beneath-beyond, or placing, triangulation): each new point is
//! coned over every boundary facet it lies strictly beyond. Orientation tests
//! are integer determinants, so there is no rounding and no perturbation.
//! Points on a facet hyperplane are never "beyond" it, which keeps every
//! added simplex full-dimensional.

use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{Signed, Zero};

use crate::linalg::IntegerMatrix;
use crate::{Error, Result};

pub const MAX_DIM: usize = 10;
pub const MAX_POINTS: usize = 64;

/// `m! · vol_m(conv(points))` for points in `Z^m`; zero when the hull is
/// lower-dimensional. For `m = 0` a nonempty point set has volume 1.
pub fn normalized_volume(points: &[Vec<i64>]) -> Result<BigUint> {
    let Some(first) = points.first() else {
        return Ok(BigUint::zero());
    };
    let m = first.len();
    if points.iter().any(|p| p.len() != m) {
        return Err(Error::Malformed("points of mixed dimension".into()));
    }
    if m > MAX_DIM {
        return Err(Error::VolumeBounds(format!(
            "ambient dimension {m} > {MAX_DIM}"
        )));
    }
    if points.len() > MAX_POINTS {
        return Err(Error::VolumeBounds(format!(
            "{} points > {MAX_POINTS}",
            points.len()
        )));
    }
    if m == 0 {
        return Ok(BigUint::from(1u32));
    }
    let pts: Vec<Vec<i64>> = points
        .iter()
        .cloned()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();

    let Some(initial) = initial_simplex(&pts, m) else {
        return Ok(BigUint::zero());
    };

    // Coordinates scaled by m+1 so the centroid of the initial simplex is
    // integral; it stays strictly inside every later hull.
    let scale = (m + 1) as i64;
    let scaled: Vec<Vec<i64>> = pts
        .iter()
        .map(|p| p.iter().map(|x| x * scale).collect())
        .collect();
    let centroid: Vec<i64> = (0..m)
        .map(|k| initial.iter().map(|&i| pts[i][k]).sum())
        .collect();

    let mut volume = simplex_volume(&pts, &initial);
    let mut boundary: BTreeSet<Vec<usize>> = BTreeSet::new();
    for drop in 0..=m {
        let mut facet = initial.clone();
        facet.remove(drop);
        boundary.insert(facet);
    }

    let placed: BTreeSet<usize> = initial.iter().copied().collect();
    for p in (0..pts.len()).filter(|i| !placed.contains(i)) {
        let visible: Vec<Vec<usize>> = boundary
            .iter()
            .filter(|facet| {
                let inside = orientation(&scaled, facet, &centroid);
                let here = orientation(&scaled, facet, &scaled[p]);
                here != Sign::NoSign && here != inside
            })
            .cloned()
            .collect();
        for facet in visible {
            let mut simplex = facet.clone();
            simplex.push(p);
            volume += simplex_volume(&pts, &simplex);
            boundary.remove(&facet);
            // the cone's side facets: shared ones cancel, the horizon stays
            for drop in 0..facet.len() {
                let mut side = facet.clone();
                side.remove(drop);
                side.push(p);
                side.sort_unstable();
                if !boundary.remove(&side) {
                    boundary.insert(side);
                }
            }
        }
    }
    Ok(volume)
}

/// Greedy affinely independent subset in canonical order, if of size `m+1`.
fn initial_simplex(pts: &[Vec<i64>], m: usize) -> Option<Vec<usize>> {
    let mut chosen = vec![0];
    let mut diffs: Vec<Vec<i64>> = Vec::new();
    for (i, p) in pts.iter().enumerate().skip(1) {
        let d: Vec<i64> = p.iter().zip(&pts[0]).map(|(a, b)| a - b).collect();
        diffs.push(d);
        if IntegerMatrix::from_rows(&diffs).rank_q() == diffs.len() {
            chosen.push(i);
            if chosen.len() == m + 1 {
                return Some(chosen);
            }
        } else {
            diffs.pop();
        }
    }
    None
}

/// Sign of the determinant with rows `v_k - v_0` over the facet and `q - v_0`.
fn orientation(pts: &[Vec<i64>], facet: &[usize], q: &[i64]) -> Sign {
    let base = &pts[facet[0]];
    let mut rows: Vec<Vec<i64>> = facet[1..]
        .iter()
        .map(|&i| pts[i].iter().zip(base).map(|(a, b)| a - b).collect())
        .collect();
    rows.push(q.iter().zip(base).map(|(a, b)| a - b).collect());
    IntegerMatrix::from_rows(&rows)
        .determinant()
        .unwrap()
        .sign()
}

fn simplex_volume(pts: &[Vec<i64>], simplex: &[usize]) -> BigUint {
    let base = &pts[simplex[0]];
    let rows: Vec<Vec<i64>> = simplex[1..]
        .iter()
        .map(|&i| pts[i].iter().zip(base).map(|(a, b)| a - b).collect())
        .collect();
    let det: BigInt = IntegerMatrix::from_rows(&rows).determinant().unwrap();
    det.abs().to_biguint().unwrap()
}
