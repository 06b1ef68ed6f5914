//! Matrices and ideals attached to complexes and monomial algebras.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use crate::complex::SimplicialComplex;
use crate::graph::LoopGraph;
use crate::linalg::IntegerMatrix;
use crate::monomial::{Monomial, MonomialAlgebra};
use crate::{Error, Result};

/// An integer matrix whose rows and columns carry labels (faces, monomials,
/// vertices).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledMatrix {
    pub rows: Vec<String>,
    pub cols: Vec<String>,
    pub entries: IntegerMatrix,
}

#[derive(Serialize)]
struct LabeledMatrixJson<'a> {
    rows: &'a [String],
    cols: &'a [String],
    entries: Vec<Vec<i64>>,
}

impl Serialize for LabeledMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        LabeledMatrixJson {
            rows: &self.rows,
            cols: &self.cols,
            entries: self.entries.to_rows_i64(),
        }
        .serialize(s)
    }
}

impl LabeledMatrix {
    /// Common row sum `d` when the matrix is `d`-stochastic.
    pub fn stochastic_degree(&self) -> Option<BigInt> {
        self.entries.constant_row_sum()
    }

    /// Row-major text block: a header of column labels, then one labeled row
    /// per line.
    pub fn to_text(&self) -> String {
        let width = self
            .rows
            .iter()
            .map(|r| r.chars().count())
            .max()
            .unwrap_or(0);
        let cells: Vec<Vec<String>> = (0..self.entries.rows())
            .map(|i| {
                self.entries
                    .row(i)
                    .iter()
                    .map(ToString::to_string)
                    .collect()
            })
            .collect();
        let colw: Vec<usize> = (0..self.cols.len())
            .map(|j| {
                cells
                    .iter()
                    .map(|r| r[j].len())
                    .chain(std::iter::once(self.cols[j].chars().count()))
                    .max()
                    .unwrap()
            })
            .collect();
        let mut out = format!("{:width$}", "");
        for (c, w) in self.cols.iter().zip(&colw) {
            out.push_str(&format!(" {c:>w$}"));
        }
        out.push('\n');
        for (label, row) in self.rows.iter().zip(&cells) {
            out.push_str(&format!("{label:width$}"));
            for (v, w) in row.iter().zip(&colw) {
                out.push_str(&format!(" {v:>w$}"));
            }
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for LabeledMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// An ideal generated by monomials of a single degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquigeneratedIdeal {
    pub variables: Vec<String>,
    pub generators: Vec<Monomial>,
    pub degree: u32,
}

impl EquigeneratedIdeal {
    pub fn new(variables: Vec<String>, generators: Vec<Monomial>) -> Result<Self> {
        let degree = generators.first().ok_or(Error::ZeroIdeal)?.degree();
        Self::with_degree(variables, generators, degree)
    }

    /// Also accepts the zero ideal, which still has a nominal degree.
    pub fn with_degree(
        variables: Vec<String>,
        generators: Vec<Monomial>,
        degree: u32,
    ) -> Result<Self> {
        if generators.iter().any(|g| g.degree() != degree) {
            return Err(Error::UnequalDegrees);
        }
        if generators.iter().any(|g| g.nvars() != variables.len()) {
            return Err(Error::Malformed(
                "generator over wrong variable count".into(),
            ));
        }
        Ok(EquigeneratedIdeal {
            variables,
            generators,
            degree,
        })
    }

    pub fn nvars(&self) -> usize {
        self.variables.len()
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn generator_strings(&self) -> Vec<String> {
        self.generators
            .iter()
            .map(|g| g.format(&self.variables))
            .collect()
    }

    pub fn log_matrix(&self) -> Result<LabeledMatrix> {
        log_matrix(&self.generators, &self.variables)
    }

    /// Squarefree, equigenerated, and any two generators share at most one
    /// variable. Necessary for being an incidence ideal, not sufficient.
    pub fn check_incidence_shape(&self) -> bool {
        self.generators.iter().all(Monomial::is_squarefree)
            && self.generators.iter().enumerate().all(|(k, a)| {
                self.generators[k + 1..]
                    .iter()
                    .all(|b| a != b && a.gcd_degree(b) <= 1)
            })
    }
}

/// `M(Δ, i)`: rows are the `i`-faces, columns the `(i-1)`-faces, with a 1
/// where the column face lies in the row face.
pub fn incidence_matrix(delta: &SimplicialComplex, i: usize) -> LabeledMatrix {
    let i = i as isize;
    let rows = delta.faces(i);
    let cols = delta.faces(i - 1);
    let col_index: HashMap<&[usize], usize> = cols
        .iter()
        .enumerate()
        .map(|(k, f)| (f.as_slice(), k))
        .collect();
    let mut m = IntegerMatrix::zeros(rows.len(), cols.len());
    for (r, sigma) in rows.iter().enumerate() {
        for drop in 0..sigma.len() {
            let mut tau = sigma.clone();
            tau.remove(drop);
            m.set(r, col_index[tau.as_slice()], BigInt::one());
        }
    }
    LabeledMatrix {
        rows: rows.iter().map(|f| delta.face_label(f)).collect(),
        cols: cols.iter().map(|f| delta.face_label(f)).collect(),
        entries: m,
    }
}

/// Multiplication by `x_1 + ... + x_n` from degree `i` to degree `i + 1`,
/// in the standard monomial bases.
pub fn multiplication_matrix(algebra: &MonomialAlgebra, i: usize) -> LabeledMatrix {
    let vars = algebra.variables();
    let cols = algebra.standard_monomials(i);
    let rows = algebra.standard_monomials(i + 1);
    let row_index: HashMap<&Monomial, usize> =
        rows.iter().enumerate().map(|(k, m)| (m, k)).collect();
    let mut m = IntegerMatrix::zeros(rows.len(), cols.len());
    for (c, mono) in cols.iter().enumerate() {
        for k in 0..vars.len() {
            if let Some(&r) = row_index.get(&mono.times_variable(k)) {
                m.set(r, c, BigInt::one());
            }
        }
    }
    LabeledMatrix {
        rows: rows.iter().map(|m| m.label(vars)).collect(),
        cols: cols.iter().map(|m| m.label(vars)).collect(),
        entries: m,
    }
}

/// `I_Δ(i)`: one variable `t_τ` per `(i-1)`-face, one generator per `i`-face.
pub fn incidence_ideal(delta: &SimplicialComplex, i: usize) -> Result<EquigeneratedIdeal> {
    if i == 0 {
        return Err(Error::Hypothesis(
            "incidence ideals start at degree 1".into(),
        ));
    }
    let i = i as isize;
    let cols = delta.faces(i - 1);
    if cols.is_empty() {
        return Err(Error::NoFaces(i - 1));
    }
    let m = incidence_matrix(delta, i as usize);
    let variables = cols
        .iter()
        .map(|f| format!("t_{}", delta.face_label(f)))
        .collect();
    EquigeneratedIdeal::with_degree(variables, monomials_of_rows(&m.entries), (i + 1) as u32)
}

/// Facet ideal of the `d`-skeleton restricted to its `d`-dimensional facets:
/// one variable per vertex, one generator per `d`-face.
pub fn facet_ideal_skeleton(delta: &SimplicialComplex, d: usize) -> Result<EquigeneratedIdeal> {
    let n = delta.vertices().len();
    let gens = delta
        .faces(d as isize)
        .iter()
        .map(|f| Monomial::squarefree(n, f))
        .collect();
    let variables = delta.vertices().iter().map(|v| format!("t_{v}")).collect();
    EquigeneratedIdeal::with_degree(variables, gens, d as u32 + 1)
}

/// 0/1 pattern of `×L^d : A_1 -> A_{d+1}` on `A(Δ)` with the `d!` scalar
/// factored out: rows are `d`-faces, columns vertices.
pub fn slp1_matrix(delta: &SimplicialComplex, d: usize) -> LabeledMatrix {
    let faces = delta.faces(d as isize);
    let n = delta.vertices().len();
    let mut m = IntegerMatrix::zeros(faces.len(), n);
    for (r, f) in faces.iter().enumerate() {
        for &v in f {
            m.set(r, v, BigInt::one());
        }
    }
    LabeledMatrix {
        rows: faces.iter().map(|f| delta.face_label(f)).collect(),
        cols: delta.vertices().to_vec(),
        entries: m,
    }
}

/// Rows are exponent vectors of `monomials` over `variables`.
pub fn log_matrix(monomials: &[Monomial], variables: &[String]) -> Result<LabeledMatrix> {
    if monomials.is_empty() {
        return Err(Error::EmptyMonomialList);
    }
    let rows: Vec<Vec<i64>> = monomials
        .iter()
        .map(|m| m.exponents().iter().map(|&e| e as i64).collect())
        .collect();
    Ok(LabeledMatrix {
        rows: monomials.iter().map(|m| m.label(variables)).collect(),
        cols: variables.to_vec(),
        entries: IntegerMatrix::from_rows(&rows),
    })
}

/// Incidence matrix of a graph with loops: rows are edges, a loop row holds
/// a single 2.
pub fn loopgraph_incidence(graph: &LoopGraph) -> LabeledMatrix {
    let mut m = IntegerMatrix::zeros(graph.edges().len(), graph.vertex_count());
    for (r, &(i, j)) in graph.edges().iter().enumerate() {
        if i == j {
            m.set(r, i, BigInt::from(2));
        } else {
            m.set(r, i, BigInt::one());
            m.set(r, j, BigInt::one());
        }
    }
    LabeledMatrix {
        rows: graph.edges().iter().map(|&e| graph.edge_label(e)).collect(),
        cols: graph.labels().to_vec(),
        entries: m,
    }
}

fn monomials_of_rows(m: &IntegerMatrix) -> Vec<Monomial> {
    m.to_rows_i64()
        .into_iter()
        .map(|r| Monomial::from_exponents(r.into_iter().map(|e| e as u32).collect()))
        .collect()
}
