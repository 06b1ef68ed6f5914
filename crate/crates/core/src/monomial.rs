//! Monomials, monomial ideals and their Artinian quotients.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use crate::complex::SimplicialComplex;
use crate::graph::LoopGraph;
use crate::{Error, Result};

/// A monomial as a dense exponent vector over a fixed variable list.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    exponents: Vec<u32>,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial {
            exponents: vec![0; nvars],
        }
    }

    pub fn from_exponents(exponents: Vec<u32>) -> Self {
        Monomial { exponents }
    }

    pub fn variable(nvars: usize, k: usize) -> Self {
        let mut m = Self::one(nvars);
        m.exponents[k] = 1;
        m
    }

    /// Squarefree monomial on the given variable indices.
    pub fn squarefree(nvars: usize, support: &[usize]) -> Self {
        let mut m = Self::one(nvars);
        for &k in support {
            m.exponents[k] += 1;
        }
        m
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn nvars(&self) -> usize {
        self.exponents.len()
    }

    pub fn degree(&self) -> u32 {
        self.exponents.iter().sum()
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exponents
            .iter()
            .zip(&other.exponents)
            .all(|(a, b)| a <= b)
    }

    pub fn is_squarefree(&self) -> bool {
        self.exponents.iter().all(|&e| e <= 1)
    }

    /// Index of the variable if this is a pure power `x_k^e`, `e >= 1`.
    pub fn pure_power_of(&self) -> Option<usize> {
        let mut it = self.exponents.iter().enumerate().filter(|(_, &e)| e > 0);
        match (it.next(), it.next()) {
            (Some((k, _)), None) => Some(k),
            _ => None,
        }
    }

    pub fn support(&self) -> Vec<usize> {
        self.exponents
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(k, _)| k)
            .collect()
    }

    pub fn times_variable(&self, k: usize) -> Monomial {
        let mut m = self.clone();
        m.exponents[k] += 1;
        m
    }

    /// Degree of `gcd(self, other)`.
    pub fn gcd_degree(&self, other: &Monomial) -> u32 {
        self.exponents
            .iter()
            .zip(&other.exponents)
            .map(|(a, b)| *a.min(b))
            .sum()
    }

    /// Written in the monomial grammar, e.g. `x1^2*x3`; `1` for the unit.
    pub fn format(&self, variables: &[String]) -> String {
        let mut s = String::new();
        for (k, &e) in self.exponents.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !s.is_empty() {
                s.push('*');
            }
            s.push_str(&variables[k]);
            if e > 1 {
                let _ = write!(s, "^{e}");
            }
        }
        if s.is_empty() {
            s.push('1');
        }
        s
    }

    /// Compact label for matrix rows: `x1^2`, `x1x2`, or `ab` style.
    pub fn label(&self, variables: &[String]) -> String {
        let mut s = String::new();
        for (k, &e) in self.exponents.iter().enumerate() {
            if e == 0 {
                continue;
            }
            s.push_str(&variables[k]);
            if e > 1 {
                let _ = write!(s, "^{e}");
            }
        }
        if s.is_empty() {
            s.push('1');
        }
        s
    }
}

/// Canonical order: lexicographic on exponent vectors, larger first. For
/// squarefree monomials of one degree this is the lexicographic order of
/// the sorted supports (`ab` before `ac` before `bc`).
pub fn canonical_cmp(a: &Monomial, b: &Monomial) -> Ordering {
    b.exponents.cmp(&a.exponents)
}

/// Parses `ident('^'posint)?('*'ident('^'posint)?)*` over `variables`.
pub fn parse_monomial(text: &str, variables: &[String]) -> Result<Monomial> {
    let text = text.trim();
    if text.is_empty() {
        return Err(Error::Malformed("empty monomial".into()));
    }
    let mut m = Monomial::one(variables.len());
    for factor in text.split('*') {
        let factor = factor.trim();
        let (name, exp) = match factor.split_once('^') {
            Some((name, exp)) => {
                let exp: u32 = exp
                    .trim()
                    .parse()
                    .map_err(|_| Error::Malformed(format!("bad exponent in `{factor}`")))?;
                (name.trim(), exp)
            }
            None => (factor, 1),
        };
        let valid_ident = name
            .chars()
            .next()
            .is_some_and(|c| c.is_alphabetic() || c == '_')
            && name.chars().all(|c| c.is_alphanumeric() || c == '_');
        if !valid_ident {
            return Err(Error::Malformed(format!(
                "bad factor `{factor}` in `{text}`"
            )));
        }
        if exp == 0 {
            return Err(Error::ZeroExponent(text.to_string()));
        }
        let k = variables
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        m.exponents[k] += exp;
    }
    Ok(m)
}

/// A monomial ideal given by its minimal generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialIdeal {
    variables: Vec<String>,
    generators: Vec<Monomial>,
}

impl MonomialIdeal {
    /// Minimalizes `generators` (drops any generator divisible by another).
    pub fn new(variables: Vec<String>, generators: Vec<Monomial>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for v in &variables {
            if !seen.insert(v) {
                return Err(Error::DuplicateVertex(v.clone()));
            }
        }
        if generators.iter().any(|g| g.nvars() != variables.len()) {
            return Err(Error::Malformed(
                "generator over wrong variable count".into(),
            ));
        }
        Ok(MonomialIdeal {
            generators: minimalize(generators),
            variables,
        })
    }

    pub fn parse(variables: Vec<String>, generators: &[impl AsRef<str>]) -> Result<Self> {
        let gens = generators
            .iter()
            .map(|g| parse_monomial(g.as_ref(), &variables))
            .collect::<Result<Vec<_>>>()?;
        Self::new(variables, gens)
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.generators
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.generators.iter().any(|g| g.divides(m))
    }

    /// Every variable has a pure power among the generators.
    pub fn is_artinian(&self) -> bool {
        self.first_non_artinian_variable().is_none()
    }

    fn first_non_artinian_variable(&self) -> Option<usize> {
        let mut covered = vec![false; self.variables.len()];
        for g in &self.generators {
            if let Some(k) = g.pure_power_of() {
                covered[k] = true;
            }
        }
        covered.iter().position(|c| !c)
    }

    /// `I_Δ + (x_v^2)`: minimal non-faces plus all vertex squares.
    pub fn squarefree_reduction(delta: &SimplicialComplex) -> Result<Self> {
        if delta.is_void() {
            return Err(Error::VoidComplex);
        }
        let n = delta.vertices().len();
        let mut gens: Vec<Monomial> = delta
            .minimal_nonfaces()
            .iter()
            .map(|f| Monomial::squarefree(n, f))
            .collect();
        gens.extend((0..n).map(|k| Monomial::squarefree(n, &[k, k])));
        Self::new(delta.vertices().to_vec(), gens)
    }

    pub fn generator_strings(&self) -> Vec<String> {
        self.generators
            .iter()
            .map(|g| g.format(&self.variables))
            .collect()
    }
}

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by(|a, b| {
        a.degree()
            .cmp(&b.degree())
            .then_with(|| canonical_cmp(a, b))
    });
    gens.dedup();
    let mut kept: Vec<Monomial> = Vec::new();
    for g in gens {
        if !kept.iter().any(|k| k.divides(&g)) {
            kept.push(g);
        }
    }
    kept.sort_by(|a, b| {
        a.degree()
            .cmp(&b.degree())
            .then_with(|| canonical_cmp(a, b))
    });
    kept
}

/// An Artinian quotient `R/I` with its graded basis of standard monomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialAlgebra {
    ideal: MonomialIdeal,
    basis: Vec<Vec<Monomial>>,
}

impl MonomialAlgebra {
    pub fn new(ideal: MonomialIdeal) -> Result<Self> {
        if let Some(k) = ideal.first_non_artinian_variable() {
            return Err(Error::NotArtinian(ideal.variables[k].clone()));
        }
        let n = ideal.variables.len();
        let mut basis = vec![vec![Monomial::one(n)]];
        if ideal.contains(&Monomial::one(n)) {
            basis[0].clear();
        }
        // no gaps: stop at the first empty degree
        while let Some(last) = basis.last().filter(|b| !b.is_empty()) {
            let mut next: Vec<Monomial> = last
                .iter()
                .flat_map(|m| (0..n).map(move |k| m.times_variable(k)))
                .filter(|m| !ideal.contains(m))
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect();
            next.sort_by(canonical_cmp);
            basis.push(next);
        }
        basis.pop();
        Ok(MonomialAlgebra { ideal, basis })
    }

    /// `A(Δ)`.
    pub fn squarefree_reduction(delta: &SimplicialComplex) -> Result<Self> {
        Self::new(MonomialIdeal::squarefree_reduction(delta)?)
    }

    pub fn ideal(&self) -> &MonomialIdeal {
        &self.ideal
    }

    pub fn variables(&self) -> &[String] {
        &self.ideal.variables
    }

    /// Standard monomials of degree `i` in canonical order.
    pub fn standard_monomials(&self, i: usize) -> &[Monomial] {
        self.basis.get(i).map_or(&[], Vec::as_slice)
    }

    pub fn dim(&self, i: usize) -> usize {
        self.standard_monomials(i).len()
    }

    /// Highest degree with a nonzero component.
    pub fn socle_degree(&self) -> usize {
        self.basis.len().saturating_sub(1)
    }

    pub fn hilbert_function(&self) -> Vec<usize> {
        self.basis.iter().map(Vec::len).collect()
    }

    /// Graph on surviving variables with an edge `{x_i, x_j}` (a loop when
    /// `i = j`) whenever `x_i x_j` survives.
    pub fn underlying_graph(&self) -> LoopGraph {
        let n = self.variables().len();
        let alive: Vec<usize> = (0..n)
            .filter(|&k| !self.ideal.contains(&Monomial::variable(n, k)))
            .collect();
        let position: HashMap<usize, usize> =
            alive.iter().enumerate().map(|(p, &k)| (k, p)).collect();
        let mut edges = Vec::new();
        for m in self.standard_monomials(2) {
            let s = m.support();
            let (i, j) = match s.as_slice() {
                [i] => (*i, *i),
                [i, j] => (*i, *j),
                _ => unreachable!("degree-2 monomial"),
            };
            edges.push((position[&i], position[&j]));
        }
        let labels = alive.iter().map(|&k| self.variables()[k].clone()).collect();
        LoopGraph::new(labels, edges)
    }

    /// When `I` is generated by squarefree monomials and squares of
    /// variables, the complex `Δ` with `A ≅ A(Δ)`: its faces are the supports
    /// of the standard monomials.
    pub fn squarefree_complex(&self) -> Option<SimplicialComplex> {
        let n = self.variables().len();
        let gens_ok = self
            .ideal
            .generators
            .iter()
            .all(|g| g.is_squarefree() || (g.degree() == 2 && g.pure_power_of().is_some()));
        let squares_in = (0..n).all(|k| self.ideal.contains(&Monomial::squarefree(n, &[k, k])));
        if !gens_ok || !squares_in {
            return None;
        }
        let vertices: Vec<String> = (0..n)
            .filter(|&k| !self.ideal.contains(&Monomial::variable(n, k)))
            .map(|k| self.variables()[k].clone())
            .collect();
        if vertices.is_empty() {
            return None;
        }
        let faces: Vec<Vec<String>> = self
            .basis
            .iter()
            .skip(1)
            .flatten()
            .map(|m| {
                m.support()
                    .iter()
                    .map(|&k| self.variables()[k].clone())
                    .collect()
            })
            .collect();
        SimplicialComplex::new(&vertices, &faces).ok()
    }
}
