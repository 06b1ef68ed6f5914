//! Finite simplicial complexes on labeled vertices.
//!
//! Vertices are kept in lexicographic label order and every face is a sorted
//! list of vertex indices, so comparing faces as index tuples is the same as
//! comparing their sorted label tuples. That ordering is the row and column
//! order of every matrix built from a complex.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use serde::Serialize;

use crate::{Error, Result};

/// A face as sorted vertex indices into [`SimplicialComplex::vertices`].
pub type Face = Vec<usize>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertices: Vec<String>,
    facets: Vec<Face>,
}

/// Face counts `f_{-1}, f_0, ..., f_dim`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct FVector(Vec<u64>);

impl FVector {
    /// `f_i`, the number of `i`-dimensional faces; zero outside the stored range.
    pub fn get(&self, i: isize) -> u64 {
        usize::try_from(i + 1)
            .ok()
            .and_then(|k| self.0.get(k).copied())
            .unwrap_or(0)
    }

    pub fn entries(&self) -> &[u64] {
        &self.0
    }

    pub fn dim(&self) -> isize {
        self.0.len() as isize - 2
    }
}

impl fmt::Display for FVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, v) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

fn check_label(label: &str) -> Result<()> {
    let mut chars = label.chars();
    let ok = matches!(chars.next(), Some(c) if c.is_alphabetic() || c == '_')
        && chars.all(|c| c.is_alphanumeric() || c == '_');
    if ok {
        Ok(())
    } else {
        Err(Error::Malformed(format!("invalid vertex label `{label}`")))
    }
}

impl SimplicialComplex {
    /// The complex generated by `facets`. Dominated sets are discarded.
    pub fn from_facets<S: AsRef<str>>(facets: &[&[S]]) -> Result<Self> {
        let facets: Vec<Vec<String>> = facets
            .iter()
            .map(|f| f.iter().map(|s| s.as_ref().to_string()).collect())
            .collect();
        Self::new(&[], &facets)
    }

    /// The complex generated by `facets`, with `vertices` declaring extra
    /// (possibly isolated) vertices. An empty facet list with no declared
    /// vertices yields the void complex.
    pub fn new(vertices: &[String], facets: &[Vec<String>]) -> Result<Self> {
        let mut declared = BTreeSet::new();
        for v in vertices {
            check_label(v)?;
            if !declared.insert(v.clone()) {
                return Err(Error::DuplicateVertex(v.clone()));
            }
        }
        let mut labels = declared;
        for facet in facets {
            if facet.is_empty() {
                return Err(Error::Malformed("empty facet".into()));
            }
            for v in facet {
                check_label(v)?;
                labels.insert(v.clone());
            }
        }
        let vertices: Vec<String> = labels.into_iter().collect();
        let index = |label: &String| vertices.binary_search(label).unwrap();

        let mut sets: Vec<Face> = facets
            .iter()
            .map(|f| {
                let mut s: Vec<usize> = f.iter().map(index).collect();
                s.sort_unstable();
                s.dedup();
                s
            })
            .collect();
        // isolated vertices become singleton facets
        for v in 0..vertices.len() {
            sets.push(vec![v]);
        }
        Ok(SimplicialComplex {
            facets: maximal_sets(sets),
            vertices,
        })
    }

    fn from_parts(vertices: Vec<String>, sets: Vec<Face>) -> Self {
        SimplicialComplex {
            facets: maximal_sets(sets),
            vertices,
        }
    }

    /// The full simplex on the given labels.
    pub fn simplex<S: AsRef<str>>(labels: &[S]) -> Result<Self> {
        Self::from_facets(&[labels])
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Face] {
        &self.facets
    }

    /// No faces at all, not even the empty face.
    pub fn is_void(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn dim(&self) -> isize {
        self.facets
            .iter()
            .map(|f| f.len() as isize - 1)
            .max()
            .unwrap_or(-1)
    }

    pub fn contains_face(&self, face: &[usize]) -> bool {
        if self.is_void() {
            return false;
        }
        self.facets.iter().any(|f| is_subset(face, f))
    }

    /// All `i`-dimensional faces in canonical order.
    pub fn faces(&self, i: isize) -> Vec<Face> {
        if self.is_void() || i < -1 {
            return Vec::new();
        }
        let size = (i + 1) as usize;
        let mut out = BTreeSet::new();
        for f in &self.facets {
            if f.len() >= size {
                for sub in subsets_of_size(f, size) {
                    out.insert(sub);
                }
            }
        }
        out.into_iter().collect()
    }

    pub fn f_vector(&self) -> Result<FVector> {
        if self.is_void() {
            return Err(Error::VoidComplex);
        }
        let dim = self.dim();
        Ok(FVector(
            (-1..=dim).map(|i| self.faces(i).len() as u64).collect(),
        ))
    }

    /// Faces of dimension at most `i`.
    pub fn skeleton(&self, i: usize) -> SimplicialComplex {
        let size = i + 1;
        let mut sets = Vec::new();
        for f in &self.facets {
            if f.len() <= size {
                sets.push(f.clone());
            } else {
                sets.extend(subsets_of_size(f, size));
            }
        }
        Self::from_parts(self.vertices.clone(), sets)
    }

    pub fn is_pure(&self) -> bool {
        self.facets.windows(2).all(|w| w[0].len() == w[1].len())
    }

    /// Inclusion-minimal vertex sets that are not faces, ordered by size then
    /// lexicographically.
    pub fn minimal_nonfaces(&self) -> Vec<Face> {
        let mut out = Vec::new();
        if self.is_void() {
            return out;
        }
        let dim = self.dim();
        let n = self.vertices.len();
        let mut prev: HashSet<Face> = self.faces(0).into_iter().collect();
        for _ in 2..=(dim + 2) as usize {
            let mut candidates = BTreeSet::new();
            for base in &prev {
                let last = *base.last().unwrap();
                for v in last + 1..n {
                    let mut cand = base.clone();
                    cand.push(v);
                    let all_faces = (0..cand.len()).all(|drop| {
                        let mut sub = cand.clone();
                        sub.remove(drop);
                        prev.contains(&sub)
                    });
                    if all_faces {
                        candidates.insert(cand);
                    }
                }
            }
            let mut next = HashSet::new();
            for cand in candidates {
                if self.contains_face(&cand) {
                    next.insert(cand);
                } else {
                    out.push(cand);
                }
            }
            prev = next;
        }
        out
    }

    /// Display label of a face: concatenated when every vertex label is a
    /// single character, comma separated in braces otherwise.
    pub fn face_label(&self, face: &[usize]) -> String {
        if face.is_empty() {
            return "∅".to_string();
        }
        let short = self.vertices.iter().all(|v| v.chars().count() == 1);
        let parts: Vec<&str> = face.iter().map(|&v| self.vertices[v].as_str()).collect();
        if short {
            parts.concat()
        } else {
            format!("{{{}}}", parts.join(","))
        }
    }

    /// Facets as label lists, in canonical order.
    pub fn facet_labels(&self) -> Vec<Vec<String>> {
        self.facets
            .iter()
            .map(|f| f.iter().map(|&v| self.vertices[v].clone()).collect())
            .collect()
    }

    /// Vertices that lie in no facet of size > 1.
    pub fn isolated_vertices(&self) -> Vec<String> {
        self.facets
            .iter()
            .filter(|f| f.len() == 1)
            .map(|f| self.vertices[f[0]].clone())
            .collect()
    }
}

pub(crate) fn is_subset(small: &[usize], big: &[usize]) -> bool {
    let mut it = big.iter();
    small.iter().all(|x| it.any(|y| y == x))
}

/// Subsets of a sorted slice of a given size, in lexicographic order.
pub(crate) fn subsets_of_size(items: &[usize], size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let n = items.len();
    if size > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..size).collect();
    loop {
        out.push(idx.iter().map(|&k| items[k]).collect());
        let mut k = size;
        while k > 0 && idx[k - 1] == k - 1 + n - size {
            k -= 1;
        }
        if k == 0 {
            return out;
        }
        let k = k - 1;
        idx[k] += 1;
        for j in k + 1..size {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn maximal_sets(mut sets: Vec<Face>) -> Vec<Face> {
    sets.sort();
    sets.dedup();
    // larger sets first so dominated ones are seen after their dominators
    let mut by_size = sets.clone();
    by_size.sort_by_key(|s| std::cmp::Reverse(s.len()));
    let mut kept: Vec<Face> = Vec::new();
    for s in by_size {
        if !kept.iter().any(|k| is_subset(&s, k)) {
            kept.push(s);
        }
    }
    kept.sort();
    kept
}
