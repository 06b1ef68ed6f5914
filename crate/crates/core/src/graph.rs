//! Graphs with loops and the purely graph-theoretic degree-one criteria.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::complex::SimplicialComplex;
use crate::monomial::MonomialAlgebra;
use crate::{Error, Result};

/// Simple graph on labeled vertices where loops `{i, i}` are allowed.
/// Edges are stored as `(i, j)` with `i <= j`, ordered lexicographically,
/// which is the canonical monomial order of the degree-2 monomials `x_i x_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoopGraph {
    labels: Vec<String>,
    edges: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentClass {
    pub vertices: Vec<String>,
    pub vertex_count: usize,
    /// Loops count as one edge each.
    pub edge_count: usize,
    pub is_bipartite: bool,
    pub is_tree: bool,
    pub has_loop: bool,
    pub loop_count: usize,
    /// An odd cycle among the non-loop edges.
    pub has_odd_cycle: bool,
    pub has_unique_cycle_and_odd: bool,
    pub is_tree_with_one_loop: bool,
}

impl LoopGraph {
    /// Duplicate edges are merged; endpoints are normalized to `i <= j`.
    pub fn new(labels: Vec<String>, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let n = labels.len();
        let edges: BTreeSet<(usize, usize)> = edges
            .into_iter()
            .map(|(i, j)| {
                assert!(i < n && j < n, "edge endpoint out of range");
                (i.min(j), i.max(j))
            })
            .collect();
        LoopGraph {
            labels,
            edges: edges.into_iter().collect(),
        }
    }

    /// 1-skeleton of a complex as a loopless graph.
    pub fn one_skeleton(delta: &SimplicialComplex) -> Self {
        let edges = delta.faces(1).into_iter().map(|e| (e[0], e[1]));
        Self::new(delta.vertices().to_vec(), edges)
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn loop_count(&self) -> usize {
        self.edges.iter().filter(|(i, j)| i == j).count()
    }

    pub fn edge_label(&self, (i, j): (usize, usize)) -> String {
        if i == j {
            format!("{}^2", self.labels[i])
        } else {
            format!("{}{}", self.labels[i], self.labels[j])
        }
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.labels.len()];
        for &(i, j) in &self.edges {
            if i != j {
                adj[i].push(j);
                adj[j].push(i);
            }
        }
        adj
    }

    /// Connected components as sorted vertex lists, ordered by least vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let adj = self.adjacency();
        let mut seen = vec![false; self.labels.len()];
        let mut out = Vec::new();
        for start in 0..self.labels.len() {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut stack = vec![start];
            let mut comp = Vec::new();
            while let Some(v) = stack.pop() {
                comp.push(v);
                for &w in &adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn classify_components(&self) -> Vec<ComponentClass> {
        let adj = self.adjacency();
        let mut color: Vec<Option<bool>> = vec![None; self.labels.len()];
        self.components()
            .into_iter()
            .map(|comp| {
                // 2-coloring from the least vertex; a conflict is an odd cycle
                let mut odd = false;
                color[comp[0]] = Some(false);
                let mut stack = vec![comp[0]];
                while let Some(v) = stack.pop() {
                    let c = color[v].unwrap();
                    for &w in &adj[v] {
                        match color[w] {
                            None => {
                                color[w] = Some(!c);
                                stack.push(w);
                            }
                            Some(cw) if cw == c => odd = true,
                            Some(_) => {}
                        }
                    }
                }
                let in_comp = |i: usize| comp.binary_search(&i).is_ok();
                let edge_count = self.edges.iter().filter(|(i, _)| in_comp(*i)).count();
                let loop_count = self
                    .edges
                    .iter()
                    .filter(|(i, j)| i == j && in_comp(*i))
                    .count();
                let v = comp.len();
                ComponentClass {
                    vertices: comp.iter().map(|&i| self.labels[i].clone()).collect(),
                    vertex_count: v,
                    edge_count,
                    is_bipartite: !odd && loop_count == 0,
                    is_tree: loop_count == 0 && edge_count + 1 == v,
                    has_loop: loop_count > 0,
                    loop_count,
                    has_odd_cycle: odd,
                    has_unique_cycle_and_odd: loop_count == 0 && edge_count == v && odd,
                    is_tree_with_one_loop: loop_count == 1 && edge_count == v,
                }
            })
            .collect()
    }

    /// For `|V| <= |E|`: some component has fewer edges than vertices, so the
    /// incidence matrix cannot have full rank.
    pub fn disconnected_shortcut(&self) -> Result<bool> {
        if self.vertex_count() > self.edges.len() {
            return Err(Error::Hypothesis(format!(
                "disconnected-graph criterion needs |V| <= |E|, got {} > {}",
                self.vertex_count(),
                self.edges.len()
            )));
        }
        Ok(self
            .classify_components()
            .iter()
            .any(|c| c.edge_count < c.vertex_count))
    }
}

/// Degree-one WLP of `A(Δ)` in characteristic zero, read off the loopless
/// 1-skeleton.
pub fn daonair_wlp1(delta: &SimplicialComplex) -> Result<bool> {
    let f = delta.f_vector()?;
    let graph = LoopGraph::one_skeleton(delta);
    let comps = graph.classify_components();
    Ok(if f.get(1) >= f.get(0) {
        comps.iter().all(|c| !c.is_bipartite)
    } else {
        comps.iter().all(|c| {
            if c.is_bipartite {
                c.is_tree
            } else {
                c.edge_count == c.vertex_count
            }
        })
    })
}

/// Degree-one WLP of an Artinian monomial algebra with `dim A_1 <= dim A_2`
/// in characteristic zero: every component of the underlying graph carries a
/// loop or an odd cycle.
pub fn monomial_wlp1(algebra: &MonomialAlgebra) -> Result<bool> {
    let (d1, d2) = (algebra.dim(1), algebra.dim(2));
    if d1 > d2 {
        return Err(Error::Hypothesis(format!(
            "degree-one graph criterion needs dim A_1 <= dim A_2, got {d1} > {d2}"
        )));
    }
    Ok(algebra
        .underlying_graph()
        .classify_components()
        .iter()
        .all(|c| !c.is_bipartite))
}
