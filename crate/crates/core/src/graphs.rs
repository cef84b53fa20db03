//! Swap graphs: vertices are the orders of a domain, edges join orders that
//! differ by one transposition of neighbouring alternatives.

use std::collections::{BTreeSet, VecDeque};
use std::fmt::Write;

use serde::Serialize;

use crate::domain::{Domain, LinearOrder};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DomainGraph {
    vertices: Vec<LinearOrder>,
    edges: BTreeSet<(usize, usize)>,
}

/// `u` and `v` differ by exactly one adjacent transposition.
pub fn differ_by_adjacent_swap(u: &LinearOrder, v: &LinearOrder) -> bool {
    let (u, v) = (u.ranking(), v.ranking());
    if u.len() != v.len() {
        return false;
    }
    let diff: Vec<usize> = (0..u.len()).filter(|&i| u[i] != v[i]).collect();
    matches!(diff.as_slice(), [i, j] if *j == i + 1 && u[*i] == v[*j] && u[*j] == v[*i])
}

pub fn build_graph(domain: &Domain) -> DomainGraph {
    let vertices: Vec<LinearOrder> = domain.iter().cloned().collect();
    let mut edges = BTreeSet::new();
    for i in 0..vertices.len() {
        for j in i + 1..vertices.len() {
            if differ_by_adjacent_swap(&vertices[i], &vertices[j]) {
                edges.insert((i, j));
            }
        }
    }
    DomainGraph { vertices, edges }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct GraphSummary {
    pub vertices: usize,
    pub edges: usize,
    pub connected: bool,
    pub path: bool,
}

impl DomainGraph {
    pub fn vertices(&self) -> &[LinearOrder] {
        &self.vertices
    }

    /// Edges as index pairs `(i, j)` with `i < j`, sorted.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .filter(|&&(i, j)| i == v || j == v)
            .count()
    }

    pub fn is_connected(&self) -> bool {
        if self.vertices.is_empty() {
            return false;
        }
        let mut adjacency = vec![Vec::new(); self.vertices.len()];
        for &(i, j) in &self.edges {
            adjacency[i].push(j);
            adjacency[j].push(i);
        }
        let mut seen = vec![false; self.vertices.len()];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            for &w in &adjacency[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Connected, acyclic, and no vertex of degree above two.
    pub fn is_path(&self) -> bool {
        self.is_connected()
            && self.edges.len() + 1 == self.vertices.len()
            && (0..self.vertices.len()).all(|v| self.degree(v) <= 2)
    }

    pub fn summary(&self) -> GraphSummary {
        GraphSummary {
            vertices: self.vertices.len(),
            edges: self.edges.len(),
            connected: self.is_connected(),
            path: self.is_path(),
        }
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph D {\n");
        for v in &self.vertices {
            writeln!(out, "  \"{v}\" [label=\"{v}\"];").unwrap();
        }
        for &(i, j) in &self.edges {
            writeln!(
                out,
                "  \"{}\" -- \"{}\";",
                self.vertices[i], self.vertices[j]
            )
            .unwrap();
        }
        out.push_str("}\n");
        out
    }
}
