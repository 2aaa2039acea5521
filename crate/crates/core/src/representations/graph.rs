use std::fmt::Write;

use serde::{Deserialize, Serialize};

use super::construction::GroupConstruction;
use crate::phase::Phase;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtomicEdge {
    pub from: usize,
    pub to: usize,
    pub color: usize,
    pub index: usize,
    pub alpha: Phase,
}

/// Vertices are the elements of G; a color-i edge g−g_i → g for every g.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtomicGraph {
    pub vertices: Vec<Vec<i64>>,
    pub edges: Vec<AtomicEdge>,
}

pub fn to_atomic_graph(gc: &GroupConstruction) -> AtomicGraph {
    let n = gc.dimension();
    let mut edges = Vec::with_capacity(n * gc.k());
    for g in 0..n {
        for c in 1..=gc.k() {
            edges.push(AtomicEdge {
                from: gc.group.minus(c, g),
                to: g,
                color: c,
                index: gc.t_at(c, g),
                alpha: gc.alpha_at(c, g),
            });
        }
    }
    AtomicGraph {
        vertices: (0..n).map(|g| gc.group.element(g)).collect(),
        edges,
    }
}

impl AtomicGraph {
    /// Exactly one incoming edge of each color at every vertex.
    pub fn is_defect_free(&self, k: usize) -> bool {
        let mut seen = vec![vec![0usize; k]; self.vertices.len()];
        for e in &self.edges {
            seen[e.to][e.color - 1] += 1;
        }
        seen.iter().all(|row| row.iter().all(|&x| x == 1))
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph atomic {\n");
        for (i, v) in self.vertices.iter().enumerate() {
            let label = v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
            let _ = writeln!(out, "  v{i} [label=\"({label})\"];");
        }
        for e in &self.edges {
            let _ = writeln!(
                out,
                "  v{} -> v{} [label=\"{}:{} ({})\"];",
                e.from, e.to, e.color, e.index, e.alpha
            );
        }
        out.push_str("}\n");
        out
    }
}
