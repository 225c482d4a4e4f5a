//! Dual graphs of exceptional and fiber curves, Hirzebruch–Jung arithmetic,
//! and the surface invariants that follow from the singular fiber.

mod fiber;
mod hj;
mod invariants;
mod matrix;

use std::fmt::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{lift, ExactInt};

pub use fiber::{build_fiber_graph, fiber_euler_number, solve_self_intersections};
pub use hj::{
    cf_eval, cf_expand, discriminant_group, fundamental_cycle, local_pi1_order, monoid_p, HJType,
    MonoidP,
};
pub use invariants::{surface_invariants, SurfaceInvariants};
pub use matrix::Matrix;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Vertex {
    pub label: String,
    /// Unknown until solved for fiber graphs.
    pub self_intersection: Option<i64>,
    pub multiplicity: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualGraph {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<(usize, usize)>,
}

impl DualGraph {
    pub fn new() -> Self {
        DualGraph {
            vertices: Vec::new(),
            edges: Vec::new(),
        }
    }

    pub fn add_vertex(&mut self, label: impl Into<String>, self_intersection: Option<i64>, multiplicity: u64) -> usize {
        self.vertices.push(Vertex {
            label: label.into(),
            self_intersection,
            multiplicity,
        });
        self.vertices.len() - 1
    }

    pub fn add_edge(&mut self, a: usize, b: usize) {
        self.edges.push((a.min(b), a.max(b)));
    }

    /// A chain `E_1 - ... - E_r` with `E_i² = -s_i`, multiplicity 1.
    pub fn chain(expansion: &[i64]) -> Self {
        let mut g = DualGraph::new();
        for (i, &s) in expansion.iter().enumerate() {
            let v = g.add_vertex(format!("E{}", i + 1), Some(-s), 1);
            if i > 0 {
                g.add_edge(v - 1, v);
            }
        }
        g
    }

    /// A center of self-intersection `-s` with legs of `(-2)`-curves.
    pub fn star(center: i64, legs: &[usize]) -> Self {
        let mut g = DualGraph::new();
        let c = g.add_vertex("C", Some(-center), 1);
        for (l, &len) in legs.iter().enumerate() {
            let mut prev = c;
            for k in 0..len {
                let v = g.add_vertex(format!("L{}_{}", l + 1, k + 1), Some(-2), 1);
                g.add_edge(prev, v);
                prev = v;
            }
        }
        g
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v.label == label)
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .edges
            .iter()
            .filter_map(|&(a, b)| {
                if a == v {
                    Some(b)
                } else if b == v {
                    Some(a)
                } else {
                    None
                }
            })
            .collect();
        out.sort_unstable();
        out
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for w in self.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn is_tree(&self) -> bool {
        self.is_connected() && self.edges.len() + 1 == self.vertex_count()
    }

    /// Vertices of valency at least 3.
    pub fn node_count(&self) -> usize {
        (0..self.vertex_count()).filter(|&v| self.degree(v) >= 3).count()
    }

    pub fn multiplicities(&self) -> Vec<u64> {
        self.vertices.iter().map(|v| v.multiplicity).collect()
    }

    pub fn self_intersections(&self) -> Option<Vec<i64>> {
        self.vertices.iter().map(|v| v.self_intersection).collect()
    }

    /// `(E_i · E_j)`: self-intersections on the diagonal, edge counts off it.
    pub fn intersection_matrix<T: ExactInt>(&self) -> Result<Matrix<T>> {
        let n = self.vertex_count();
        let mut m = Matrix::zeros(n, n);
        for (i, v) in self.vertices.iter().enumerate() {
            let s = v.self_intersection.ok_or_else(|| {
                Error::StructureViolation(format!("self-intersection of {} is unknown", v.label))
            })?;
            m.set(i, i, lift(s));
        }
        for &(a, b) in &self.edges {
            m.set(a, b, m.get(a, b) + T::one());
            m.set(b, a, m.get(b, a) + T::one());
        }
        Ok(m)
    }

    fn describe(&self, v: usize) -> String {
        let vx = &self.vertices[v];
        let s = vx
            .self_intersection
            .map_or_else(|| "?".to_string(), |s| s.to_string());
        format!("{} [m={}, s={}]", vx.label, vx.multiplicity, s)
    }

    /// Graphviz rendering with vertices in index order.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = String::new();
        writeln!(out, "graph {name} {{").unwrap();
        for v in 0..self.vertex_count() {
            writeln!(out, "  v{v} [label=\"{}\"];", self.describe(v)).unwrap();
        }
        let mut edges = self.edges.clone();
        edges.sort_unstable();
        for (a, b) in edges {
            writeln!(out, "  v{a} -- v{b};").unwrap();
        }
        out.push_str("}\n");
        out
    }

    /// Plain-text adjacency listing, one vertex per line.
    pub fn adjacency_table(&self) -> String {
        let mut out = String::new();
        for v in 0..self.vertex_count() {
            let nbrs: Vec<&str> = self
                .neighbors(v)
                .into_iter()
                .map(|w| self.vertices[w].label.as_str())
                .collect();
            writeln!(out, "{:<24} {}", self.describe(v), nbrs.join(" ")).unwrap();
        }
        out
    }
}

impl Default for DualGraph {
    fn default() -> Self {
        Self::new()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shapes() {
        let c = DualGraph::chain(&[3, 2, 2]);
        assert!(c.is_tree());
        assert_eq!(c.node_count(), 0);
        let s = DualGraph::star(2, &[1, 1, 1]);
        assert_eq!(s.node_count(), 1);
        assert_eq!(s.vertex_count(), 4);
        let m: Matrix<i64> = c.intersection_matrix().unwrap();
        assert_eq!(m.row(0), &[-3, 1, 0]);
    }

    #[test]
    fn dot_output() {
        let c = DualGraph::chain(&[2, 3]);
        let dot = c.to_dot("chain");
        assert_eq!(
            dot,
            "graph chain {\n  v0 [label=\"E1 [m=1, s=-2]\"];\n  v1 [label=\"E2 [m=1, s=-3]\"];\n  v0 -- v1;\n}\n"
        );
        assert!(c.adjacency_table().lines().next().unwrap().ends_with("E2"));
    }
}
