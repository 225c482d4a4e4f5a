//! The singular fiber of the fibration `S -> P¹` over the image of `∞`.

use super::DualGraph;
use crate::error::{Error, Result};
use crate::gf::prime_power;

/// The tree of `q² + 4` rational curves with multiplicities; self
/// intersections are left for [`solve_self_intersections`].
///
/// Layout: a chain `E1 .. E(q-1)` of multiplicities `1 .. q-1` ending at
/// `F1`; `F0` of multiplicity 1 on `F1`; the spine `F1 - F2 - F3 - F4` of
/// multiplicity `q`; and `q` strings of length `q - 1` on `F4` whose
/// multiplicities drop from `q - 1` to `1`.
pub fn build_fiber_graph(q: u64) -> Result<DualGraph> {
    prime_power(q).ok_or(Error::NotPrimePower(q))?;
    let mut g = DualGraph::new();
    let e: Vec<usize> = (1..q).map(|i| g.add_vertex(format!("E{i}"), None, i)).collect();
    for w in e.windows(2) {
        g.add_edge(w[0], w[1]);
    }
    let f0 = g.add_vertex("F0", None, 1);
    let spine: Vec<usize> = (1..=4).map(|i| g.add_vertex(format!("F{i}"), None, q)).collect();
    g.add_edge(*e.last().expect("q >= 2"), spine[0]);
    g.add_edge(f0, spine[0]);
    for w in spine.windows(2) {
        g.add_edge(w[0], w[1]);
    }
    for j in 1..=q {
        let mut prev = spine[3];
        for k in 1..q {
            let v = g.add_vertex(format!("S{j}_{k}"), None, q - k);
            g.add_edge(prev, v);
            prev = v;
        }
    }
    Ok(g)
}

/// Self-intersections forced by `(Σ m_j E_j) · E_i = 0`.
pub fn solve_self_intersections(graph: &DualGraph) -> Result<DualGraph> {
    if !graph.is_tree() {
        return Err(Error::StructureViolation("fiber graph is not a tree".into()));
    }
    let mut out = graph.clone();
    for v in 0..graph.vertex_count() {
        let mult = graph.vertices[v].multiplicity as i64;
        if mult <= 0 {
            return Err(Error::StructureViolation("multiplicities must be positive".into()));
        }
        let around: i64 = graph
            .neighbors(v)
            .into_iter()
            .map(|w| graph.vertices[w].multiplicity as i64)
            .sum();
        if around % mult != 0 {
            return Err(Error::NonIntegralSelfIntersection(format!(
                "{}: -{around}/{mult}",
                graph.vertices[v].label
            )));
        }
        out.vertices[v].self_intersection = Some(-around / mult);
    }
    Ok(out)
}

/// Euler number of a tree of rational curves: `2 · #vertices - #edges`.
pub fn fiber_euler_number(graph: &DualGraph) -> i64 {
    2 * graph.vertex_count() as i64 - graph.edges.len() as i64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q2_is_i3_star() {
        let g = solve_self_intersections(&build_fiber_graph(2).unwrap()).unwrap();
        assert_eq!(g.multiplicities(), vec![1, 1, 2, 2, 2, 2, 1, 1]);
        assert_eq!(g.self_intersections().unwrap(), vec![-2; 8]);
        assert_eq!(fiber_euler_number(&g), 9);
    }

    #[test]
    fn q3_self_intersections() {
        let g = solve_self_intersections(&build_fiber_graph(3).unwrap()).unwrap();
        assert_eq!(g.vertex_count(), 13);
        for v in &g.vertices {
            let expected = if v.label == "F0" || v.label == "F4" { -3 } else { -2 };
            assert_eq!(v.self_intersection, Some(expected), "{}", v.label);
        }
    }

    #[test]
    fn nodes() {
        let g = build_fiber_graph(5).unwrap();
        assert_eq!(g.vertex_count(), 29);
        assert_eq!(g.node_count(), 2);
        assert_eq!(g.degree(g.index_of("F4").unwrap()), 6);
        assert_eq!(g.degree(g.index_of("F1").unwrap()), 3);
    }

    #[test]
    fn rejects_non_fibers() {
        let mut g = DualGraph::new();
        let a = g.add_vertex("A", None, 1);
        let b = g.add_vertex("B", None, 2);
        g.add_edge(a, b);
        assert!(matches!(
            solve_self_intersections(&g),
            Err(Error::NonIntegralSelfIntersection(_))
        ));
        assert!(build_fiber_graph(6).is_err());
    }

    #[test]
    fn multiplicity_vector_is_null() {
        for q in [2u64, 3, 4, 7] {
            let g = solve_self_intersections(&build_fiber_graph(q).unwrap()).unwrap();
            let a = g.intersection_matrix::<i64>().unwrap();
            let m: Vec<i64> = g.multiplicities().iter().map(|&x| x as i64).collect();
            assert!(a.mul_vec(&m).iter().all(|&x| x == 0));
        }
    }
}
