//! Clique to Target Set Selection with every threshold equal to 2.
//!
//! The new graph is the incidence graph of `g`: one vertex per vertex of
//! `g`, one per edge, joined when incident. A `k`-clique activates its `k`
//! vertices plus the `C(k, 2)` edges between them.

use crate::error::{precondition, Result};
use crate::instance::{Graph, Instance, Thresholds};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Origin {
    Vertex(usize),
    Edge(usize, usize),
}

#[derive(Debug, Clone)]
pub struct ReductionOutput {
    /// Incidence graph with `thr ≡ 2`; carries no query since `l` may exceed
    /// its vertex count.
    pub instance: Instance,
    pub k: usize,
    pub l: usize,
    pub origin: Vec<Origin>,
}

/// Vertices of `g` keep their ids; edge `(u, v)`, `u < v`, in ascending
/// order, follows at `n + index`.
pub fn reduce_clique_to_tss(g: &Graph, k: usize) -> Result<ReductionOutput> {
    if k == 0 {
        return precondition("clique size must be at least 1");
    }
    let n = g.n();
    let mut origin: Vec<Origin> = (0..n).map(Origin::Vertex).collect();
    let mut edges = Vec::with_capacity(2 * g.m());
    for (i, (u, v)) in g.edges().enumerate() {
        origin.push(Origin::Edge(u, v));
        edges.push((u, n + i));
        edges.push((v, n + i));
    }
    let total = origin.len();
    let graph = Graph::from_edges(total, &edges)?;
    Ok(ReductionOutput {
        instance: Instance::new(graph, Thresholds::constant(total, 2))?,
        k,
        l: k + k * (k - 1) / 2,
        origin,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::activation::activate;
    use crate::oracle::{oracle_has_clique, oracle_tss_decision};
    use crate::vertex_set::VertexSet;

    #[test]
    fn triangle() {
        let out = reduce_clique_to_tss(&Graph::complete(3), 3).unwrap();
        assert_eq!(out.instance.n(), 6);
        assert_eq!(out.l, 6);
        let trace = activate(&out.instance, &VertexSet::from_slice(6, &[0, 1, 2]));
        assert_eq!(trace.activated_count(), 6);
        assert!(oracle_tss_decision(&out.instance, 3, 6).unwrap().is_some());
        assert_eq!(out.origin[3], Origin::Edge(0, 1));
        assert_eq!(out.origin[5], Origin::Edge(1, 2));
    }

    #[test]
    fn path_has_no_triangle() {
        let g = Graph::path(3);
        let out = reduce_clique_to_tss(&g, 3).unwrap();
        assert_eq!(out.instance.n(), 5);
        assert_eq!(out.l, 6);
        assert!(oracle_tss_decision(&out.instance, 3, 6).unwrap().is_none());
        assert!(!oracle_has_clique(&g, 3).unwrap());
    }

    #[test]
    fn single_vertex_clique() {
        for n in 0..3 {
            let out = reduce_clique_to_tss(&Graph::complete(n), 1).unwrap();
            assert_eq!(out.l, 1);
            assert_eq!(oracle_tss_decision(&out.instance, 1, 1).unwrap().is_some(), n >= 1);
        }
        assert!(reduce_clique_to_tss(&Graph::path(2), 0).is_err());
    }

    #[test]
    fn bipartite_with_constant_thresholds() {
        let g = Graph::cycle(5);
        let out = reduce_clique_to_tss(&g, 2).unwrap();
        let inst = &out.instance;
        assert_eq!(inst.n(), 10);
        assert_eq!(inst.graph.m(), 10);
        for (u, v) in inst.graph.edges() {
            assert!(u < 5 && v >= 5);
        }
        assert!((0..10).all(|v| inst.thr(v) == 2));
    }
}
