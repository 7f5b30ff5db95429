//! Graphs with thresholds, the instance file format and random generators.

mod format;
mod generate;

pub use format::{parse_instance, parse_instance_with, write_instance, ParseOptions};
pub use generate::{gen_random, GraphModel, ThresholdModel};

use crate::error::{GraphError, Result, TssError};
use crate::vertex_set::VertexSet;

/// A simple undirected graph on `0..n` with sorted adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    m: usize,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            m: 0,
        }
    }

    /// Builds a graph, rejecting self-loops, duplicates and out-of-range ids.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v).expect("fresh edge");
            }
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        Graph::from_edges(n, &edges).expect("path edges are simple")
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Graph::path(n);
        if n >= 3 {
            g.add_edge(n - 1, 0).expect("closing edge is fresh");
        }
        g
    }

    pub fn star(leaves: usize) -> Self {
        let edges: Vec<_> = (1..=leaves).map(|v| (0, v)).collect();
        Graph::from_edges(leaves + 1, &edges).expect("star edges are simple")
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        let n = self.n();
        for w in [u, v] {
            if w >= n {
                return Err(GraphError::VertexOutOfRange { vertex: w, n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        match self.adj[u].binary_search(&v) {
            Ok(_) => Err(GraphError::DuplicateEdge(u.min(v), u.max(v))),
            Err(pos) => {
                self.adj[u].insert(pos, v);
                let pos = self.adj[v].binary_search(&u).unwrap_err();
                self.adj[v].insert(pos, u);
                self.m += 1;
                Ok(())
            }
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, ascending.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    /// `deg_F(v)`: neighbours of `v` inside `within`.
    pub fn degree_in(&self, v: usize, within: &VertexSet) -> usize {
        within.count_in(&self.adj[v])
    }

    /// The induced subgraph on `keep`, with vertices renumbered in ascending
    /// order. The second component maps new ids back to old ones.
    pub fn induced_subgraph(&self, keep: &VertexSet) -> (Graph, Vec<usize>) {
        let old_ids: Vec<usize> = keep.iter().collect();
        let mut new_id = vec![usize::MAX; self.n()];
        for (i, &v) in old_ids.iter().enumerate() {
            new_id[v] = i;
        }
        let mut g = Graph::empty(old_ids.len());
        for (i, &v) in old_ids.iter().enumerate() {
            g.adj[i] = self.adj[v]
                .iter()
                .filter(|&&u| new_id[u] != usize::MAX)
                .map(|&u| new_id[u])
                .collect();
        }
        g.m = g.adj.iter().map(Vec::len).sum::<usize>() / 2;
        (g, old_ids)
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let v = comp[i];
                i += 1;
                for &u in &self.adj[v] {
                    if !seen[u] {
                        seen[u] = true;
                        comp.push(u);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n() == 0 || self.components().len() == 1
    }
}

/// Per-vertex activation thresholds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Thresholds(Vec<usize>);

impl Thresholds {
    pub fn new(values: Vec<usize>) -> Self {
        Thresholds(values)
    }

    pub fn constant(n: usize, t: usize) -> Self {
        Thresholds(vec![t; n])
    }

    #[inline]
    pub fn get(&self, v: usize) -> usize {
        self.0[v]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max(&self) -> usize {
        self.0.iter().copied().max().unwrap_or(0)
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }
}

/// The `(k, ℓ)` part of a decision query: at most `k` seeds, at least `l`
/// activated vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Query {
    pub k: usize,
    pub l: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub graph: Graph,
    pub thresholds: Thresholds,
    pub query: Option<Query>,
}

impl Instance {
    pub fn new(graph: Graph, thresholds: Thresholds) -> Result<Self> {
        if graph.n() != thresholds.len() {
            return Err(TssError::ThresholdLength {
                expected: graph.n(),
                got: thresholds.len(),
            });
        }
        Ok(Instance {
            graph,
            thresholds,
            query: None,
        })
    }

    pub fn with_query(mut self, k: usize, l: usize) -> Result<Self> {
        let n = self.n();
        if k > n || l > n {
            return Err(TssError::Precondition(format!(
                "query (k={k}, l={l}) out of range for n={n}"
            )));
        }
        self.query = Some(Query { k, l });
        Ok(self)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.graph.n()
    }

    #[inline]
    pub fn thr(&self, v: usize) -> usize {
        self.thresholds.get(v)
    }

    pub fn max_threshold(&self) -> usize {
        self.thresholds.max()
    }

    /// True if `thr(v) <= ⌈deg(v)/3⌉` for every vertex.
    pub fn satisfies_third_ratio(&self) -> bool {
        (0..self.n()).all(|v| self.thr(v) <= self.graph.degree(v).div_ceil(3))
    }

    /// Largest dual threshold `deg(v) - thr(v)`, or `None` for an empty graph.
    pub fn max_dual(&self) -> Option<i64> {
        (0..self.n())
            .map(|v| self.graph.degree(v) as i64 - self.thr(v) as i64)
            .max()
    }

    /// Sub-instance induced on `keep` with thresholds copied as-is.
    pub fn induced(&self, keep: &VertexSet) -> (Instance, Vec<usize>) {
        let (graph, map) = self.graph.induced_subgraph(keep);
        let thresholds = Thresholds::new(map.iter().map(|&v| self.thr(v)).collect());
        (
            Instance {
                graph,
                thresholds,
                query: None,
            },
            map,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_edges() {
        assert_eq!(Graph::from_edges(2, &[(0, 0)]), Err(GraphError::SelfLoop(0)));
        assert_eq!(
            Graph::from_edges(2, &[(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge(0, 1))
        );
        assert!(matches!(
            Graph::from_edges(2, &[(0, 2)]),
            Err(GraphError::VertexOutOfRange { vertex: 2, n: 2 })
        ));
    }

    #[test]
    fn adjacency_is_sorted_and_symmetric() {
        let g = Graph::from_edges(4, &[(3, 0), (0, 2), (1, 0)]).unwrap();
        assert_eq!(g.neighbors(0), &[1, 2, 3]);
        for (u, v) in g.edges() {
            assert!(g.has_edge(v, u));
        }
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (0, 2), (0, 3)]);
    }

    #[test]
    fn induced_and_components() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (3, 4)]).unwrap();
        assert_eq!(g.components(), vec![vec![0, 1, 2], vec![3, 4]]);
        let (h, map) = g.induced_subgraph(&VertexSet::from_slice(5, &[1, 2, 4]));
        assert_eq!(map, vec![1, 2, 4]);
        assert_eq!(h.m(), 1);
        assert!(h.has_edge(0, 1));
    }

    #[test]
    fn ratio_and_dual() {
        let inst = Instance::new(Graph::star(3), Thresholds::new(vec![1, 1, 1, 1])).unwrap();
        assert!(inst.satisfies_third_ratio());
        assert_eq!(inst.max_dual(), Some(2));
        let inst = Instance::new(Graph::star(3), Thresholds::new(vec![2, 1, 1, 1])).unwrap();
        assert!(!inst.satisfies_third_ratio());
    }
}
