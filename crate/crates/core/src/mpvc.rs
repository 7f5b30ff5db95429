//! Enumeration of minimal partial vertex covers in graphs of bounded degree.
//!
//! A set `S` is a `T`-partial vertex cover when the edges it touches are
//! exactly `T`; it is minimal when no vertex can be dropped without losing a
//! touched edge. Equivalently every `v ∈ S` has a neighbour outside `S`.

use std::collections::HashSet;
use std::ops::ControlFlow;

use crate::error::{precondition, Result};
use crate::instance::Graph;
use crate::vertex_set::VertexSet;

/// Edges `(u, v)`, `u < v`, with at least one endpoint in `s`.
pub fn covered_edges(g: &Graph, s: &VertexSet) -> Vec<(usize, usize)> {
    g.edges()
        .filter(|&(u, v)| s.contains(u) || s.contains(v))
        .collect()
}

/// Dropping `v` from `s` loses an edge iff `v` has a neighbour outside `s`.
pub fn is_minimal_pvc(g: &Graph, s: &VertexSet) -> bool {
    s.iter()
        .all(|v| g.neighbors(v).iter().any(|&u| !s.contains(u)))
}

/// The `(F, A, Z)` split the enumerator recurses on: `A` is forced into the
/// cover, `Z` forced out, `F` still free.
#[derive(Debug, Clone)]
pub struct MpvcState {
    pub free: VertexSet,
    pub chosen: VertexSet,
    pub excluded: VertexSet,
}

impl MpvcState {
    fn root(n: usize) -> Self {
        MpvcState {
            free: VertexSet::full(n),
            chosen: VertexSet::new(n),
            excluded: VertexSet::new(n),
        }
    }

    fn is_partition(&self) -> bool {
        let n = self.free.universe();
        self.free.is_disjoint(&self.chosen)
            && self.free.is_disjoint(&self.excluded)
            && self.chosen.is_disjoint(&self.excluded)
            && self.free.len() + self.chosen.len() + self.excluded.len() == n
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct MpvcStats {
    /// Applications of the closed-neighbourhood branching.
    pub branchings: u64,
    /// Recursion leaves, i.e. brute-force invocations.
    pub leaves: u64,
    pub emitted: u64,
}

/// Streams every minimal partial vertex cover of `g` exactly once to `visit`.
///
/// While some free `v` has its whole closed neighbourhood free, branch over
/// every proper subset `R ⊊ N[v]` (`R` into the cover, the rest out). When no
/// such `v` remains, try every subset of the free vertices and keep the
/// minimal ones. Requires `Δ(g) < t`. Returning `Break` from `visit` stops
/// the enumeration.
pub fn enum_minimal_pvcs(
    g: &Graph,
    t: usize,
    mut visit: impl FnMut(&VertexSet) -> ControlFlow<()>,
) -> Result<MpvcStats> {
    if g.max_degree() >= t {
        return precondition(format!(
            "maximum degree {} is not below t={t}",
            g.max_degree()
        ));
    }
    let mut stats = MpvcStats::default();
    // Branches partition the A/Z assignments, so duplicates are impossible;
    // cross-check that on small inputs.
    let mut seen: Option<HashSet<VertexSet>> = (cfg!(debug_assertions) && g.n() <= 16).then(HashSet::new);
    let mut emit = |s: &VertexSet| {
        if let Some(seen) = seen.as_mut() {
            assert!(seen.insert(s.clone()), "duplicate cover {s:?}");
        }
        visit(s)
    };
    let _ = recurse(g, MpvcState::root(g.n()), &mut stats, &mut emit);
    Ok(stats)
}

/// Collects the stream into a vector (in emission order).
pub fn collect_minimal_pvcs(g: &Graph, t: usize) -> Result<Vec<VertexSet>> {
    let mut out = Vec::new();
    enum_minimal_pvcs(g, t, |s| {
        out.push(s.clone());
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

fn recurse(
    g: &Graph,
    state: MpvcState,
    stats: &mut MpvcStats,
    emit: &mut impl FnMut(&VertexSet) -> ControlFlow<()>,
) -> ControlFlow<()> {
    debug_assert!(state.is_partition());
    let pivot = state
        .free
        .iter()
        .find(|&v| g.neighbors(v).iter().all(|&u| state.free.contains(u)));

    if let Some(v) = pivot {
        stats.branchings += 1;
        let mut closed: Vec<usize> = g.neighbors(v).to_vec();
        closed.push(v);
        let full = (1u64 << closed.len()) - 1;
        for mask in 0..full {
            let mut next = state.clone();
            for (i, &w) in closed.iter().enumerate() {
                next.free.remove(w);
                if mask >> i & 1 == 1 {
                    next.chosen.insert(w);
                } else {
                    next.excluded.insert(w);
                }
            }
            recurse(g, next, stats, emit)?;
        }
        return ControlFlow::Continue(());
    }

    stats.leaves += 1;
    let free: Vec<usize> = state.free.to_vec();
    assert!(free.len() < 64, "brute-force leaf over {} free vertices", free.len());
    for mask in 0u64..1 << free.len() {
        let mut s = state.chosen.clone();
        for (i, &w) in free.iter().enumerate() {
            if mask >> i & 1 == 1 {
                s.insert(w);
            }
        }
        if is_minimal_pvc(g, &s) {
            stats.emitted += 1;
            emit(&s)?;
        }
    }
    ControlFlow::Continue(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn as_set(list: Vec<VertexSet>) -> BTreeSet<Vec<usize>> {
        list.into_iter().map(|s| s.to_vec()).collect()
    }

    #[test]
    fn covered_edges_by_definition() {
        let p3 = Graph::path(3);
        assert_eq!(covered_edges(&p3, &VertexSet::from_slice(3, &[1])), vec![(0, 1), (1, 2)]);
        assert!(covered_edges(&p3, &VertexSet::new(3)).is_empty());
        assert_eq!(covered_edges(&p3, &VertexSet::full(3)).len(), 2);
    }

    #[test]
    fn minimality() {
        let p3 = Graph::path(3);
        assert!(is_minimal_pvc(&p3, &VertexSet::from_slice(3, &[0, 2])));
        assert!(!is_minimal_pvc(&p3, &VertexSet::from_slice(3, &[0, 1])));
        assert!(is_minimal_pvc(&p3, &VertexSet::new(3)));
        // an isolated vertex covers nothing and is always removable
        assert!(!is_minimal_pvc(&Graph::empty(2), &VertexSet::from_slice(2, &[0])));
    }

    #[test]
    fn single_edge() {
        let got = as_set(collect_minimal_pvcs(&Graph::path(2), 2).unwrap());
        assert_eq!(got, [vec![], vec![0], vec![1]].into_iter().collect());
    }

    #[test]
    fn path_of_three() {
        let got = collect_minimal_pvcs(&Graph::path(3), 3).unwrap();
        assert_eq!(got.len(), 5);
        assert_eq!(
            as_set(got),
            [vec![], vec![0], vec![1], vec![2], vec![0, 2]].into_iter().collect()
        );
    }

    #[test]
    fn edgeless() {
        for t in 1..4 {
            let got = collect_minimal_pvcs(&Graph::empty(4), t).unwrap();
            assert_eq!(got, vec![VertexSet::new(4)]);
        }
    }

    #[test]
    fn degree_precondition() {
        assert!(enum_minimal_pvcs(&Graph::path(3), 2, |_| ControlFlow::Continue(())).is_err());
    }

    #[test]
    fn branching_consumes_closed_neighbourhoods() {
        // two disjoint edges: both pivots branch, leaves have nothing free
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        let mut count = 0;
        let stats = enum_minimal_pvcs(&g, 2, |_| {
            count += 1;
            ControlFlow::Continue(())
        })
        .unwrap();
        assert_eq!(stats.branchings, 1 + 3);
        assert_eq!(stats.leaves, 9);
        assert_eq!(count, 9);
    }

    #[test]
    fn early_exit() {
        let mut count = 0;
        enum_minimal_pvcs(&Graph::path(3), 3, |_| {
            count += 1;
            if count == 2 {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        })
        .unwrap();
        assert_eq!(count, 2);
    }
}
