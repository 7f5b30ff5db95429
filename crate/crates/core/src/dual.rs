//! Perfect target sets under bounded dual thresholds `deg(v) − thr(v)`.
//!
//! `X` is perfect exactly when `V \ X` can be emptied by repeatedly deleting
//! a vertex with at most `dual(v)` remaining neighbours: deleting a vertex
//! is the moment it becomes active. So a minimum perfect target set is the
//! complement of a maximum peelable set.

use crate::error::{precondition, Result};
use crate::instance::{Graph, Instance};
use crate::vertex_set::VertexSet;

/// Per-vertex dual thresholds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualView {
    pub dual: Vec<i64>,
}

impl DualView {
    pub fn new(inst: &Instance) -> Self {
        DualView {
            dual: (0..inst.n())
                .map(|v| inst.graph.degree(v) as i64 - inst.thr(v) as i64)
                .collect(),
        }
    }

    pub fn constant(n: usize, d: usize) -> Self {
        DualView { dual: vec![d as i64; n] }
    }

    pub fn max(&self) -> Option<i64> {
        self.dual.iter().copied().max()
    }
}

/// Peels `within` as far as it goes; returns what cannot be deleted.
pub fn peel_core(g: &Graph, dual: &DualView, within: &VertexSet) -> VertexSet {
    let mut alive = within.clone();
    let mut deg: Vec<i64> = (0..g.n()).map(|v| g.degree_in(v, within) as i64).collect();
    let mut stack: Vec<usize> = within.iter().filter(|&v| deg[v] <= dual.dual[v]).collect();
    while let Some(v) = stack.pop() {
        if !alive.contains(v) {
            continue;
        }
        alive.remove(v);
        for &u in g.neighbors(v) {
            if alive.contains(u) {
                deg[u] -= 1;
                if deg[u] == dual.dual[u] {
                    stack.push(u);
                }
            }
        }
    }
    alive
}

pub fn is_peelable(g: &Graph, dual: &DualView, within: &VertexSet) -> bool {
    peel_core(g, dual, within).is_empty()
}

/// Every vertex can be deleted in turn while having at most `d` neighbours
/// left.
pub fn is_d_degenerate(g: &Graph, d: usize) -> bool {
    is_peelable(g, &DualView::constant(g.n(), d), &VertexSet::full(g.n()))
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct DualStats {
    pub nodes: u64,
    pub forced: u64,
}

#[derive(Debug, Clone)]
pub struct DualOutcome {
    pub set: VertexSet,
    pub stats: DualStats,
}

/// Minimum perfect target set when every dual threshold is at most `d`.
pub fn solve_dual_perfect(inst: &Instance, d: usize) -> Result<VertexSet> {
    Ok(solve_dual_with_stats(inst, d)?.set)
}

pub fn solve_dual_with_stats(inst: &Instance, d: usize) -> Result<DualOutcome> {
    let view = DualView::new(inst);
    if let Some(v) = (0..inst.n()).find(|&v| view.dual[v] > d as i64) {
        return precondition(format!("vertex {} has dual threshold {} above d={d}", v + 1, view.dual[v]));
    }
    let n = inst.n();
    let mut stats = DualStats::default();
    // Negative duals never peel, so those vertices are always seeds.
    let mut open = VertexSet::new(n);
    for v in 0..n {
        if view.dual[v] < 0 {
            stats.forced += 1;
        } else {
            open.insert(v);
        }
    }
    let mut search = Search {
        g: &inst.graph,
        dual: &view,
        best: VertexSet::new(n),
        stats,
    };
    search.branch(VertexSet::new(n), open);
    let set = search.best.complement();
    Ok(DualOutcome {
        set,
        stats: search.stats,
    })
}

struct Search<'a> {
    g: &'a Graph,
    dual: &'a DualView,
    /// Largest peelable set found so far.
    best: VertexSet,
    stats: DualStats,
}

impl Search<'_> {
    /// `kept` must stay in the peelable set, `open` is undecided.
    fn branch(&mut self, kept: VertexSet, open: VertexSet) {
        self.stats.nodes += 1;
        if kept.len() + open.len() <= self.best.len() {
            return;
        }
        let all = kept.union(&open);
        let core = peel_core(self.g, self.dual, &all);
        if core.is_empty() {
            // Subsets of peelable sets are peelable, so nothing larger exists
            // below this node.
            self.best = all;
            return;
        }
        // A peelable subset must drop some core vertex; branch on the open
        // core vertex with the most core neighbours.
        let pick = core
            .iter()
            .filter(|&v| open.contains(v))
            .map(|v| (v, self.g.degree_in(v, &core)))
            .max_by(|a, b| a.1.cmp(&b.1).then(b.0.cmp(&a.0)));
        let Some((v, _)) = pick else { return };
        let mut rest = open;
        rest.remove(v);
        self.branch(kept.clone(), rest.clone());
        let mut with = kept;
        with.insert(v);
        if is_peelable(self.g, self.dual, &with) {
            self.branch(with, rest);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::activation::is_perfect_target_set;
    use crate::instance::Thresholds;
    use crate::oracle::{oracle_max_d_degenerate, oracle_min_perfect_tss};

    fn inst(g: Graph, thr: &[usize]) -> Instance {
        Instance::new(g, Thresholds::new(thr.to_vec())).unwrap()
    }

    #[test]
    fn degeneracy_examples() {
        assert!(is_d_degenerate(&Graph::star(4), 1));
        assert!(is_d_degenerate(&Graph::path(6), 1));
        assert!(!is_d_degenerate(&Graph::cycle(4), 1));
        assert!(is_d_degenerate(&Graph::cycle(4), 2));
        assert!(is_d_degenerate(&Graph::empty(0), 0));
        assert!(is_d_degenerate(&Graph::empty(3), 0));
        assert!(!is_d_degenerate(&Graph::complete(4), 2));
    }

    #[test]
    fn star_with_full_centre() {
        let s = inst(Graph::star(3), &[3, 1, 1, 1]);
        assert_eq!(solve_dual_perfect(&s, 0).unwrap().to_vec(), vec![0]);
    }

    #[test]
    fn triangle() {
        let k3 = inst(Graph::complete(3), &[2; 3]);
        let x = solve_dual_perfect(&k3, 0).unwrap();
        assert_eq!(x.len(), 2);
        assert!(is_perfect_target_set(&k3, &x));
    }

    #[test]
    fn full_thresholds_leave_an_independent_set() {
        let g = Graph::cycle(5);
        let thr: Vec<usize> = (0..5).map(|v| g.degree(v)).collect();
        let c5 = inst(g.clone(), &thr);
        let x = solve_dual_perfect(&c5, 0).unwrap();
        assert_eq!(5 - x.len(), oracle_max_d_degenerate(&g, 0).unwrap().len());
        assert_eq!(x.len(), 3);
    }

    #[test]
    fn thresholds_above_degree_are_forced() {
        let p = inst(Graph::path(3), &[2, 1, 0]);
        let out = solve_dual_with_stats(&p, 1).unwrap();
        assert_eq!(out.stats.forced, 1);
        assert!(out.set.contains(0));
        assert_eq!(out.set.len(), oracle_min_perfect_tss(&p).unwrap().len());
    }

    #[test]
    fn precondition() {
        assert!(solve_dual_perfect(&inst(Graph::star(3), &[0, 1, 1, 1]), 2).is_err());
    }
}
