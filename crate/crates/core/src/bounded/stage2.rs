//! Stage II: describe the activation process of `A ⊔ B` without knowing the
//! hidden part `B ⊆ F` of the target set.
//!
//! Every branch fixes a minimal partial vertex cover `C` of `G[F]` covering
//! the same `F`-edges as `B` (so `C ⊆ B`), and then builds rounds
//! `P_0 = A ⊔ C ⊆ P_1 ⊆ …` with `P_i \ B = S_i(A ⊔ B) \ B`. Whenever a round
//! step depends on `B`, the branch splits on the missing fact: `dg(v)`
//! for a `Z`-vertex, or membership in `B` for one of its `F`-neighbours.

use std::ops::ControlFlow;

use super::BoundedStats;
use crate::error::Result;
use crate::instance::Instance;
use crate::mpvc::enum_minimal_pvcs;
use crate::vertex_set::VertexSet;

/// The `(A, Z, F)` tri-partition of the branching solvers: `chosen` is
/// known to be in the target set, `excluded` known to be out, `free` open.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchState {
    pub chosen: VertexSet,
    pub excluded: VertexSet,
    pub free: VertexSet,
}

impl SearchState {
    pub fn root(n: usize) -> Self {
        SearchState {
            chosen: VertexSet::new(n),
            excluded: VertexSet::new(n),
            free: VertexSet::full(n),
        }
    }

    pub fn is_partition(&self) -> bool {
        let n = self.free.universe();
        self.chosen.is_disjoint(&self.excluded)
            && self.chosen.is_disjoint(&self.free)
            && self.excluded.is_disjoint(&self.free)
            && self.chosen.len() + self.excluded.len() + self.free.len() == n
    }

    /// Moves `v` from `free` to `chosen`.
    pub fn choose(&mut self, v: usize) {
        debug_assert!(self.free.contains(v));
        self.free.remove(v);
        self.chosen.insert(v);
    }

    /// Moves `v` from `free` to `excluded`.
    pub fn exclude(&mut self, v: usize) {
        debug_assert!(self.free.contains(v));
        self.free.remove(v);
        self.excluded.insert(v);
    }
}

/// Facts about the hidden set `B` fixed along one Stage-II branch. Once set,
/// an entry never changes in that branch or its descendants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decisions {
    /// `dg(v) = min(|N(v) ∩ B|, thr(v))` for `Z`-vertices that needed it.
    pub dg: Vec<Option<usize>>,
    /// `F`-vertices known to be in `B` (always includes the cover `C`).
    pub in_b: VertexSet,
    /// `F`-vertices known to be outside `B`.
    pub out_b: VertexSet,
}

impl Decisions {
    pub fn with_cover(n: usize, cover: &VertexSet) -> Self {
        Decisions {
            dg: vec![None; n],
            in_b: cover.clone(),
            out_b: VertexSet::new(n),
        }
    }
}

/// A fully described Stage-II branch, handed to the Stage-III program.
#[derive(Debug, Clone)]
pub struct BranchLeaf {
    pub state: SearchState,
    pub cover: VertexSet,
    pub decisions: Decisions,
    /// `P`, the final round of the described process.
    pub activated: VertexSet,
}

impl BranchLeaf {
    /// True if `b` agrees with every fact of this branch: `C ⊆ B ⊆ F`,
    /// `B` touches the same `F`-edges as `C`, the membership decisions and
    /// the `dg` values.
    pub fn is_consistent_with(&self, inst: &Instance, b: &VertexSet) -> bool {
        let g = &inst.graph;
        let f = &self.state.free;
        if !b.is_subset(f) || !self.cover.is_subset(b) {
            return false;
        }
        if !self.decisions.in_b.is_subset(b) || !b.is_disjoint(&self.decisions.out_b) {
            return false;
        }
        let same_cover = g.edges().filter(|&(u, v)| f.contains(u) && f.contains(v)).all(|(u, v)| {
            (b.contains(u) || b.contains(v)) == (self.cover.contains(u) || self.cover.contains(v))
        });
        same_cover
            && self.decisions.dg.iter().enumerate().all(|(v, dg)| match dg {
                Some(dg) => b.count_in(g.neighbors(v)).min(inst.thr(v)) == *dg,
                None => true,
            })
    }
}

/// One round step for a vertex `v ∉ P_i`: every sub-branch the step opens,
/// with its extended decisions and whether `v` joins `P_{i+1}`.
///
/// `F`-vertices never branch: they join iff `|N(v) ∩ P_i| ≥ thr(v)`. For a
/// `Z`-vertex below threshold the step fixes `dg(v)` (unless already fixed)
/// and the `B`-membership of its undecided neighbours in `P_i ∩ F`, then
/// compares `|N(v) ∩ (P_i \ F)| + dg(v) + |(N(v) ∩ P_i ∩ F) \ B|` with
/// `thr(v)`. Sub-branches that already contradict a fixed `dg` are dropped.
pub fn is_activated_round(
    inst: &Instance,
    state: &SearchState,
    p_i: &VertexSet,
    v: usize,
    ctx: &Decisions,
) -> Vec<(Decisions, bool)> {
    let mut stats = BoundedStats::default();
    let out_of_cover = VertexSet::new(inst.n());
    step(inst, state, p_i, v, ctx, &out_of_cover, &mut stats)
}

fn step(
    inst: &Instance,
    state: &SearchState,
    p_i: &VertexSet,
    v: usize,
    ctx: &Decisions,
    forced_out: &VertexSet,
    stats: &mut BoundedStats,
) -> Vec<(Decisions, bool)> {
    debug_assert!(!p_i.contains(v));
    let g = &inst.graph;
    let thr = inst.thr(v);
    let nbrs = g.neighbors(v);
    if p_i.count_in(nbrs) >= thr {
        return vec![(ctx.clone(), true)];
    }
    if state.free.contains(v) {
        return vec![(ctx.clone(), false)];
    }
    debug_assert!(state.excluded.contains(v), "vertex {v} must be in Z");

    let settled = nbrs
        .iter()
        .filter(|&&u| p_i.contains(u) && !state.free.contains(u))
        .count();
    let pending: Vec<usize> = nbrs
        .iter()
        .copied()
        .filter(|&u| p_i.contains(u) && state.free.contains(u))
        .collect();

    let dg_values: Vec<usize> = match ctx.dg[v] {
        Some(dg) => vec![dg],
        None => {
            stats.dg_branchings += 1;
            (0..=thr).collect()
        }
    };
    let open: Vec<usize> = pending
        .iter()
        .copied()
        .filter(|&u| !ctx.in_b.contains(u) && !ctx.out_b.contains(u) && !forced_out.contains(u))
        .collect();
    if !open.is_empty() {
        stats.membership_branchings += open.len() as u64;
    }

    let mut out = Vec::new();
    for dg in dg_values {
        for mask in 0u64..1 << open.len() {
            let mut next = ctx.clone();
            next.dg[v] = Some(dg);
            for (i, &u) in open.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    next.in_b.insert(u);
                } else {
                    next.out_b.insert(u);
                }
            }
            for &u in &pending {
                if forced_out.contains(u) && !next.in_b.contains(u) {
                    next.out_b.insert(u);
                }
            }
            if !dg_feasible(inst, state, &next) {
                stats.pruned_branches += 1;
                continue;
            }
            let outside_b = pending.iter().filter(|&&u| !next.in_b.contains(u)).count();
            out.push((next, settled + dg + outside_b >= thr));
        }
    }
    out
}

/// Necessary conditions for fixed `dg` values: the known members of `B`
/// must not already exceed `dg(w)`, and enough non-excluded `F`-neighbours
/// must remain to reach it.
fn dg_feasible(inst: &Instance, state: &SearchState, ctx: &Decisions) -> bool {
    let g = &inst.graph;
    ctx.dg.iter().enumerate().all(|(w, dg)| {
        let Some(dg) = *dg else { return true };
        let nbrs = g.neighbors(w);
        let known = ctx.in_b.count_in(nbrs).min(inst.thr(w));
        let possible = nbrs
            .iter()
            .filter(|&&u| state.free.contains(u) && !ctx.out_b.contains(u))
            .count();
        known <= dg && dg <= possible
    })
}

/// Enumerates the Stage-II leaves of a Stage-I leaf `state`, where
/// `Δ(G[F]) < t`. `budget` drops branches whose known target-set part
/// already exceeds it.
pub fn explore_stage2(
    inst: &Instance,
    state: &SearchState,
    t: usize,
    budget: Option<usize>,
    stats: &mut BoundedStats,
    mut visit: impl FnMut(&BranchLeaf) -> ControlFlow<()>,
) -> Result<ControlFlow<()>> {
    let (sub, map) = inst.graph.induced_subgraph(&state.free);
    let n = inst.n();
    let mut flow = ControlFlow::Continue(());
    let visit_dyn: &mut dyn FnMut(&BranchLeaf) -> ControlFlow<()> = &mut visit;
    enum_minimal_pvcs(&sub, t.max(1), |local| {
        stats.covers += 1;
        let cover: VertexSet = {
            let mut c = VertexSet::new(n);
            for v in local.iter() {
                c.insert(map[v]);
            }
            c
        };
        if budget.is_some_and(|k| state.chosen.len() + cover.len() > k) {
            return ControlFlow::Continue(());
        }
        // F-vertices outside C with an F-neighbour outside C sit on an edge C
        // leaves uncovered, so they cannot be in B either.
        let forced_out: VertexSet = {
            let mut s = VertexSet::new(n);
            for u in state.free.iter().filter(|&u| !cover.contains(u)) {
                let on_bare_edge = inst
                    .graph
                    .neighbors(u)
                    .iter()
                    .any(|&w| state.free.contains(w) && !cover.contains(w));
                if on_bare_edge {
                    s.insert(u);
                }
            }
            s
        };
        let mut explorer = Explorer {
            inst,
            state,
            budget,
            cover: &cover,
            forced_out: &forced_out,
            stats: &mut *stats,
            visit: &mut *visit_dyn,
        };
        let p0 = state.chosen.union(&cover);
        let res = explorer.round(&p0, p0.clone(), 0, Decisions::with_cover(n, &cover));
        if res.is_break() {
            flow = ControlFlow::Break(());
        }
        res
    })?;
    Ok(flow)
}

struct Explorer<'a> {
    inst: &'a Instance,
    state: &'a SearchState,
    budget: Option<usize>,
    cover: &'a VertexSet,
    forced_out: &'a VertexSet,
    stats: &'a mut BoundedStats,
    visit: &'a mut dyn FnMut(&BranchLeaf) -> ControlFlow<()>,
}

impl Explorer<'_> {
    /// Continues building `P_{i+1}` (`next`) from `P_i`, starting at vertex
    /// `cursor`; recurses into the next round once the sweep is complete.
    fn round(
        &mut self,
        p_i: &VertexSet,
        mut next: VertexSet,
        mut cursor: usize,
        mut ctx: Decisions,
    ) -> ControlFlow<()> {
        let n = self.inst.n();
        while cursor < n {
            let v = cursor;
            cursor += 1;
            if p_i.contains(v) {
                continue;
            }
            let mut outcomes = step(self.inst, self.state, p_i, v, &ctx, self.forced_out, self.stats);
            if let Some(k) = self.budget {
                outcomes.retain(|(c, _)| self.state.chosen.len() + c.in_b.len() <= k);
            }
            match outcomes.len() {
                0 => return ControlFlow::Continue(()),
                1 => {
                    let (c, joins) = outcomes.pop().unwrap();
                    ctx = c;
                    if joins {
                        next.insert(v);
                    }
                }
                _ => {
                    for (c, joins) in outcomes {
                        let mut nx = next.clone();
                        if joins {
                            nx.insert(v);
                        }
                        self.round(p_i, nx, cursor, c)?;
                    }
                    return ControlFlow::Continue(());
                }
            }
        }
        if &next == p_i {
            self.stats.stage2_leaves += 1;
            let leaf = BranchLeaf {
                state: self.state.clone(),
                cover: self.cover.clone(),
                decisions: ctx,
                activated: next,
            };
            (self.visit)(&leaf)
        } else {
            let p_next = next.clone();
            self.round(&p_next, next, 0, ctx)
        }
    }
}
