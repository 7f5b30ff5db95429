//! Target Set Selection with every threshold at most `t`.
//!
//! Stage I branches on the `(A, Z, F)` partition until either few undecided
//! vertices remain (then brute force) or `Δ(G[F]) < t`. Stage II enumerates
//! descriptions of the activation process relative to the unknown part of
//! the target set inside `F`, and Stage III completes each description with
//! a dynamic program.

mod constants;
mod dp;
mod stage2;

use std::fmt;
use std::ops::ControlFlow;

pub use constants::{compute_constants, dp_pair_variants};
pub use dp::{stage3_dp, stage3_min, DpKey, DpOutcome};
pub use stage2::{explore_stage2, is_activated_round, BranchLeaf, Decisions, SearchState};

use crate::activation::{closure, Propagator};
use crate::error::{precondition, Result};
use crate::instance::Instance;
use crate::subsets::find_subset_seq;
use crate::vertex_set::VertexSet;

/// Counters collected during one solve.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct BoundedStats {
    pub rr1_assignments: u64,
    pub br1_applications: u64,
    /// Children generated by branching rule 1.
    pub br1_children: u64,
    /// `Σ 2^{thr(v)+1} − thr(v) − 1` over the applications.
    pub br1_expected_children: u64,
    pub brute_force_leaves: u64,
    pub stage2_entries: u64,
    pub covers: u64,
    pub dg_branchings: u64,
    pub membership_branchings: u64,
    pub pruned_branches: u64,
    pub stage2_leaves: u64,
    pub dp_states: u64,
}

impl BoundedStats {
    pub fn absorb(&mut self, other: &BoundedStats) {
        self.rr1_assignments += other.rr1_assignments;
        self.br1_applications += other.br1_applications;
        self.br1_children += other.br1_children;
        self.br1_expected_children += other.br1_expected_children;
        self.brute_force_leaves += other.brute_force_leaves;
        self.stage2_entries += other.stage2_entries;
        self.covers += other.covers;
        self.dg_branchings += other.dg_branchings;
        self.membership_branchings += other.membership_branchings;
        self.pruned_branches += other.pruned_branches;
        self.stage2_leaves += other.stage2_leaves;
        self.dp_states += other.dp_states;
    }

    /// `(name, value)` pairs in a fixed order.
    pub fn entries(&self) -> [(&'static str, u64); 12] {
        [
            ("rr1_assignments", self.rr1_assignments),
            ("br1_applications", self.br1_applications),
            ("br1_children", self.br1_children),
            ("br1_expected_children", self.br1_expected_children),
            ("brute_force_leaves", self.brute_force_leaves),
            ("stage2_entries", self.stage2_entries),
            ("covers", self.covers),
            ("dg_branchings", self.dg_branchings),
            ("membership_branchings", self.membership_branchings),
            ("pruned_branches", self.pruned_branches),
            ("stage2_leaves", self.stage2_leaves),
            ("dp_states", self.dp_states),
        ]
    }
}

impl fmt::Display for BoundedStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (name, value) in self.entries() {
            writeln!(f, "{name}={value}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy)]
pub struct BoundedConfig {
    /// Overrides `γ_t`. `Some(0.0)` sends every Stage-I leaf with a
    /// non-empty `F` through Stages II and III.
    pub gamma: Option<f64>,
    /// Apply reduction rule 1 (vertices of `S(A)` go to `Z`).
    pub reduction_rule: bool,
}

impl Default for BoundedConfig {
    fn default() -> Self {
        BoundedConfig {
            gamma: None,
            reduction_rule: true,
        }
    }
}

#[derive(Debug, Clone)]
pub struct BoundedOutcome {
    pub witness: Option<VertexSet>,
    pub stats: BoundedStats,
}

/// `X` with `|X| ≤ k` and `|S(X)| ≥ l`, or `None`; requires `thr ≤ t`.
pub fn solve_bounded(inst: &Instance, k: usize, l: usize, t: usize) -> Result<Option<VertexSet>> {
    Ok(solve_bounded_with(inst, k, l, t, &BoundedConfig::default())?.witness)
}

pub fn solve_bounded_with(
    inst: &Instance,
    k: usize,
    l: usize,
    t: usize,
    config: &BoundedConfig,
) -> Result<BoundedOutcome> {
    if let Some(v) = (0..inst.n()).find(|&v| inst.thr(v) > t) {
        return precondition(format!(
            "vertex {} has threshold {} above t={t}",
            v + 1,
            inst.thr(v)
        ));
    }
    let mut solver = Solver {
        inst,
        k: k.min(inst.n()),
        l,
        t,
        gamma_n: config.gamma.unwrap_or_else(|| compute_constants(t.max(1)).1) * inst.n() as f64,
        config: *config,
        stats: BoundedStats::default(),
    };
    let witness = if l > inst.n() {
        None
    } else {
        solver.stage1(SearchState::root(inst.n()))?
    };
    if let Some(x) = &witness {
        debug_assert!(x.len() <= k && closure(inst, x).len() >= l);
    }
    Ok(BoundedOutcome {
        witness,
        stats: solver.stats,
    })
}

struct Solver<'a> {
    inst: &'a Instance,
    k: usize,
    l: usize,
    t: usize,
    gamma_n: f64,
    config: BoundedConfig,
    stats: BoundedStats,
}

impl Solver<'_> {
    fn stage1(&mut self, mut state: SearchState) -> Result<Option<VertexSet>> {
        debug_assert!(state.is_partition());
        if self.config.reduction_rule {
            // S(A) only depends on A, so one pass is exhaustive.
            let reached = closure(self.inst, &state.chosen);
            for v in reached.intersection(&state.free).iter() {
                state.exclude(v);
                self.stats.rr1_assignments += 1;
            }
        }
        if state.chosen.len() > self.k {
            return Ok(None);
        }
        if state.free.len() as f64 <= self.gamma_n {
            self.stats.brute_force_leaves += 1;
            return Ok(self.brute_force(&state));
        }
        if let Some(v) = self.branch_vertex(&state) {
            return self.branch_rule_1(&state, v);
        }
        self.stage2_and_3(&state)
    }

    /// Free vertex with `deg_F(v) ≥ thr(v)` and the largest `deg_F`, lowest
    /// id on ties.
    fn branch_vertex(&self, state: &SearchState) -> Option<usize> {
        let g = &self.inst.graph;
        state
            .free
            .iter()
            .map(|v| (v, g.degree_in(v, &state.free)))
            .filter(|&(v, d)| d >= self.inst.thr(v))
            .max_by(|a, b| a.1.cmp(&b.1).then(b.0.cmp(&a.0)))
            .map(|(v, _)| v)
    }

    /// With `T` the `thr(v)` lowest-id free neighbours of `v`: every split of
    /// `T ∪ {v}` putting fewer than `thr(v)` vertices into `A`, plus `T → A`,
    /// `v → Z`.
    fn branch_rule_1(&mut self, state: &SearchState, v: usize) -> Result<Option<VertexSet>> {
        let thr = self.inst.thr(v);
        let mut group: Vec<usize> = self
            .inst
            .graph
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&u| state.free.contains(u))
            .take(thr)
            .collect();
        group.push(v);
        self.stats.br1_applications += 1;
        self.stats.br1_expected_children += (1u64 << (thr + 1)) - thr as u64 - 1;

        let mut children: Vec<u64> = (0u64..1 << group.len())
            .filter(|mask| (mask.count_ones() as usize) < thr)
            .collect();
        // T into A, v into Z: every bit but v's
        children.push((1u64 << thr) - 1);
        self.stats.br1_children += children.len() as u64;
        for mask in children {
            let mut child = state.clone();
            for (i, &u) in group.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    child.choose(u);
                } else {
                    child.exclude(u);
                }
            }
            if let Some(x) = self.stage1(child)? {
                return Ok(Some(x));
            }
        }
        Ok(None)
    }

    /// Branching rule 2: every `B ⊆ F`, smallest first.
    fn brute_force(&self, state: &SearchState) -> Option<VertexSet> {
        let items = state.free.to_vec();
        let room = self.k - state.chosen.len();
        let mut prop = Propagator::new(self.inst);
        let l = self.l;
        find_subset_seq(self.inst.n(), &items, &state.chosen, room, |x| prop.run(x) >= l)
    }

    fn stage2_and_3(&mut self, state: &SearchState) -> Result<Option<VertexSet>> {
        self.stats.stage2_entries += 1;
        let inst = self.inst;
        let (k, l) = (self.k, self.l);
        let mut found = None;
        let mut dp_states = 0u64;
        let _ = explore_stage2(inst, state, self.t, Some(k), &mut self.stats, |leaf| {
            let outcome = stage3_min(inst, leaf, l);
            dp_states += outcome.states as u64;
            match outcome.best {
                Some(x) if x.len() <= k => {
                    found = Some(x);
                    ControlFlow::Break(())
                }
                _ => ControlFlow::Continue(()),
            }
        })?;
        self.stats.dp_states += dp_states;
        Ok(found)
    }
}
