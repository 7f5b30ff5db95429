//! Stage III: pick the cheapest completion `B'` for one Stage-II leaf.
//!
//! `A'` holds everything known to be in the target set, `Z'` everything
//! known to be out, and `F' = V \ A' \ Z'` is scanned in id order
//! `u_1, …, u_f'`. A state `(i, p, ⟨d_j⟩)` records how many of the first `i`
//! vertices end up activated (`p`, capped at what is still needed) and, for
//! each `Z`-vertex `v_j` whose `dg` was fixed, `min(thr, |N(v_j) ∩ B|)` so
//! far. Feasible end states have `d_j = dg(v_j)` for all `j` and enough
//! activated vertices.

use std::collections::HashMap;

use super::stage2::BranchLeaf;
use crate::instance::Instance;
use crate::vertex_set::VertexSet;

/// Key of the memo table. `d` only covers the `Z`-vertices whose `dg` value
/// was branched on; it satisfies `d[j] ≤ dg(v_j)` throughout.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DpKey {
    pub i: usize,
    pub p: usize,
    pub d: Vec<u8>,
}

#[derive(Debug, Clone, Default)]
pub struct DpOutcome {
    /// Smallest `A' ⊔ B'` meeting the target, if any.
    pub best: Option<VertexSet>,
    pub states: usize,
}

struct Tracked {
    vertex: usize,
    dg: u8,
    thr: usize,
}

struct Program<'a> {
    inst: &'a Instance,
    order: Vec<usize>,
    tracked: Vec<Tracked>,
    activated: &'a VertexSet,
    need: usize,
    memo: HashMap<DpKey, usize>,
    infeasible: usize,
}

impl Program<'_> {
    /// `d_j` after taking `u` into `B'`, or `None` if some `d_j` would pass
    /// its `dg(v_j)`.
    fn advance(&self, u: usize, d: &[u8]) -> Option<Vec<u8>> {
        let g = &self.inst.graph;
        let mut out = d.to_vec();
        for (slot, tr) in out.iter_mut().zip(&self.tracked) {
            if g.has_edge(tr.vertex, u) {
                let raised = (*slot as usize + 1).min(tr.thr) as u8;
                if raised > tr.dg {
                    return None;
                }
                *slot = raised;
            }
        }
        Some(out)
    }

    /// Minimum number of `F'`-vertices still to take from state `key`.
    fn solve(&mut self, key: DpKey) -> usize {
        if key.i == self.order.len() {
            let done = key.p >= self.need && key.d.iter().zip(&self.tracked).all(|(d, tr)| *d == tr.dg);
            return if done { 0 } else { self.infeasible };
        }
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        let u = self.order[key.i];
        let skip = {
            let p = (key.p + usize::from(self.activated.contains(u))).min(self.need);
            self.solve(DpKey { i: key.i + 1, p, d: key.d.clone() })
        };
        let take = match self.advance(u, &key.d) {
            Some(d) => {
                let p = (key.p + 1).min(self.need);
                let rest = self.solve(DpKey { i: key.i + 1, p, d });
                if rest >= self.infeasible {
                    self.infeasible
                } else {
                    rest + 1
                }
            }
            None => self.infeasible,
        };
        let best = skip.min(take);
        self.memo.insert(key, best);
        best
    }
}

/// Minimum-size target set consistent with `leaf` that activates at least
/// `l` vertices, regardless of any budget.
pub fn stage3_min(inst: &Instance, leaf: &BranchLeaf, l: usize) -> DpOutcome {
    let n = inst.n();
    let g = &inst.graph;
    let state = &leaf.state;
    let known_in = state.chosen.union(&leaf.decisions.in_b);
    let known_out = state.excluded.union(&leaf.decisions.out_b);
    let mut rest = known_in.union(&known_out).complement();
    rest.difference_with(&known_in);
    let order: Vec<usize> = rest.iter().collect();

    let hidden_known = &leaf.decisions.in_b;
    let tracked: Vec<Tracked> = state
        .excluded
        .iter()
        .filter_map(|v| {
            leaf.decisions.dg[v].map(|dg| Tracked {
                vertex: v,
                dg: dg as u8,
                thr: inst.thr(v),
            })
        })
        .collect();
    let start: Vec<u8> = tracked
        .iter()
        .map(|tr| hidden_known.count_in(g.neighbors(tr.vertex)).min(tr.thr) as u8)
        .collect();
    if start.iter().zip(&tracked).any(|(d, tr)| *d > tr.dg) {
        return DpOutcome::default();
    }

    let outside = leaf.activated.difference(&rest).len();
    let mut program = Program {
        inst,
        order,
        tracked,
        activated: &leaf.activated,
        need: l.saturating_sub(outside),
        memo: HashMap::new(),
        infeasible: n + 1,
    };
    let root = DpKey { i: 0, p: 0, d: start };
    let size = program.solve(root.clone());
    if size >= program.infeasible {
        return DpOutcome {
            best: None,
            states: program.memo.len(),
        };
    }

    // Walk the table forward to recover one optimal B'.
    let mut chosen = known_in;
    let mut key = root;
    while key.i < program.order.len() {
        let u = program.order[key.i];
        let here = program.solve(key.clone());
        let skip_key = DpKey {
            i: key.i + 1,
            p: (key.p + usize::from(leaf.activated.contains(u))).min(program.need),
            d: key.d.clone(),
        };
        if program.solve(skip_key.clone()) == here {
            key = skip_key;
            continue;
        }
        let d = program.advance(u, &key.d).expect("optimal step takes u");
        chosen.insert(u);
        key = DpKey {
            i: key.i + 1,
            p: (key.p + 1).min(program.need),
            d,
        };
    }
    DpOutcome {
        best: Some(chosen),
        states: program.memo.len(),
    }
}

/// [`stage3_min`] filtered by the budget `k`.
pub fn stage3_dp(inst: &Instance, leaf: &BranchLeaf, k: usize, l: usize) -> Option<VertexSet> {
    stage3_min(inst, leaf, l).best.filter(|x| x.len() <= k)
}
