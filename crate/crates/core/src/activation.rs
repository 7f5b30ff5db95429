//! Round-exact simulation of the threshold activation process.
//!
//! `S_0(X) = X` and `S_i(X) = S_{i-1}(X) ∪ {v : |N(v) ∩ S_{i-1}(X)| ≥ thr(v)}`.
//! The propagation is frontier driven: each round only inspects neighbours of
//! the vertices activated in the previous round, so a whole process costs
//! `O(n + m)`.

use crate::instance::Instance;
use crate::vertex_set::VertexSet;

/// The sequence `S_0 ⊆ S_1 ⊆ … ⊆ S_r` up to the first fixpoint `r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActivationTrace {
    pub rounds: Vec<VertexSet>,
    /// Round in which each vertex became active; seeds are round 0.
    pub round_of: Vec<Option<usize>>,
}

impl ActivationTrace {
    /// `S(X)`.
    pub fn final_set(&self) -> &VertexSet {
        self.rounds.last().expect("trace always holds S_0")
    }

    /// Index `r` of the first fixpoint, `S_r = S_{r+1}`.
    pub fn fixpoint_index(&self) -> usize {
        self.rounds.len() - 1
    }

    pub fn activated_count(&self) -> usize {
        self.final_set().len()
    }

    /// Vertices that became active exactly in round `i`.
    pub fn newly_activated(&self, i: usize) -> Vec<usize> {
        self.round_of
            .iter()
            .enumerate()
            .filter(|(_, r)| **r == Some(i))
            .map(|(v, _)| v)
            .collect()
    }
}

pub fn activate(inst: &Instance, seed: &VertexSet) -> ActivationTrace {
    let mut prop = Propagator::new(inst);
    let mut rounds = vec![seed.clone()];
    let mut round_of: Vec<Option<usize>> = (0..inst.n())
        .map(|v| seed.contains(v).then_some(0))
        .collect();
    prop.run_with(seed, |round, newly| {
        let mut s = rounds.last().unwrap().clone();
        for &v in newly {
            s.insert(v);
            round_of[v] = Some(round);
        }
        rounds.push(s);
    });
    ActivationTrace { rounds, round_of }
}

/// `S(X)` without the per-round bookkeeping.
pub fn closure(inst: &Instance, seed: &VertexSet) -> VertexSet {
    let mut prop = Propagator::new(inst);
    prop.run(seed);
    prop.active_set()
}

pub fn is_perfect_target_set(inst: &Instance, seed: &VertexSet) -> bool {
    Propagator::new(inst).run(seed) == inst.n()
}

/// Reusable activation buffers for hot loops that run many processes on the
/// same instance.
pub struct Propagator<'a> {
    inst: &'a Instance,
    active: Vec<bool>,
    count: Vec<usize>,
    frontier: Vec<usize>,
    next: Vec<usize>,
}

impl<'a> Propagator<'a> {
    pub fn new(inst: &'a Instance) -> Self {
        let n = inst.n();
        Propagator {
            inst,
            active: vec![false; n],
            count: vec![0; n],
            frontier: Vec::with_capacity(n),
            next: Vec::with_capacity(n),
        }
    }

    /// Runs the process from `seed` and returns `|S(seed)|`.
    pub fn run(&mut self, seed: &VertexSet) -> usize {
        self.run_with(seed, |_, _| {})
    }

    /// Runs the process, calling `on_round(i, S_i \ S_{i-1})` for every
    /// round `i ≥ 1` that activates something.
    pub fn run_with(&mut self, seed: &VertexSet, mut on_round: impl FnMut(usize, &[usize])) -> usize {
        let g = &self.inst.graph;
        let n = g.n();
        self.active.iter_mut().for_each(|a| *a = false);
        self.count.iter_mut().for_each(|c| *c = 0);
        let mut total = 0;
        for v in seed.iter() {
            self.active[v] = true;
            total += 1;
        }
        for v in seed.iter() {
            for &u in g.neighbors(v) {
                self.count[u] += 1;
            }
        }
        // Round 1 candidates need a full scan: thr-0 vertices qualify without
        // any active neighbour.
        self.frontier.clear();
        for v in 0..n {
            if !self.active[v] && self.count[v] >= self.inst.thr(v) {
                self.frontier.push(v);
            }
        }
        let mut round = 1;
        while !self.frontier.is_empty() {
            for &v in &self.frontier {
                self.active[v] = true;
            }
            total += self.frontier.len();
            on_round(round, &self.frontier);
            // Counter updates made now only take effect in the next round.
            self.next.clear();
            for &v in &self.frontier {
                for &u in g.neighbors(v) {
                    if self.active[u] {
                        continue;
                    }
                    self.count[u] += 1;
                    if self.count[u] == self.inst.thr(u) {
                        self.next.push(u);
                    }
                }
            }
            self.next.sort_unstable();
            std::mem::swap(&mut self.frontier, &mut self.next);
            round += 1;
        }
        total
    }

    pub fn is_active(&self, v: usize) -> bool {
        self.active[v]
    }

    pub fn active_set(&self) -> VertexSet {
        let mut s = VertexSet::new(self.active.len());
        for (v, &a) in self.active.iter().enumerate() {
            if a {
                s.insert(v);
            }
        }
        s
    }
}
