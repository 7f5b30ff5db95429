//! Minimum perfect target sets when every threshold is at most 2 or at most 3.
//!
//! Inputs are first equalized with star gadgets so that `thr ≡ c`. Part 1
//! tries every small seed; Part 2 is a branch-and-reduce search over the
//! `(A, Z, F)` partition that ends in brute force over `F`.

use std::fmt;

use crate::activation::{closure, is_perfect_target_set, Propagator};
use crate::bounded::SearchState;
use crate::error::{precondition, Result};
use crate::instance::{Graph, Instance, Thresholds};
use crate::subsets::{find_subset_of_size_par, find_subset_seq};
use crate::vertex_set::VertexSet;

/// Part-1 constant of the threshold-2 solver.
pub const GAMMA_THR2: f64 = 0.655984;
/// Part-1 constant of the threshold-3 solver.
pub const GAMMA_THR3: f64 = 0.839533;

/// Adds `t` stars (a centre with `t` leaves each) after the original
/// vertices and joins every `v` to the first `t − thr(v)` centres. All
/// thresholds of the result equal `t`. Star `i` has its centre at
/// `n + i(t+1)` followed by its leaves.
pub fn gadget_bounded_to_equal(inst: &Instance, t: usize) -> Result<Instance> {
    if t < 2 {
        return precondition(format!("gadget needs t >= 2, got {t}"));
    }
    if let Some(v) = (0..inst.n()).find(|&v| inst.thr(v) > t) {
        return precondition(format!("vertex {} has threshold {} above t={t}", v + 1, inst.thr(v)));
    }
    let n = inst.n();
    let total = n + t * (t + 1);
    let mut edges: Vec<(usize, usize)> = inst.graph.edges().collect();
    let centre = |i: usize| n + i * (t + 1);
    for i in 0..t {
        for j in 1..=t {
            edges.push((centre(i), centre(i) + j));
        }
    }
    for v in 0..n {
        for i in 0..t - inst.thr(v) {
            edges.push((v, centre(i)));
        }
    }
    let graph = Graph::from_edges(total, &edges)?;
    Instance::new(graph, Thresholds::constant(total, t))
}

/// Ids of the `t²` gadget leaves for an input with `n` vertices.
pub fn gadget_leaves(n: usize, t: usize) -> Vec<usize> {
    (0..t)
        .flat_map(|i| (1..=t).map(move |j| n + i * (t + 1) + j))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    Thr2,
    Thr3,
}

impl Variant {
    pub fn threshold(self) -> usize {
        match self {
            Variant::Thr2 => 2,
            Variant::Thr3 => 3,
        }
    }

    pub fn gamma(self) -> f64 {
        match self {
            Variant::Thr2 => GAMMA_THR2,
            Variant::Thr3 => GAMMA_THR3,
        }
    }

    /// Largest seed size Part 1 tries on `n` vertices.
    pub fn part1_limit(self, n: usize) -> usize {
        let share = match self {
            Variant::Thr2 => 1.0 - self.gamma(),
            Variant::Thr3 => 1.0 - 2.0 * self.gamma() / 3.0,
        };
        (share * n as f64).floor() as usize
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Thr2 => "thr2",
            Variant::Thr3 => "thr3",
        })
    }
}

#[derive(Debug, Clone, Copy)]
pub struct PerfectConfig {
    pub part1: bool,
    /// Also explore the branch rules 4 and 5 leave out (everything in `Z`).
    pub complete_branches: bool,
}

impl Default for PerfectConfig {
    fn default() -> Self {
        PerfectConfig {
            part1: true,
            complete_branches: false,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct PerfectStats {
    pub part1_hit: bool,
    pub rr1_assignments: u64,
    pub rr3_assignments: u64,
    pub br1_applications: u64,
    pub br1_children: u64,
    pub br1_expected_children: u64,
    pub br4_applications: u64,
    pub br4_children: u64,
    pub br5_applications: u64,
    pub br5_children: u64,
    pub brute_force_leaves: u64,
}

impl PerfectStats {
    pub fn entries(&self) -> [(&'static str, u64); 11] {
        [
            ("part1_hit", u64::from(self.part1_hit)),
            ("rr1_assignments", self.rr1_assignments),
            ("rr3_assignments", self.rr3_assignments),
            ("br1_applications", self.br1_applications),
            ("br1_children", self.br1_children),
            ("br1_expected_children", self.br1_expected_children),
            ("br4_applications", self.br4_applications),
            ("br4_children", self.br4_children),
            ("br5_applications", self.br5_applications),
            ("br5_children", self.br5_children),
            ("brute_force_leaves", self.brute_force_leaves),
        ]
    }
}

#[derive(Debug, Clone)]
pub struct PerfectOutcome {
    pub set: VertexSet,
    pub stats: PerfectStats,
}

pub fn solve_perfect_thr2(inst: &Instance) -> Result<VertexSet> {
    Ok(solve_perfect_with(inst, Variant::Thr2, &PerfectConfig::default())?.set)
}

pub fn solve_perfect_thr3(inst: &Instance) -> Result<VertexSet> {
    Ok(solve_perfect_with(inst, Variant::Thr3, &PerfectConfig::default())?.set)
}

/// Minimum perfect target set of an instance with `thr ≤ c`, via the gadget.
pub fn solve_perfect_with(inst: &Instance, variant: Variant, config: &PerfectConfig) -> Result<PerfectOutcome> {
    let c = variant.threshold();
    if let Some(v) = (0..inst.n()).find(|&v| inst.thr(v) > c) {
        return precondition(format!("vertex {} has threshold {} above {c}", v + 1, inst.thr(v)));
    }
    let n = inst.n();
    let empty = VertexSet::new(n);
    if is_perfect_target_set(inst, &empty) {
        return Ok(PerfectOutcome {
            set: empty,
            stats: PerfectStats::default(),
        });
    }
    let equal = gadget_bounded_to_equal(inst, c)?;
    let outcome = solve_equal_thresholds(&equal, variant, config)?;
    let mut set = VertexSet::new(n);
    for v in outcome.set.iter().filter(|&v| v < n) {
        set.insert(v);
    }
    debug_assert!(is_perfect_target_set(inst, &set));
    debug_assert_eq!(set.len() + c * c, outcome.set.len());
    Ok(PerfectOutcome {
        set,
        stats: outcome.stats,
    })
}

/// Minimum perfect target set when every threshold equals `c`.
pub fn solve_equal_thresholds(inst: &Instance, variant: Variant, config: &PerfectConfig) -> Result<PerfectOutcome> {
    let c = variant.threshold();
    if let Some(v) = (0..inst.n()).find(|&v| inst.thr(v) != c) {
        return precondition(format!("vertex {} has threshold {} instead of {c}", v + 1, inst.thr(v)));
    }
    let n = inst.n();
    let g = &inst.graph;
    let mut stats = PerfectStats::default();

    if config.part1 {
        // Vertices with fewer than c neighbours are in every perfect target
        // set, so only their supersets are tried.
        let low: Vec<usize> = (0..n).filter(|&v| g.degree(v) < c).collect();
        let forced = VertexSet::from_slice(n, &low);
        let items: Vec<usize> = (0..n).filter(|&v| !forced.contains(v)).collect();
        let limit = variant.part1_limit(n);
        for size in forced.len()..=limit {
            let hit = find_subset_of_size_par(&items, &forced, size - forced.len(), || Propagator::new(inst), |prop, x| {
                prop.run(x) == n
            });
            if let Some(set) = hit {
                stats.part1_hit = true;
                return Ok(PerfectOutcome { set, stats });
            }
        }
    }

    let mut search = Search {
        inst,
        variant,
        config: *config,
        best: None,
        stats,
        prop: Propagator::new(inst),
    };
    search.recurse(SearchState::root(n));
    let set = search.best.expect("V(G) is a perfect target set");
    Ok(PerfectOutcome {
        set,
        stats: search.stats,
    })
}

struct Search<'a> {
    inst: &'a Instance,
    variant: Variant,
    config: PerfectConfig,
    best: Option<VertexSet>,
    stats: PerfectStats,
    prop: Propagator<'a>,
}

impl Search<'_> {
    fn c(&self) -> usize {
        self.variant.threshold()
    }

    fn reduce(&mut self, state: &mut SearchState) {
        let g = &self.inst.graph;
        loop {
            let reached = closure(self.inst, &state.chosen);
            for v in reached.intersection(&state.free).iter() {
                state.exclude(v);
                self.stats.rr1_assignments += 1;
            }
            let low: Vec<usize> = state.free.iter().filter(|&v| g.degree(v) < self.c()).collect();
            if low.is_empty() {
                return;
            }
            for v in low {
                state.choose(v);
                self.stats.rr3_assignments += 1;
            }
        }
    }

    fn recurse(&mut self, mut state: SearchState) {
        self.reduce(&mut state);
        if self.best.as_ref().is_some_and(|b| state.chosen.len() >= b.len()) {
            return;
        }
        if let Some(v) = self.br1_vertex(&state) {
            return self.branch_rule_1(&state, v);
        }
        if let Some((u, v)) = self.br4_pair(&state) {
            return self.branch_rule_4(&state, u, v);
        }
        if self.variant == Variant::Thr3 {
            if let Some(triple) = self.br5_triple(&state) {
                return self.branch_rule_5(&state, triple);
            }
        }
        self.brute_force(&state);
    }

    fn br1_vertex(&self, state: &SearchState) -> Option<usize> {
        let g = &self.inst.graph;
        state
            .free
            .iter()
            .map(|v| (v, g.degree_in(v, &state.free)))
            .filter(|&(_, d)| d >= self.c())
            .max_by(|a, b| a.1.cmp(&b.1).then(b.0.cmp(&a.0)))
            .map(|(v, _)| v)
    }

    fn branch_rule_1(&mut self, state: &SearchState, v: usize) {
        let c = self.c();
        let mut group: Vec<usize> = self
            .inst
            .graph
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&u| state.free.contains(u))
            .take(c)
            .collect();
        group.push(v);
        self.stats.br1_applications += 1;
        self.stats.br1_expected_children += (1u64 << (c + 1)) - c as u64 - 1;
        let mut masks: Vec<u64> = (0u64..1 << group.len())
            .filter(|m| (m.count_ones() as usize) < c)
            .collect();
        masks.push((1u64 << c) - 1);
        self.stats.br1_children += masks.len() as u64;
        self.split(state, &group, &masks);
    }

    /// Adjacent free `u < v` with `deg_G(u) = deg_G(v) = c`.
    fn br4_pair(&self, state: &SearchState) -> Option<(usize, usize)> {
        let g = &self.inst.graph;
        let c = self.c();
        state.free.iter().filter(|&u| g.degree(u) == c).find_map(|u| {
            g.neighbors(u)
                .iter()
                .copied()
                .find(|&v| v > u && state.free.contains(v) && g.degree(v) == c)
                .map(|v| (u, v))
        })
    }

    fn branch_rule_4(&mut self, state: &SearchState, u: usize, v: usize) {
        self.stats.br4_applications += 1;
        // bit 0 is u, bit 1 is v
        let mut masks = vec![0b10, 0b01, 0b11];
        if self.config.complete_branches {
            masks.push(0b00);
        }
        self.stats.br4_children += masks.len() as u64;
        self.split(state, &[u, v], &masks);
    }

    /// Free `v` of degree 4 with two free neighbours `u < w` of degree 3.
    fn br5_triple(&self, state: &SearchState) -> Option<[usize; 3]> {
        let g = &self.inst.graph;
        state.free.iter().filter(|&v| g.degree(v) == 4).find_map(|v| {
            let mut cubic = g
                .neighbors(v)
                .iter()
                .copied()
                .filter(|&u| state.free.contains(u) && g.degree(u) == 3);
            match (cubic.next(), cubic.next()) {
                (Some(u), Some(w)) => Some([u, v, w]),
                _ => None,
            }
        })
    }

    fn branch_rule_5(&mut self, state: &SearchState, triple: [usize; 3]) {
        self.stats.br5_applications += 1;
        let first = if self.config.complete_branches { 0 } else { 1 };
        let masks: Vec<u64> = (first..8).collect();
        self.stats.br5_children += masks.len() as u64;
        self.split(state, &triple, &masks);
    }

    /// One child per mask: bit `i` set sends `group[i]` to `A`, clear to `Z`.
    fn split(&mut self, state: &SearchState, group: &[usize], masks: &[u64]) {
        for &mask in masks {
            let mut child = state.clone();
            for (i, &u) in group.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    child.choose(u);
                } else {
                    child.exclude(u);
                }
            }
            self.recurse(child);
        }
    }

    fn brute_force(&mut self, state: &SearchState) {
        self.stats.brute_force_leaves += 1;
        let n = self.inst.n();
        if self.variant == Variant::Thr2 {
            debug_assert!(
                is_perfect_target_set(self.inst, &state.chosen.union(&state.excluded)),
                "A ⊔ Z must be perfect once no rule applies"
            );
        }
        let room = match &self.best {
            Some(b) => b.len() - 1 - state.chosen.len(),
            None => state.free.len(),
        };
        let items = state.free.to_vec();
        let prop = &mut self.prop;
        if let Some(x) = find_subset_seq(n, &items, &state.chosen, room, |x| prop.run(x) == n) {
            self.best = Some(x);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::oracle_min_perfect_tss;

    fn inst(g: Graph, thr: &[usize]) -> Instance {
        Instance::new(g, Thresholds::new(thr.to_vec())).unwrap()
    }

    #[test]
    fn gamma_constants_are_literal() {
        assert_eq!(GAMMA_THR2.to_string(), "0.655984");
        assert_eq!(GAMMA_THR3.to_string(), "0.839533");
        assert_eq!(Variant::Thr2.gamma().to_string(), "0.655984");
        assert_eq!(Variant::Thr3.gamma().to_string(), "0.839533");
    }

    #[test]
    fn gadget_on_single_vertex() {
        let one = inst(Graph::empty(1), &[1]);
        let out = gadget_bounded_to_equal(&one, 2).unwrap();
        assert_eq!(out.n(), 7);
        assert!((0..7).all(|v| out.thr(v) == 2));
        assert_eq!(oracle_min_perfect_tss(&one).unwrap().len(), 1);
        assert_eq!(oracle_min_perfect_tss(&out).unwrap().len(), 5);
    }

    #[test]
    fn gadget_leaves_originals_alone_at_full_threshold() {
        let k3 = inst(Graph::complete(3), &[2, 2, 2]);
        let out = gadget_bounded_to_equal(&k3, 2).unwrap();
        assert_eq!(out.n(), 3 + 6);
        for v in 0..3 {
            assert_eq!(out.graph.degree(v), 2);
        }
        assert_eq!(gadget_leaves(3, 2), vec![4, 5, 7, 8]);
        for &l in &gadget_leaves(3, 2) {
            assert_eq!(out.graph.degree(l), 1);
        }
    }

    #[test]
    fn gadget_rejects_bad_input() {
        let p = inst(Graph::path(2), &[3, 0]);
        assert!(gadget_bounded_to_equal(&p, 2).is_err());
        assert!(gadget_bounded_to_equal(&p, 1).is_err());
    }

    #[test]
    fn thr2_examples() {
        assert_eq!(solve_perfect_thr2(&inst(Graph::complete(3), &[2, 2, 2])).unwrap().len(), 2);
        let path = inst(Graph::path(3), &[1, 2, 1]);
        assert_eq!(solve_perfect_thr2(&path).unwrap().to_vec(), vec![1]);
        let star = inst(Graph::star(4), &[2; 5]);
        let want = oracle_min_perfect_tss(&star).unwrap().len();
        let got = solve_perfect_thr2(&star).unwrap();
        assert_eq!(got.len(), want);
        assert!(is_perfect_target_set(&star, &got));
    }

    #[test]
    fn thr3_examples() {
        assert_eq!(solve_perfect_thr3(&inst(Graph::complete(4), &[3; 4])).unwrap().len(), 3);
        assert!(solve_perfect_thr3(&inst(Graph::cycle(5), &[0; 5])).unwrap().is_empty());
        assert!(solve_perfect_thr3(&inst(Graph::path(2), &[4, 0])).is_err());
    }

    #[test]
    fn part2_alone_is_exact() {
        let config = PerfectConfig {
            part1: false,
            ..PerfectConfig::default()
        };
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 3)]).unwrap();
        let i = inst(g, &[2, 1, 2, 2, 1, 2]);
        for variant in [Variant::Thr2, Variant::Thr3] {
            let out = solve_perfect_with(&i, variant, &config).unwrap();
            assert!(!out.stats.part1_hit);
            assert_eq!(out.set.len(), oracle_min_perfect_tss(&i).unwrap().len());
        }
    }

    #[test]
    fn rule_four_fires_on_long_cycles() {
        let config = PerfectConfig {
            part1: false,
            ..PerfectConfig::default()
        };
        let c = inst(Graph::cycle(8), &[2; 8]);
        let out = solve_equal_thresholds(&c, Variant::Thr2, &config).unwrap();
        assert!(out.stats.br4_applications > 0);
        assert_eq!(out.stats.br4_children, 3 * out.stats.br4_applications);
        assert_eq!(out.set.len(), oracle_min_perfect_tss(&c).unwrap().len());
    }
}
