#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tss_core::instance::{gen_random, GraphModel, ThresholdModel};
use tss_core::{Graph, Instance, Thresholds, VertexSet};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn with_thresholds(g: Graph, thr: Vec<usize>) -> Instance {
    Instance::new(g, Thresholds::new(thr)).unwrap()
}

/// G(n, p) conditioned on being connected (rejection sampling).
pub fn connected_graph(n: usize, rng: &mut ChaCha8Rng) -> Graph {
    loop {
        let p = rng.gen_range(0.2..0.7);
        let seed = rng.gen();
        let inst = gen_random(GraphModel::Gnp(p), n, ThresholdModel::Const(0), seed).unwrap();
        if inst.graph.is_connected() {
            return inst.graph;
        }
    }
}

pub fn random_graph(n: usize, p: f64, rng: &mut ChaCha8Rng) -> Graph {
    gen_random(GraphModel::Gnp(p), n, ThresholdModel::Const(0), rng.gen())
        .unwrap()
        .graph
}

/// Uniform thresholds in `0..=max` on a given graph.
pub fn uniform_thresholds(g: &Graph, max: usize, rng: &mut ChaCha8Rng) -> Instance {
    let thr = (0..g.n()).map(|_| rng.gen_range(0..=max)).collect();
    with_thresholds(g.clone(), thr)
}

/// Random thresholds in `0..=⌈deg/3⌉`.
pub fn ratio_thresholds(g: &Graph, rng: &mut ChaCha8Rng) -> Instance {
    let thr = (0..g.n())
        .map(|v| rng.gen_range(0..=g.degree(v).div_ceil(3)))
        .collect();
    with_thresholds(g.clone(), thr)
}

/// Every simple graph on `n` labelled vertices.
pub fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    (0u64..1 << pairs.len()).map(move |mask| {
        let edges: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        Graph::from_edges(n, &edges).unwrap()
    })
}

pub fn random_subset(n: usize, rng: &mut ChaCha8Rng) -> VertexSet {
    let vs: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
    VertexSet::from_slice(n, &vs)
}
