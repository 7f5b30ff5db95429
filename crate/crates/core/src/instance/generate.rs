use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Graph, Instance, Thresholds};
use crate::error::{Result, TssError};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GraphModel {
    /// Erdős–Rényi: each pair independently with probability `p`.
    Gnp(f64),
    /// Uniform-ish random `d`-regular graph via the configuration model.
    Regular(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThresholdModel {
    /// `min(t, deg(v) + 1)`.
    Const(usize),
    /// `⌈deg(v)/3⌉`, the largest value the one-third regime allows.
    RatioThird,
    /// `max(0, deg(v) - d)`: every dual threshold equals `min(d, deg(v))`.
    Dual(usize),
    /// Independent uniform draws from `0..=max`.
    Uniform(usize),
}

const REGULAR_ATTEMPTS: usize = 10_000;

/// Deterministic for a fixed `(model, n, thr_model, seed)`.
pub fn gen_random(
    model: GraphModel,
    n: usize,
    thr_model: ThresholdModel,
    seed: u64,
) -> Result<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let graph = match model {
        GraphModel::Gnp(p) => {
            if !(0.0..=1.0).contains(&p) {
                return Err(TssError::Generator(format!("edge probability {p} outside [0, 1]")));
            }
            let mut g = Graph::empty(n);
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(p) {
                        g.add_edge(u, v).expect("each pair visited once");
                    }
                }
            }
            g
        }
        GraphModel::Regular(d) => random_regular(n, d, &mut rng)?,
    };
    let thr = (0..n)
        .map(|v| {
            let deg = graph.degree(v);
            match thr_model {
                ThresholdModel::Const(t) => t.min(deg + 1),
                ThresholdModel::RatioThird => deg.div_ceil(3),
                ThresholdModel::Dual(d) => deg.saturating_sub(d),
                ThresholdModel::Uniform(max) => rng.gen_range(0..=max),
            }
        })
        .collect();
    Instance::new(graph, Thresholds::new(thr))
}

fn random_regular(n: usize, d: usize, rng: &mut ChaCha8Rng) -> Result<Graph> {
    if d >= n.max(1) && !(n == 0 && d == 0) {
        return Err(TssError::Generator(format!("regular({d}) needs d < n, got n={n}")));
    }
    if (n * d) % 2 != 0 {
        return Err(TssError::Generator(format!("regular({d}) needs n*d even, got n={n}")));
    }
    let mut stubs: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat(v).take(d)).collect();
    'attempt: for _ in 0..REGULAR_ATTEMPTS {
        stubs.shuffle(rng);
        let mut g = Graph::empty(n);
        for pair in stubs.chunks_exact(2) {
            if g.add_edge(pair[0], pair[1]).is_err() {
                continue 'attempt;
            }
        }
        return Ok(g);
    }
    Err(TssError::Generator(format!(
        "no simple regular({d}) graph on {n} vertices after {REGULAR_ATTEMPTS} attempts"
    )))
}

impl FromStr for GraphModel {
    type Err = TssError;

    /// `gnp:<p>` or `regular:<d>`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || TssError::Generator(format!("unknown graph model `{s}`"));
        let (name, arg) = s.split_once(':').ok_or_else(bad)?;
        match name {
            "gnp" => Ok(GraphModel::Gnp(arg.parse().map_err(|_| bad())?)),
            "regular" => Ok(GraphModel::Regular(arg.parse().map_err(|_| bad())?)),
            _ => Err(bad()),
        }
    }
}

impl FromStr for ThresholdModel {
    type Err = TssError;

    /// `const:<t>`, `ratio-third`, `dual:<d>` or `uniform:<max>`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || TssError::Generator(format!("unknown threshold model `{s}`"));
        if s == "ratio-third" || s == "ratio_third" {
            return Ok(ThresholdModel::RatioThird);
        }
        let (name, arg) = s.split_once(':').ok_or_else(bad)?;
        let arg: usize = arg.parse().map_err(|_| bad())?;
        match name {
            "const" => Ok(ThresholdModel::Const(arg)),
            "dual" => Ok(ThresholdModel::Dual(arg)),
            "uniform" => Ok(ThresholdModel::Uniform(arg)),
            _ => Err(bad()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_probability_gives_isolated_vertices() {
        let inst = gen_random(GraphModel::Gnp(0.0), 4, ThresholdModel::Const(1), 7).unwrap();
        assert_eq!(inst.graph.m(), 0);
        // const(1) caps at deg+1 = 1
        assert_eq!(inst.thresholds.as_slice(), &[1, 1, 1, 1]);
    }

    #[test]
    fn full_probability_gives_complete_graph() {
        let inst = gen_random(GraphModel::Gnp(1.0), 3, ThresholdModel::Dual(0), 1).unwrap();
        assert_eq!(inst.graph, Graph::complete(3));
        assert_eq!(inst.thresholds.as_slice(), &[2, 2, 2]);
    }

    #[test]
    fn same_seed_same_instance() {
        let a = gen_random(GraphModel::Gnp(0.5), 10, ThresholdModel::RatioThird, 42).unwrap();
        let b = gen_random(GraphModel::Gnp(0.5), 10, ThresholdModel::RatioThird, 42).unwrap();
        assert_eq!(a, b);
        let c = gen_random(GraphModel::Gnp(0.5), 10, ThresholdModel::RatioThird, 43).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn regular_degrees() {
        let inst = gen_random(GraphModel::Regular(3), 10, ThresholdModel::Uniform(2), 5).unwrap();
        assert!((0..10).all(|v| inst.graph.degree(v) == 3));
        assert!(inst.thresholds.as_slice().iter().all(|&t| t <= 2));
        assert!(gen_random(GraphModel::Regular(3), 5, ThresholdModel::Const(1), 0).is_err());
        assert!(gen_random(GraphModel::Regular(4), 4, ThresholdModel::Const(1), 0).is_err());
        assert!(gen_random(GraphModel::Gnp(1.5), 4, ThresholdModel::Const(1), 0).is_err());
    }

    #[test]
    fn model_strings() {
        assert_eq!("gnp:0.25".parse::<GraphModel>().unwrap(), GraphModel::Gnp(0.25));
        assert_eq!("regular:4".parse::<GraphModel>().unwrap(), GraphModel::Regular(4));
        assert_eq!("ratio-third".parse::<ThresholdModel>().unwrap(), ThresholdModel::RatioThird);
        assert_eq!("dual:2".parse::<ThresholdModel>().unwrap(), ThresholdModel::Dual(2));
        assert!("nope".parse::<ThresholdModel>().is_err());
    }
}
