//! Algorithm dispatch shared by `solve`, `perfect` and `bench`.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;
use std::time::Instant;

use anyhow::{bail, ensure, Context, Result};
use clap::ValueEnum;
use serde::Serialize;
use tss_core::activation::{closure, is_perfect_target_set};
use tss_core::bounded::{solve_bounded_with, BoundedConfig};
use tss_core::degree_ratio::solve_ratio_tss;
use tss_core::dual::solve_dual_with_stats;
use tss_core::oracle::{oracle_min_perfect_tss, oracle_tss_decision};
use tss_core::perfect::{solve_perfect_with, PerfectConfig, Variant};
use tss_core::{Instance, VertexSet};

use crate::commands::{format_set, load_instance};
use crate::{BenchArgs, PerfectArgs, QueryArgs, SolveArgs};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Algo {
    Auto,
    Oracle,
    Bounded,
    Thr2,
    Thr3,
    Third,
    Dual,
}

impl Algo {
    fn tag(self) -> &'static str {
        match self {
            Algo::Auto => "auto",
            Algo::Oracle => "oracle",
            Algo::Bounded => "bounded",
            Algo::Thr2 => "thr2",
            Algo::Thr3 => "thr3",
            Algo::Third => "third",
            Algo::Dual => "dual",
        }
    }

    /// Picks a concrete solver from the shape of the instance and query.
    fn resolve(self, inst: &Instance, l: usize) -> Algo {
        if self != Algo::Auto {
            return self;
        }
        let perfect = l == inst.n();
        if perfect && inst.max_threshold() <= 2 {
            Algo::Thr2
        } else if inst.satisfies_third_ratio() {
            Algo::Third
        } else if perfect && inst.max_dual().unwrap_or(0) <= 2 {
            Algo::Dual
        } else {
            Algo::Bounded
        }
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Params {
    pub t: Option<usize>,
    pub d: Option<usize>,
}

pub struct Solved {
    pub algo: Algo,
    pub witness: Option<VertexSet>,
    pub stats: Vec<(&'static str, u64)>,
}

impl Solved {
    fn stat(&self, key: &str) -> u64 {
        self.stats.iter().filter(|(k, _)| *k == key).map(|(_, v)| v).sum()
    }

    fn leaves(&self) -> u64 {
        self.stat("brute_force_leaves") + self.stat("stage2_leaves") + self.stat("nodes")
    }
}

fn dual_bound(inst: &Instance, d: Option<usize>) -> usize {
    d.unwrap_or_else(|| inst.max_dual().unwrap_or(0).max(0) as usize)
}

fn require_perfect(algo: Algo, inst: &Instance, l: usize) -> Result<()> {
    ensure!(
        l == inst.n(),
        "--algo {} answers perfect queries only (l={l}, n={})",
        algo.tag(),
        inst.n()
    );
    Ok(())
}

/// Minimum perfect target set by a perfect-only solver.
fn min_perfect(inst: &Instance, algo: Algo, params: Params) -> Result<(VertexSet, Vec<(&'static str, u64)>)> {
    Ok(match algo {
        Algo::Oracle => (oracle_min_perfect_tss(inst)?, Vec::new()),
        Algo::Thr2 | Algo::Thr3 => {
            let variant = if algo == Algo::Thr2 { Variant::Thr2 } else { Variant::Thr3 };
            let out = solve_perfect_with(inst, variant, &PerfectConfig::default())?;
            (out.set, out.stats.entries().to_vec())
        }
        Algo::Dual => {
            let out = solve_dual_with_stats(inst, dual_bound(inst, params.d))?;
            (out.set, vec![("nodes", out.stats.nodes), ("forced", out.stats.forced)])
        }
        other => bail!("--algo {} does not compute perfect target sets", other.tag()),
    })
}

pub fn run_algo(inst: &Instance, algo: Algo, k: usize, l: usize, params: Params) -> Result<Solved> {
    let algo = algo.resolve(inst, l);
    let (witness, stats) = match algo {
        Algo::Oracle => (oracle_tss_decision(inst, k, l)?, Vec::new()),
        Algo::Bounded => {
            let t = params.t.unwrap_or(inst.max_threshold().max(1));
            let out = solve_bounded_with(inst, k, l, t, &BoundedConfig::default())?;
            (out.witness, out.stats.entries().to_vec())
        }
        Algo::Third => (solve_ratio_tss(inst, k, l)?, Vec::new()),
        Algo::Thr2 | Algo::Thr3 | Algo::Dual => {
            require_perfect(algo, inst, l)?;
            let (set, stats) = min_perfect(inst, algo, params)?;
            ((set.len() <= k).then_some(set), stats)
        }
        Algo::Auto => unreachable!("resolved above"),
    };
    if let Some(x) = &witness {
        let reached = closure(inst, x).len();
        ensure!(
            x.len() <= k && reached >= l,
            "{} returned a witness that fails verification (size {}, activates {reached})",
            algo.tag(),
            x.len()
        );
    }
    Ok(Solved { algo, witness, stats })
}

/// `(k, l)` from the flags, falling back to the file's query line.
pub fn resolve_query(inst: &Instance, query: &QueryArgs, force: bool) -> Result<(usize, usize)> {
    let file = inst.query;
    let k = query.k.or(file.map(|q| q.k)).context("no budget: pass --k or add a `q` line")?;
    let l = query.l.or(file.map(|q| q.l)).context("no target: pass --l or add a `q` line")?;
    let n = inst.n();
    if force {
        return Ok((k.min(n), l.min(n)));
    }
    ensure!(k <= n && l <= n, "query (k={k}, l={l}) out of range for n={n}; use --force to clamp");
    Ok((k, l))
}

#[derive(Serialize)]
struct SolveReport<'a> {
    answer: &'a str,
    witness: Option<Vec<usize>>,
    activated: usize,
    algorithm: &'a str,
    elapsed_ms: f64,
    stats: BTreeMap<&'a str, u64>,
}

pub fn run_solve(args: &SolveArgs, out: &mut String) -> Result<bool> {
    let inst = load_instance(&args.input)?;
    let (k, l) = resolve_query(&inst, &args.query, args.input.force)?;
    let start = Instant::now();
    let solved = run_algo(&inst, args.algo, k, l, Params { t: args.t, d: args.d })?;
    let elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    let yes = solved.witness.is_some();
    if args.json {
        let report = SolveReport {
            answer: if yes { "YES" } else { "NO" },
            witness: solved.witness.as_ref().map(|x| x.iter().map(|v| v + 1).collect()),
            activated: solved.witness.as_ref().map_or(0, |x| closure(&inst, x).len()),
            algorithm: solved.algo.tag(),
            elapsed_ms,
            stats: solved.stats.iter().copied().collect(),
        };
        writeln!(out, "{}", serde_json::to_string(&report)?)?;
        return Ok(yes);
    }
    match &solved.witness {
        Some(x) => writeln!(out, "YES size={} set={}", x.len(), format_set(x))?,
        None => writeln!(out, "NO")?,
    }
    if args.stats {
        writeln!(out, "algorithm={}", solved.algo.tag())?;
        for (key, value) in &solved.stats {
            writeln!(out, "{key}={value}")?;
        }
    }
    Ok(yes)
}

pub fn run_perfect(args: &PerfectArgs, out: &mut String) -> Result<bool> {
    let inst = load_instance(&args.input)?;
    let algo = args.algo.resolve(&inst, inst.n());
    let (set, stats) = min_perfect(&inst, algo, Params { t: None, d: args.d })?;
    ensure!(is_perfect_target_set(&inst, &set), "{} returned a set that is not perfect", algo.tag());
    writeln!(out, "size={} set={}", set.len(), format_set(&set))?;
    if args.stats {
        writeln!(out, "algorithm={}", algo.tag())?;
        for (key, value) in &stats {
            writeln!(out, "{key}={value}")?;
        }
    }
    Ok(true)
}

pub fn run_bench(args: &BenchArgs, out: &mut String) -> Result<bool> {
    let algos = args
        .algo
        .split(',')
        .map(|name| Algo::from_str(name.trim(), true).map_err(|e| anyhow::anyhow!("--algo {name}: {e}")))
        .collect::<Result<Vec<_>>>()?;
    writeln!(out, "instance,n,m,algo,answer,size,leaves,dp_states,ms")?;
    for path in &args.files {
        let input = crate::InputArgs { file: path.clone(), force: args.force };
        let inst = load_instance(&input)?;
        let (k, l) = resolve_query(&inst, &args.query, args.force)?;
        for &algo in &algos {
            bench_row(out, path, &inst, algo, k, l)?;
        }
    }
    Ok(true)
}

fn bench_row(out: &mut String, path: &Path, inst: &Instance, algo: Algo, k: usize, l: usize) -> Result<()> {
    let name = path.display();
    let (n, m) = (inst.n(), inst.graph.m());
    let start = Instant::now();
    let result = run_algo(inst, algo, k, l, Params::default());
    let ms = start.elapsed().as_secs_f64() * 1e3;
    match result {
        Ok(s) => {
            let (answer, size) = match &s.witness {
                Some(x) => ("YES", x.len().to_string()),
                None => ("NO", String::new()),
            };
            writeln!(
                out,
                "{name},{n},{m},{},{answer},{size},{},{},{ms:.3}",
                s.algo.tag(),
                s.leaves(),
                s.stat("dp_states")
            )?;
        }
        // an algorithm outside its regime still gets a row
        Err(_) => writeln!(out, "{name},{n},{m},{},ERR,,,,{ms:.3}", algo.resolve(inst, l).tag())?,
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use tss_core::{Graph, Thresholds};

    fn inst(g: Graph, thr: &[usize]) -> Instance {
        Instance::new(g, Thresholds::new(thr.to_vec())).unwrap()
    }

    #[test]
    fn auto_dispatch() {
        let k3 = inst(Graph::complete(3), &[2; 3]);
        assert_eq!(Algo::Auto.resolve(&k3, 3), Algo::Thr2);
        assert_eq!(Algo::Auto.resolve(&k3, 2), Algo::Bounded);
        // star centre with 6 leaves and thr 2 fits the one-third ratio
        let star = inst(Graph::star(6), &[2, 1, 1, 1, 1, 1, 1]);
        assert_eq!(Algo::Auto.resolve(&star, 3), Algo::Third);
        let k5 = inst(Graph::complete(5), &[3; 5]);
        assert_eq!(Algo::Auto.resolve(&k5, 5), Algo::Dual);
        assert_eq!(Algo::Oracle.resolve(&k5, 5), Algo::Oracle);
    }

    #[test]
    fn perfect_only_solvers_reject_partial_queries() {
        let k3 = inst(Graph::complete(3), &[2; 3]);
        assert!(run_algo(&k3, Algo::Thr2, 2, 2, Params::default()).is_err());
        let yes = run_algo(&k3, Algo::Dual, 2, 3, Params::default()).unwrap();
        assert_eq!(yes.witness.map(|x| x.len()), Some(2));
        assert!(run_algo(&k3, Algo::Thr3, 1, 3, Params::default()).unwrap().witness.is_none());
    }

    #[test]
    fn query_overrides_and_clamping() {
        let k3 = inst(Graph::complete(3), &[2; 3]).with_query(1, 3).unwrap();
        let flags = QueryArgs { k: Some(2), l: None };
        assert_eq!(resolve_query(&k3, &flags, false).unwrap(), (2, 3));
        let big = QueryArgs { k: Some(9), l: Some(9) };
        assert!(resolve_query(&k3, &big, false).is_err());
        assert_eq!(resolve_query(&k3, &big, true).unwrap(), (3, 3));
        let bare = inst(Graph::complete(3), &[2; 3]);
        assert!(resolve_query(&bare, &QueryArgs { k: None, l: None }, false).is_err());
    }
}
