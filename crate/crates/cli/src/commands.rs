//! Corpus tooling: everything except the solver dispatch.

use std::fmt::Write as _;
use std::io::Read as _;
use std::ops::ControlFlow;
use std::path::Path;

use anyhow::{bail, ensure, Context, Result};
use tss_core::activation::{activate, closure, is_perfect_target_set};
use tss_core::degree_ratio::{construct_small_pts_seeded, ratio_bound};
use tss_core::instance::{gen_random, parse_instance_with, write_instance, GraphModel, ParseOptions, ThresholdModel};
use tss_core::mpvc::enum_minimal_pvcs;
use tss_core::perfect::{gadget_bounded_to_equal, gadget_leaves};
use tss_core::reductions::{reduce_clique_to_tss, Origin};
use tss_core::{Instance, VertexSet};

use crate::solve::resolve_query;
use crate::{ConstructArgs, EnumArgs, GadgetArgs, GenArgs, InputArgs, ReduceArgs, SetArgs};

fn read_text(path: &Path) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut text = String::new();
        std::io::stdin().read_to_string(&mut text)?;
        return Ok(text);
    }
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

pub fn load_instance(input: &InputArgs) -> Result<Instance> {
    let text = read_text(&input.file)?;
    parse_instance_with(&text, ParseOptions { force: input.force })
        .with_context(|| format!("{}", input.file.display()))
}

/// Sorted 1-based ids joined by commas.
pub fn format_set(x: &VertexSet) -> String {
    ids(x.iter())
}

fn ids(vs: impl Iterator<Item = usize>) -> String {
    vs.map(|v| (v + 1).to_string()).collect::<Vec<_>>().join(",")
}

fn parse_set(text: &str, n: usize) -> Result<VertexSet> {
    let mut x = VertexSet::new(n);
    for tok in text.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let v: usize = tok.parse().with_context(|| format!("bad vertex id `{tok}`"))?;
        ensure!((1..=n).contains(&v), "vertex {v} out of range 1..={n}");
        x.insert(v - 1);
    }
    Ok(x)
}

pub fn simulate(args: &SetArgs, out: &mut String) -> Result<bool> {
    let inst = load_instance(&args.input)?;
    let x = parse_set(&args.set, inst.n())?;
    let trace = activate(&inst, &x);
    writeln!(out, "round 0: {}", format_set(&trace.rounds[0]))?;
    for i in 1..=trace.fixpoint_index() {
        writeln!(out, "round {i}: +{}", ids(trace.newly_activated(i).into_iter()))?;
    }
    writeln!(out, "activated={} of {}", trace.activated_count(), inst.n())?;
    Ok(true)
}

pub fn verify(args: &SetArgs, out: &mut String) -> Result<bool> {
    let inst = load_instance(&args.input)?;
    let (k, l) = resolve_query(&inst, &args.query, args.input.force)?;
    let x = parse_set(&args.set, inst.n())?;
    let reached = closure(&inst, &x).len();
    let ok = x.len() <= k && reached >= l;
    let verdict = if ok { "OK" } else { "FAIL" };
    writeln!(out, "{verdict} size={} k={k} activated={reached} l={l}", x.len())?;
    Ok(ok)
}

pub fn enum_mpvc(args: &EnumArgs, out: &mut String) -> Result<bool> {
    let inst = load_instance(&args.input)?;
    let mut count = 0u64;
    enum_minimal_pvcs(&inst.graph, args.t, |s| {
        count += 1;
        if !args.count_only {
            let line = if s.is_empty() { "-".to_string() } else { format_set(s) };
            let _ = writeln!(out, "{line}");
        }
        ControlFlow::Continue(())
    })?;
    if args.count_only {
        writeln!(out, "{count}")?;
    }
    Ok(true)
}

pub fn gen(args: &GenArgs, out: &mut String) -> Result<bool> {
    let model: GraphModel = args.model.parse()?;
    let thr: ThresholdModel = args.thr.parse()?;
    let mut inst = gen_random(model, args.n, thr, args.seed)?;
    match (args.query.k, args.query.l) {
        (Some(k), Some(l)) => inst = inst.with_query(k, l)?,
        (None, None) => {}
        _ => bail!("--k and --l must be given together"),
    }
    out.push_str(&write_instance(&inst));
    Ok(true)
}

pub fn reduce(args: &ReduceArgs, out: &mut String) -> Result<bool> {
    let input = InputArgs { file: args.from_clique.clone(), force: true };
    let g = load_instance(&input)?.graph;
    let red = reduce_clique_to_tss(&g, args.k)?;
    writeln!(out, "# clique k={} on {} vertices", args.k, g.n())?;
    for (v, origin) in red.origin.iter().enumerate() {
        match origin {
            Origin::Vertex(u) => writeln!(out, "# origin {} vertex {}", v + 1, u + 1)?,
            Origin::Edge(a, b) => writeln!(out, "# origin {} edge {} {}", v + 1, a + 1, b + 1)?,
        }
    }
    let n = red.instance.n();
    if red.l <= n {
        out.push_str(&write_instance(&red.instance.with_query(red.k.min(n), red.l)?));
    } else {
        // a `q` line with l > n would not parse back, and the answer is NO anyway
        writeln!(out, "# target l={} exceeds n={n}: no seed set reaches it", red.l)?;
        out.push_str(&write_instance(&red.instance));
    }
    Ok(true)
}

pub fn gadget(args: &GadgetArgs, out: &mut String) -> Result<bool> {
    let inst = load_instance(&args.input)?;
    let equal = gadget_bounded_to_equal(&inst, args.t)?;
    writeln!(out, "# thresholds equalized to {}; forced leaves {}", args.t, ids(gadget_leaves(inst.n(), args.t).into_iter()))?;
    out.push_str(&write_instance(&equal));
    Ok(true)
}

pub fn construct(args: &ConstructArgs, out: &mut String) -> Result<bool> {
    let inst = load_instance(&args.input)?;
    let built = construct_small_pts_seeded(&inst, args.seed)?;
    ensure!(is_perfect_target_set(&inst, &built.set), "constructed set is not perfect");
    let bound = ratio_bound(inst.n());
    writeln!(out, "size={} bound={bound} set={}", built.set.len(), format_set(&built.set))?;
    Ok(!(args.bound045 && built.over_bound))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sets_parse_one_based() {
        let x = parse_set(" 3, 1,3 ", 4).unwrap();
        assert_eq!(x.to_vec(), vec![0, 2]);
        assert_eq!(format_set(&x), "1,3");
        assert!(parse_set("", 2).unwrap().is_empty());
        assert!(parse_set("0", 2).is_err());
        assert!(parse_set("3", 2).is_err());
        assert!(parse_set("a", 2).is_err());
    }
}
