//! Exhaustive reference solvers.
//!
//! Nothing here prunes: every answer comes from walking all candidate subsets
//! in (size, lexicographic) order, so results are easy to trust and the
//! tie-breaks are stable. The faster solvers are tested against these.

use std::collections::BTreeSet;

use crate::activation::Propagator;
use crate::error::{Result, TssError};
use crate::instance::{Graph, Instance};
use crate::subsets::{find_subset_of_size_par, Combinations};
use crate::vertex_set::VertexSet;

/// Largest vertex count the whole-power-set oracles accept.
pub const ORACLE_MAX_N: usize = 24;

/// Largest number of candidate seeds `oracle_tss_decision` will examine,
/// `Σ_{i ≤ k} C(n, i)`. Budgeted searches on bigger graphs stay cheap when `k`
/// is small, so the limit is on volume rather than on `n`.
pub const ORACLE_MAX_SUBSETS: u128 = 1 << 24;

fn check_n(n: usize, what: &str) -> Result<()> {
    if n > ORACLE_MAX_N {
        return Err(TssError::TooLarge {
            what: format!("{what} on {n} vertices"),
            cap: ORACLE_MAX_N,
        });
    }
    Ok(())
}

fn binomial_prefix_sum(n: usize, k: usize) -> u128 {
    let mut total = 0u128;
    let mut c = 1u128;
    for i in 0..=k.min(n) {
        total += c;
        c = c * (n - i) as u128 / (i + 1) as u128;
    }
    total
}

/// Some `X` with `|X| ≤ k` and `|S(X)| ≥ l`, the first one in (size,
/// lexicographic) order, or `None` if no such set exists.
pub fn oracle_tss_decision(inst: &Instance, k: usize, l: usize) -> Result<Option<VertexSet>> {
    let n = inst.n();
    if l > n {
        return Ok(None);
    }
    let k = k.min(n);
    let volume = binomial_prefix_sum(n, k);
    if volume > ORACLE_MAX_SUBSETS {
        return Err(TssError::TooLarge {
            what: format!("{volume} candidate seeds (n={n}, k={k})"),
            cap: ORACLE_MAX_SUBSETS as usize,
        });
    }
    let items: Vec<usize> = (0..n).collect();
    let empty = VertexSet::new(n);
    for size in 0..=k {
        let hit = find_subset_of_size_par(
            &items,
            &empty,
            size,
            || Propagator::new(inst),
            |prop, x| prop.run(x) >= l,
        );
        if hit.is_some() {
            return Ok(hit);
        }
    }
    Ok(None)
}

/// A minimum perfect target set; among those, the lexicographically smallest.
pub fn oracle_min_perfect_tss(inst: &Instance) -> Result<VertexSet> {
    let n = inst.n();
    check_n(n, "minimum perfect target set")?;
    let items: Vec<usize> = (0..n).collect();
    let empty = VertexSet::new(n);
    for size in 0..=n {
        let hit = find_subset_of_size_par(
            &items,
            &empty,
            size,
            || Propagator::new(inst),
            |prop, x| prop.run(x) == n,
        );
        if let Some(x) = hit {
            return Ok(x);
        }
    }
    unreachable!("V(G) is always a perfect target set")
}

/// Edge indices (in `Graph::edges` order) with at least one endpoint in `s`.
fn covered_edge_ids(edges: &[(usize, usize)], s: &VertexSet) -> VertexSet {
    let mut out = VertexSet::new(edges.len());
    for (i, &(u, v)) in edges.iter().enumerate() {
        if s.contains(u) || s.contains(v) {
            out.insert(i);
        }
    }
    out
}

/// Every minimal partial vertex cover, by checking all `2^n` subsets and,
/// for each, every single-vertex removal.
pub fn oracle_enum_mpvc(g: &Graph) -> Result<BTreeSet<VertexSet>> {
    let n = g.n();
    check_n(n, "minimal partial vertex cover enumeration")?;
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let mut out = BTreeSet::new();
    for mask in 0u64..1 << n {
        let s: VertexSet = (0..n).filter(|&v| mask >> v & 1 == 1).fold(VertexSet::new(n), |mut s, v| {
            s.insert(v);
            s
        });
        let covered = covered_edge_ids(&edges, &s);
        let minimal = s.iter().all(|v| {
            let mut smaller = s.clone();
            smaller.remove(v);
            covered_edge_ids(&edges, &smaller) != covered
        });
        if minimal {
            out.insert(s);
        }
    }
    Ok(out)
}

/// True if repeatedly deleting vertices with at most `d` remaining neighbours
/// inside `s` deletes all of `s`.
fn peels_to_empty(g: &Graph, s: &VertexSet, d: usize) -> bool {
    let mut alive = s.clone();
    loop {
        let victim = alive
            .iter()
            .find(|&v| g.neighbors(v).iter().filter(|&&u| alive.contains(u)).count() <= d);
        match victim {
            Some(v) => {
                alive.remove(v);
            }
            None => return alive.is_empty(),
        }
    }
}

/// A maximum `S` with `G[S]` `d`-degenerate, lexicographically first among
/// the largest.
pub fn oracle_max_d_degenerate(g: &Graph, d: usize) -> Result<VertexSet> {
    let n = g.n();
    check_n(n, "maximum d-degenerate subgraph")?;
    for size in (0..=n).rev() {
        let mut combos = Combinations::new(n, size);
        while let Some(idx) = combos.advance() {
            let s = VertexSet::from_slice(n, idx);
            if peels_to_empty(g, &s, d) {
                return Ok(s);
            }
        }
    }
    unreachable!("the empty set is d-degenerate")
}

pub fn oracle_has_clique(g: &Graph, k: usize) -> Result<bool> {
    let n = g.n();
    check_n(n, "clique search")?;
    let mut combos = Combinations::new(n, k);
    while let Some(idx) = combos.advance() {
        let pairwise = idx
            .iter()
            .enumerate()
            .all(|(i, &u)| idx[i + 1..].iter().all(|&v| g.has_edge(u, v)));
        if pairwise {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::activation::{closure, is_perfect_target_set};
    use crate::instance::Thresholds;

    fn inst(g: Graph, thr: Vec<usize>) -> Instance {
        Instance::new(g, Thresholds::new(thr)).unwrap()
    }

    fn sets(n: usize, list: &[&[usize]]) -> BTreeSet<VertexSet> {
        list.iter().map(|s| VertexSet::from_slice(n, s)).collect()
    }

    #[test]
    fn decision_on_triangle() {
        let k3 = inst(Graph::complete(3), vec![2; 3]);
        let x = oracle_tss_decision(&k3, 2, 3).unwrap().unwrap();
        assert_eq!(x.to_vec(), vec![0, 1]);
        assert_eq!(oracle_tss_decision(&k3, 1, 3).unwrap(), None);
        assert_eq!(oracle_tss_decision(&k3, 0, 0).unwrap(), Some(VertexSet::new(3)));
        assert_eq!(oracle_tss_decision(&k3, 3, 4).unwrap(), None);
    }

    #[test]
    fn minimum_perfect_sets() {
        let p3 = inst(Graph::path(3), vec![1, 2, 1]);
        assert_eq!(oracle_min_perfect_tss(&p3).unwrap().to_vec(), vec![1]);
        let zero = inst(Graph::cycle(4), vec![0; 4]);
        assert!(oracle_min_perfect_tss(&zero).unwrap().is_empty());
        let k3 = inst(Graph::complete(3), vec![2; 3]);
        assert_eq!(oracle_min_perfect_tss(&k3).unwrap().to_vec(), vec![0, 1]);
    }

    #[test]
    fn minimum_is_below_random_perfect_sets() {
        let g = inst(Graph::cycle(7), vec![2, 1, 2, 2, 1, 2, 1]);
        let best = oracle_min_perfect_tss(&g).unwrap().len();
        for mask in 0u32..1 << 7 {
            let x: Vec<usize> = (0..7).filter(|&v| mask >> v & 1 == 1).collect();
            let x = VertexSet::from_slice(7, &x);
            if is_perfect_target_set(&g, &x) {
                assert!(best <= x.len());
            }
        }
    }

    #[test]
    fn mpvc_small_graphs() {
        let edge = Graph::path(2);
        assert_eq!(oracle_enum_mpvc(&edge).unwrap(), sets(2, &[&[], &[0], &[1]]));
        let p3 = Graph::path(3);
        assert_eq!(
            oracle_enum_mpvc(&p3).unwrap(),
            sets(3, &[&[], &[0], &[1], &[2], &[0, 2]])
        );
        assert_eq!(oracle_enum_mpvc(&Graph::empty(4)).unwrap(), sets(4, &[&[]]));
    }

    #[test]
    fn degenerate_subgraphs() {
        let star = Graph::star(3);
        assert_eq!(oracle_max_d_degenerate(&star, 0).unwrap().to_vec(), vec![1, 2, 3]);
        let tree = Graph::from_edges(6, &[(0, 1), (1, 2), (1, 3), (3, 4)]).unwrap();
        assert_eq!(oracle_max_d_degenerate(&tree, 1).unwrap().len(), 6);
        assert_eq!(oracle_max_d_degenerate(&Graph::cycle(4), 1).unwrap().len(), 3);
    }

    #[test]
    fn cliques() {
        assert!(oracle_has_clique(&Graph::complete(3), 3).unwrap());
        assert!(!oracle_has_clique(&Graph::path(3), 3).unwrap());
        assert!(oracle_has_clique(&Graph::empty(1), 1).unwrap());
        assert!(!oracle_has_clique(&Graph::empty(0), 1).unwrap());
    }

    #[test]
    fn caps() {
        let big = inst(Graph::empty(30), vec![1; 30]);
        assert!(matches!(oracle_min_perfect_tss(&big), Err(TssError::TooLarge { .. })));
        // small budgets on a big graph are still fine
        let x = oracle_tss_decision(&big, 2, 2).unwrap().unwrap();
        assert_eq!(closure(&big, &x).len(), 2);
        assert!(oracle_tss_decision(&big, 15, 30).is_err());
    }
}
