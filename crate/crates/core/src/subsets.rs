//! Subset enumeration in (size, lexicographic) order.

use rayon::prelude::*;

use crate::vertex_set::VertexSet;

/// Index combinations of `size` out of `len`, in lexicographic order,
/// advanced in place.
pub(crate) struct Combinations {
    idx: Vec<usize>,
    len: usize,
    started: bool,
    done: bool,
}

impl Combinations {
    pub(crate) fn new(len: usize, size: usize) -> Self {
        Combinations {
            idx: (0..size).collect(),
            len,
            started: false,
            done: size > len,
        }
    }

    pub(crate) fn advance(&mut self) -> Option<&[usize]> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(&self.idx);
        }
        let k = self.idx.len();
        let mut i = k;
        while i > 0 {
            i -= 1;
            if self.idx[i] < self.len - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                return Some(&self.idx);
            }
        }
        self.done = true;
        None
    }
}

/// Visits every subset of `items` with at most `max_size` elements, smallest
/// first, lexicographic within a size. Stops early when `visit` returns true
/// and hands back that subset.
pub(crate) fn find_subset_seq(
    universe: usize,
    items: &[usize],
    base: &VertexSet,
    max_size: usize,
    mut visit: impl FnMut(&VertexSet) -> bool,
) -> Option<VertexSet> {
    for size in 0..=max_size.min(items.len()) {
        let mut combos = Combinations::new(items.len(), size);
        while let Some(idx) = combos.advance() {
            let mut s = base.clone();
            debug_assert_eq!(s.universe(), universe);
            for &i in idx {
                s.insert(items[i]);
            }
            if visit(&s) {
                return Some(s);
            }
        }
    }
    None
}

/// Parallel variant of [`find_subset_seq`] for one fixed `size`: splits on the
/// first element and keeps the lexicographically first hit, so the answer is
/// independent of the number of workers.
pub(crate) fn find_subset_of_size_par<S, I, P>(
    items: &[usize],
    base: &VertexSet,
    size: usize,
    init: I,
    pred: P,
) -> Option<VertexSet>
where
    I: Fn() -> S + Sync + Send,
    P: Fn(&mut S, &VertexSet) -> bool + Sync + Send,
{
    if size == 0 {
        let mut state = init();
        return pred(&mut state, base).then(|| base.clone());
    }
    if size > items.len() {
        return None;
    }
    (0..=items.len() - size)
        .into_par_iter()
        .map_init(init, |state, first| {
            let rest = &items[first + 1..];
            let mut combos = Combinations::new(rest.len(), size - 1);
            while let Some(idx) = combos.advance() {
                let mut s = base.clone();
                s.insert(items[first]);
                for &i in idx {
                    s.insert(rest[i]);
                }
                if pred(state, &s) {
                    return Some(s);
                }
            }
            None
        })
        .find_first(Option::is_some)
        .flatten()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn combinations_are_lexicographic() {
        let mut c = Combinations::new(4, 2);
        let mut all = Vec::new();
        while let Some(idx) = c.advance() {
            all.push(idx.to_vec());
        }
        assert_eq!(
            all,
            vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]
        );
        let mut empty = Combinations::new(3, 0);
        assert_eq!(empty.advance(), Some(&[][..]));
        assert_eq!(empty.advance(), None);
        assert_eq!(Combinations::new(2, 3).advance(), None);
    }

    #[test]
    fn sequential_order_is_size_then_lex() {
        let items = [1, 3, 5];
        let mut seen = Vec::new();
        find_subset_seq(6, &items, &VertexSet::new(6), 3, |s| {
            seen.push(s.to_vec());
            false
        });
        assert_eq!(
            seen,
            vec![
                vec![],
                vec![1],
                vec![3],
                vec![5],
                vec![1, 3],
                vec![1, 5],
                vec![3, 5],
                vec![1, 3, 5]
            ]
        );
    }

    #[test]
    fn parallel_matches_sequential_first_hit() {
        let items: Vec<usize> = (0..12).collect();
        let pred = |s: &VertexSet| s.iter().sum::<usize>() == 17 && s.contains(9);
        for size in 0..=5 {
            let seq = {
                let mut c = Combinations::new(items.len(), size);
                let mut hit = None;
                while let Some(idx) = c.advance() {
                    let s = VertexSet::from_slice(12, idx);
                    if pred(&s) {
                        hit = Some(s);
                        break;
                    }
                }
                hit
            };
            let par = find_subset_of_size_par(&items, &VertexSet::new(12), size, || (), |_, s| pred(s));
            assert_eq!(seq, par, "size {size}");
        }
    }
}
