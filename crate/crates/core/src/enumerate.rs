//! Lexicographic enumeration of permutations whose every triple pattern lies
//! in a per-triple allowed set.
//!
//! Permutations are built best-first over alternative indices `0..n`. Placing
//! an alternative below two already placed ones fixes the pattern on that
//! triple, so violations are rejected as soon as the third member of a triple
//! is placed.

use std::ops::ControlFlow;

use crate::pattern::pattern_from_positions;

#[derive(Clone)]
pub(crate) struct TripleFilter {
    n: usize,
    allowed: Vec<u8>,
}

impl TripleFilter {
    /// Every pattern allowed on every triple.
    pub fn new(n: usize) -> Self {
        TripleFilter {
            n,
            allowed: vec![0b111111; n * n * n],
        }
    }

    #[inline]
    fn slot(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.n + j) * self.n + k
    }

    /// Sets the allowed pattern mask of triple `i < j < k` (indices).
    pub fn set(&mut self, i: usize, j: usize, k: usize, mask: u8) {
        let s = self.slot(i, j, k);
        self.allowed[s] = mask;
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> u8 {
        self.allowed[self.slot(i, j, k)]
    }

    /// Calls `visit` with every admissible permutation in lexicographic
    /// order. With `after = Some(p)` only permutations strictly greater than
    /// `p` are produced.
    pub fn for_each<F>(&self, after: Option<&[u8]>, mut visit: F) -> ControlFlow<()>
    where
        F: FnMut(&[u8]) -> ControlFlow<()>,
    {
        if self.allowed.contains(&0) && self.n >= 3 {
            return ControlFlow::Continue(());
        }
        let mut state = State {
            perm: Vec::with_capacity(self.n),
            pos: vec![u8::MAX; self.n],
        };
        self.extend(&mut state, after, true, &mut visit)
    }

    fn extend<F>(&self, st: &mut State, after: Option<&[u8]>, tight: bool, visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[u8]) -> ControlFlow<()>,
    {
        let depth = st.perm.len();
        if depth == self.n {
            if tight && after.is_some() {
                return ControlFlow::Continue(());
            }
            return visit(&st.perm);
        }
        let floor = match (tight, after) {
            (true, Some(b)) => b[depth],
            _ => 0,
        };
        for x in floor as usize..self.n {
            if st.pos[x] != u8::MAX || !self.compatible(st, x) {
                continue;
            }
            st.pos[x] = depth as u8;
            st.perm.push(x as u8);
            let still_tight = tight && after.is_some() && x as u8 == floor;
            let flow = self.extend(st, after, still_tight, visit);
            st.perm.pop();
            st.pos[x] = u8::MAX;
            flow?;
        }
        ControlFlow::Continue(())
    }

    /// Whether placing `x` next keeps every completed triple allowed.
    fn compatible(&self, st: &State, x: usize) -> bool {
        let px = st.perm.len() as u8;
        for (iy, &y) in st.perm.iter().enumerate() {
            for &z in &st.perm[iy + 1..] {
                let (y, z) = (y as usize, z as usize);
                let mut t = [(y, st.pos[y]), (z, st.pos[z]), (x, px)];
                t.sort_unstable_by_key(|e| e.0);
                let p = pattern_from_positions(t[0].1, t[1].1, t[2].1);
                if self.get(t[0].0, t[1].0, t[2].0) >> p & 1 == 0 {
                    return false;
                }
            }
        }
        true
    }
}

struct State {
    perm: Vec<u8>,
    pos: Vec<u8>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn collect(f: &TripleFilter, after: Option<&[u8]>) -> Vec<Vec<u8>> {
        let mut out = Vec::new();
        let _ = f.for_each(after, |p| {
            out.push(p.to_vec());
            ControlFlow::Continue(())
        });
        out
    }

    #[test]
    fn unconstrained_yields_all_permutations_in_order() {
        let all = collect(&TripleFilter::new(4), None);
        assert_eq!(all.len(), 24);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn strict_lower_bound() {
        let f = TripleFilter::new(3);
        let got = collect(&f, Some(&[1, 0, 2]));
        assert_eq!(got, vec![vec![1, 2, 0], vec![2, 0, 1], vec![2, 1, 0]]);
        assert!(collect(&f, Some(&[2, 1, 0])).is_empty());
    }

    #[test]
    fn pattern_mask_filters() {
        let mut f = TripleFilter::new(3);
        f.set(0, 1, 2, 0b000001); // only 123
        assert_eq!(collect(&f, None), vec![vec![0, 1, 2]]);
    }

    #[test]
    fn early_stop() {
        let f = TripleFilter::new(5);
        let mut seen = 0;
        let flow = f.for_each(None, |_| {
            seen += 1;
            if seen == 3 {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        });
        assert!(flow.is_break());
        assert_eq!(seen, 3);
    }
}
