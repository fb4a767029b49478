//! Backtracking search for small `(k, s)`-abundant Condorcet domains.
//!
//! Up to relabelling every domain contains the identity order, which is then
//! its lexicographically least member. The search fixes the identity first
//! and adds further orders in strictly increasing lexicographic order. Every
//! candidate must keep each triple inside some never condition, and a subset
//! with `c` distinct suborders and `m` orders still to place is abandoned once
//! `c + m < s`.

use std::collections::BTreeSet;
use std::ops::ControlFlow;

use rayon::prelude::*;

use crate::abundance::RestrictionKernel;
use crate::domain::Domain;
use crate::enumerate::TripleFilter;
use crate::error::{capability, Error, Result};
use crate::order::{AlternativeSet, LinearOrder};
use crate::pattern::{cells_of, pattern_from_positions, FULL_CELLS};
use crate::subsets::Combinations;

/// Largest `n` searched without the long-run flag.
pub const SEARCH_CAP: usize = 8;
/// Largest `n` searched with it.
pub const SEARCH_LONG_CAP: usize = 9;

/// Search parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchSpec {
    pub n: usize,
    pub k: usize,
    pub s: usize,
    pub max_size: usize,
    pub allow_long: bool,
}

impl SearchSpec {
    pub fn new(n: usize, k: usize, s: usize, max_size: usize) -> Self {
        SearchSpec {
            n,
            k,
            s,
            max_size,
            allow_long: false,
        }
    }

    fn validate(&self) -> Result<()> {
        let cap = if self.allow_long {
            SEARCH_LONG_CAP
        } else {
            SEARCH_CAP
        };
        if self.n > cap {
            return Err(capability(
                format!("abundant-domain search for n = {}", self.n),
                cap,
            ));
        }
        if self.n == 0 || self.k == 0 || self.k > self.n {
            return Err(Error::InvalidArgument(format!(
                "need 1 ≤ k ≤ n, got k = {}, n = {}",
                self.k, self.n
            )));
        }
        if self.s == 0 {
            return Err(Error::InvalidArgument("abundance threshold s must be ≥ 1".into()));
        }
        Ok(())
    }
}

/// A smallest `(k, s)`-abundant Condorcet domain on `{1, …, n}` with at most
/// `max_size` orders, or `None` when none exists.
pub fn search_min_abundant(spec: SearchSpec) -> Result<Option<Domain>> {
    spec.validate()?;
    for size in spec.s..=spec.max_size {
        let mut found = None;
        Search::new(spec, size).run(|orders| {
            found = Some(orders.to_vec());
            ControlFlow::Break(())
        });
        if let Some(rankings) = found {
            return Ok(Some(to_domain(spec.n, &rankings)?));
        }
    }
    Ok(None)
}

/// Every `(k, s)`-abundant Condorcet domain of exactly `size` orders, one per
/// isomorphism class, in canonical form and sorted.
pub fn enumerate_min_abundant(spec: SearchSpec, size: usize) -> Result<Vec<Domain>> {
    spec.validate()?;
    if size < spec.s {
        return Ok(Vec::new());
    }
    let search = Search::new(spec, size);
    let seeds = search.second_orders();
    let classes: BTreeSet<Vec<LinearOrder>> = seeds
        .into_par_iter()
        .map(|second| {
            let mut local = BTreeSet::new();
            search.run_from(vec![search.identity(), second], |orders| {
                if let Ok(d) = to_domain(spec.n, orders) {
                    local.insert(d.canonical_form().orders().to_vec());
                }
                ControlFlow::Continue(())
            });
            local
        })
        .reduce(BTreeSet::new, |mut a, b| {
            a.extend(b);
            a
        });
    let alts = AlternativeSet::range(spec.n)?;
    classes
        .into_iter()
        .map(|orders| Domain::new(alts.clone(), orders))
        .collect()
}

fn to_domain(n: usize, rankings: &[Vec<u8>]) -> Result<Domain> {
    Domain::new(
        AlternativeSet::range(n)?,
        rankings
            .iter()
            .map(|r| LinearOrder::from_valid(r.iter().map(|&i| i + 1).collect())),
    )
}

struct Search {
    spec: SearchSpec,
    size: usize,
    triples: Vec<(usize, usize, usize)>,
}

impl Search {
    fn new(spec: SearchSpec, size: usize) -> Self {
        let n = spec.n;
        let mut triples = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    triples.push((i, j, k));
                }
            }
        }
        Search { spec, size, triples }
    }

    fn identity(&self) -> Vec<u8> {
        (0..self.spec.n as u8).collect()
    }

    fn run<F>(&self, mut visit: F)
    where
        F: FnMut(&[Vec<u8>]) -> ControlFlow<()>,
    {
        let start = vec![self.identity()];
        if self.feasible(&start) {
            let _ = self.extend(start, &mut visit);
        }
    }

    fn run_from<F>(&self, start: Vec<Vec<u8>>, mut visit: F)
    where
        F: FnMut(&[Vec<u8>]) -> ControlFlow<()>,
    {
        let _ = self.extend(start, &mut visit);
    }

    /// Admissible second orders, for splitting work across threads.
    fn second_orders(&self) -> Vec<Vec<u8>> {
        let start = vec![self.identity()];
        if self.size < 2 || !self.feasible(&start) {
            return Vec::new();
        }
        let mut out = Vec::new();
        let _ = self.filter(&start).for_each(Some(&start[0]), |perm| {
            let mut next = start.clone();
            next.push(perm.to_vec());
            if self.feasible(&next) {
                out.push(perm.to_vec());
            }
            ControlFlow::Continue(())
        });
        out
    }

    fn extend<F>(&self, mut placed: Vec<Vec<u8>>, visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[Vec<u8>]) -> ControlFlow<()>,
    {
        if placed.len() == self.size {
            return visit(&placed);
        }
        let filter = self.filter(&placed);
        let last = placed.last().cloned().expect("identity placed");
        let mut candidates = Vec::new();
        let _ = filter.for_each(Some(&last), |perm| {
            candidates.push(perm.to_vec());
            ControlFlow::Continue(())
        });
        for perm in candidates {
            placed.push(perm);
            if self.feasible(&placed) {
                self.extend(placed.clone(), visit)?;
            }
            placed.pop();
        }
        ControlFlow::Continue(())
    }

    /// Per-triple allowed patterns for the next order: the triple must stay
    /// inside a never condition, and must gain a new pattern when it can no
    /// longer afford to wait.
    fn filter(&self, placed: &[Vec<u8>]) -> TripleFilter {
        let mut f = TripleFilter::new(self.spec.n);
        let remaining_after = self.size - placed.len() - 1;
        let positions = positions(placed, self.spec.n);
        for &(i, j, k) in &self.triples {
            let used = positions.iter().fold(0u8, |m, pos| {
                m | 1 << pattern_from_positions(pos[i], pos[j], pos[k])
            });
            let forced = self.spec.k == 3 && (used.count_ones() as usize) + remaining_after < self.spec.s;
            let allowed = (0..6u8)
                .filter(|&p| cells_of(used | 1 << p) != FULL_CELLS)
                .filter(|&p| !forced || used >> p & 1 == 0)
                .fold(0u8, |m, p| m | 1 << p);
            f.set(i, j, k, allowed);
        }
        f
    }

    /// `c + m ≥ s` on every k-subset. The triple case is already enforced
    /// by the filter.
    fn feasible(&self, placed: &[Vec<u8>]) -> bool {
        let n = self.spec.n;
        if self.spec.k == 3 && n >= 3 {
            return true;
        }
        let remaining = self.size - placed.len();
        let kernel = RestrictionKernel::from_rankings(placed.to_vec());
        let mut buf = Vec::with_capacity(placed.len());
        Combinations::new(n, self.spec.k).all(|m| kernel.size_with(m, &mut buf) + remaining >= self.spec.s)
    }
}

fn positions(placed: &[Vec<u8>], n: usize) -> Vec<Vec<u8>> {
    placed
        .iter()
        .map(|r| {
            let mut pos = vec![0u8; n];
            for (p, &x) in r.iter().enumerate() {
                pos[x as usize] = p as u8;
            }
            pos
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abundance::{exact_abundance, is_abundant};
    use crate::condorcet::is_condorcet_domain;

    #[test]
    fn two_alternatives() {
        let d = search_min_abundant(SearchSpec::new(2, 2, 2, 2)).unwrap().unwrap();
        assert_eq!(d, Domain::parse_all(&["12", "21"]).unwrap());
    }

    #[test]
    fn three_three_on_five() {
        let d = search_min_abundant(SearchSpec::new(5, 3, 3, 3)).unwrap().unwrap();
        assert_eq!(d.len(), 3);
        assert!(is_condorcet_domain(&d));
        assert!(is_abundant(&d, 3, 3).unwrap());
    }

    #[test]
    fn three_four_on_four() {
        let d = search_min_abundant(SearchSpec::new(4, 3, 4, 6)).unwrap().unwrap();
        assert_eq!(d.len(), 4);
        assert_eq!(exact_abundance(&d, 3).unwrap().s, 4);
        assert!(is_condorcet_domain(&d));
    }

    #[test]
    fn general_k_path() {
        let d = search_min_abundant(SearchSpec::new(4, 2, 2, 3)).unwrap().unwrap();
        assert_eq!(d.len(), 2);
        assert!(is_abundant(&d, 2, 2).unwrap());
    }

    #[test]
    fn impossible_threshold() {
        // a Condorcet domain shows at most four patterns on a triple
        assert_eq!(search_min_abundant(SearchSpec::new(4, 3, 5, 6)).unwrap(), None);
    }

    #[test]
    fn caps_and_ranges() {
        assert!(matches!(
            search_min_abundant(SearchSpec::new(9, 3, 4, 4)),
            Err(Error::Capability { .. })
        ));
        assert!(search_min_abundant(SearchSpec::new(4, 5, 1, 1)).is_err());
        assert!(search_min_abundant(SearchSpec::new(4, 3, 0, 1)).is_err());
    }
}
