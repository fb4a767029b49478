//! (k,s)-abundance: the fewest distinct suborders a domain induces on any
//! set of `k` alternatives.
//!
//! A domain is `(k, s)`-abundant when every restriction to `k` alternatives
//! keeps at least `s` distinct orders, and exactly `(k, s)`-abundant when `s`
//! is the minimum attained. `(2, 2)` is ampleness and `(3, 4)` copiousness.
//!
//! All scans visit k-subsets in lexicographic order of their labels, so
//! reported minimisers are the first ones met.

use std::cmp::Ordering;

use rayon::prelude::*;
use serde::Serialize;

use crate::domain::Domain;
use crate::error::{Error, Result};
use crate::order::AlternativeSet;
use crate::subsets::{binomial, Combinations};

/// Largest `n` for a full abundance vector unless explicitly lifted.
pub const DEFAULT_VECTOR_CAP: usize = 12;

// Below this many order visits a scan runs on the calling thread.
const PARALLEL_THRESHOLD: u64 = 1 << 16;

/// Counts distinct suborders of a fixed domain on index-mask subsets.
///
/// A suborder is packed into a `u64`, four bits per alternative index, so no
/// restricted domain is ever materialised.
pub(crate) struct RestrictionKernel {
    rankings: Vec<Vec<u8>>,
}

impl RestrictionKernel {
    pub fn new(d: &Domain) -> Self {
        RestrictionKernel {
            rankings: d.index_rankings(),
        }
    }

    pub fn from_rankings(rankings: Vec<Vec<u8>>) -> Self {
        RestrictionKernel { rankings }
    }

    #[inline]
    pub fn key(ranking: &[u8], mask: u32) -> u64 {
        ranking
            .iter()
            .filter(|&&x| mask >> x & 1 == 1)
            .fold(0u64, |k, &x| k << 4 | x as u64)
    }

    /// Number of distinct restrictions onto `mask`, using `buf` as scratch.
    pub fn size_with(&self, mask: u32, buf: &mut Vec<u64>) -> usize {
        buf.clear();
        buf.extend(self.rankings.iter().map(|r| Self::key(r, mask)));
        buf.sort_unstable();
        buf.dedup();
        buf.len()
    }

    pub fn len(&self) -> usize {
        self.rankings.len()
    }

    /// Restriction sizes of all k-subsets, in lexicographic subset order.
    pub fn sizes(&self, n: usize, k: usize) -> Vec<(u32, usize)> {
        let masks: Vec<u32> = Combinations::new(n, k).collect();
        let work = masks.len() as u64 * self.len() as u64;
        if work < PARALLEL_THRESHOLD {
            let mut buf = Vec::with_capacity(self.len());
            masks
                .into_iter()
                .map(|m| (m, self.size_with(m, &mut buf)))
                .collect()
        } else {
            masks
                .into_par_iter()
                .map_init(
                    || Vec::with_capacity(self.len()),
                    |buf, m| (m, self.size_with(m, buf)),
                )
                .collect()
        }
    }

    /// Minimum size and the first subset attaining it.
    pub fn min(&self, n: usize, k: usize) -> (usize, u32) {
        self.sizes(n, k)
            .into_iter()
            .enumerate()
            .min_by_key(|&(i, (_, s))| (s, i))
            .map(|(_, (m, s))| (s, m))
            .expect("at least one k-subset")
    }
}

fn check_k(d: &Domain, k: usize) -> Result<()> {
    if k == 0 || k > d.n() {
        return Err(Error::InvalidArgument(format!(
            "subset size k = {k} outside 1..={}",
            d.n()
        )));
    }
    Ok(())
}

/// Exact abundance at one subset size.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Abundance {
    pub k: usize,
    pub s: usize,
    /// Lexicographically least k-subset with exactly `s` suborders.
    pub argmin: AlternativeSet,
}

/// The `s` for which `d` is exactly `(k, s)`-abundant.
pub fn exact_abundance(d: &Domain, k: usize) -> Result<Abundance> {
    check_k(d, k)?;
    let (s, mask) = RestrictionKernel::new(d).min(d.n(), k);
    Ok(Abundance {
        k,
        s,
        argmin: d.alternatives().select(mask),
    })
}

/// Whether every k-subset restriction has at least `s` orders. Stops at the
/// first subset that falls short.
pub fn is_abundant(d: &Domain, k: usize, s: usize) -> Result<bool> {
    check_k(d, k)?;
    if s == 0 {
        return Err(Error::InvalidArgument("abundance threshold s must be ≥ 1".into()));
    }
    if s > d.len() {
        return Ok(false);
    }
    let kernel = RestrictionKernel::new(d);
    let mut buf = Vec::with_capacity(kernel.len());
    Ok(Combinations::new(d.n(), k).all(|m| kernel.size_with(m, &mut buf) >= s))
}

/// Exact abundances for `k = 1, …, n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AbundanceVector {
    pub entries: Vec<usize>,
    pub argmins: Vec<AlternativeSet>,
}

impl AbundanceVector {
    /// Entry for subset size `k` (1-based).
    pub fn get(&self, k: usize) -> Option<usize> {
        k.checked_sub(1).and_then(|i| self.entries.get(i).copied())
    }
}

impl PartialOrd for AbundanceVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for AbundanceVector {
    /// Lexicographic on the entries; argmins do not take part.
    fn cmp(&self, other: &Self) -> Ordering {
        self.entries.cmp(&other.entries)
    }
}

/// Abundance vector of a nonempty domain with at most
/// [`DEFAULT_VECTOR_CAP`] alternatives.
///
/// ```
/// use cdlab::{abundance_vector, generators::black_single_peaked};
/// let v = abundance_vector(&black_single_peaked(4).unwrap()).unwrap();
/// assert_eq!(v.entries, [1, 2, 4, 8]);
/// ```
pub fn abundance_vector(d: &Domain) -> Result<AbundanceVector> {
    abundance_vector_upto(d, d.n(), false)
}

/// Abundance vector truncated at `max_k`. `allow_long` lifts the
/// [`DEFAULT_VECTOR_CAP`] limit.
pub fn abundance_vector_upto(d: &Domain, max_k: usize, allow_long: bool) -> Result<AbundanceVector> {
    if d.is_empty() {
        return Err(Error::EmptyDomain);
    }
    if d.n() > DEFAULT_VECTOR_CAP && !allow_long {
        return Err(crate::error::capability(
            format!("abundance vector over {} alternatives", d.n()),
            DEFAULT_VECTOR_CAP,
        ));
    }
    let kernel = RestrictionKernel::new(d);
    let (entries, argmins) = (1..=max_k.min(d.n()))
        .map(|k| {
            let (s, m) = kernel.min(d.n(), k);
            (s, d.alternatives().select(m))
        })
        .unzip();
    Ok(AbundanceVector { entries, argmins })
}

/// Lexicographic comparison of abundance vectors. `Greater` means `d1`
/// ranks higher.
pub fn compare_abundance(d1: &Domain, d2: &Domain) -> Result<Ordering> {
    if d1.n() != d2.n() {
        return Err(Error::MismatchedAlternatives(format!(
            "{} vs {} alternatives",
            d1.n(),
            d2.n()
        )));
    }
    Ok(abundance_vector(d1)?.cmp(&abundance_vector(d2)?))
}

/// Sum of restriction sizes over all k-subsets.
pub fn abundance_sum(d: &Domain, k: usize) -> Result<u64> {
    check_k(d, k)?;
    Ok(RestrictionKernel::new(d)
        .sizes(d.n(), k)
        .into_iter()
        .map(|(_, s)| s as u64)
        .sum())
}

/// Restriction size of every k-subset, lexicographic subset order.
pub fn restriction_sizes(d: &Domain, k: usize) -> Result<Vec<(AlternativeSet, usize)>> {
    check_k(d, k)?;
    Ok(RestrictionKernel::new(d)
        .sizes(d.n(), k)
        .into_iter()
        .map(|(m, s)| (d.alternatives().select(m), s))
        .collect())
}

/// Number of k-subsets of an `n`-set.
pub fn subset_count(n: usize, k: usize) -> u64 {
    binomial(n, k)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(orders: &[&str]) -> Domain {
        Domain::parse_all(orders).unwrap()
    }

    fn copious8() -> Domain {
        d(&["12345678", "43218765", "65872143", "78563412"])
    }

    /// Independent route: materialise every restriction.
    fn brute_min(dom: &Domain, k: usize) -> usize {
        Combinations::new(dom.n(), k)
            .map(|m| dom.restrict(&dom.alternatives().select(m)).unwrap().len())
            .min()
            .unwrap()
    }

    #[test]
    fn copious_example_is_exactly_three_four() {
        let a = exact_abundance(&copious8(), 3).unwrap();
        assert_eq!(a.s, 4);
        assert_eq!(a.s, brute_min(&copious8(), 3));
        assert!(is_abundant(&copious8(), 3, 4).unwrap());
        assert!(!is_abundant(&copious8(), 3, 5).unwrap());
    }

    #[test]
    fn single_order_has_abundance_one() {
        let one = d(&["2413"]);
        for k in 1..=4 {
            assert_eq!(exact_abundance(&one, k).unwrap().s, 1);
        }
        assert_eq!(abundance_vector(&one).unwrap().entries, [1, 1, 1, 1]);
        assert!(is_abundant(&one, 2, 1).unwrap());
    }

    #[test]
    fn argmin_is_first_minimiser() {
        // pair (1,2) is never reversed, every other pair is
        let dom = d(&["123", "132", "312"]);
        let a = exact_abundance(&dom, 2).unwrap();
        assert_eq!(a.s, 1);
        assert_eq!(a.argmin.labels(), &[1, 2]);
        let dom = d(&["123", "213", "132"]);
        let a = exact_abundance(&dom, 2).unwrap();
        assert_eq!((a.s, a.argmin.labels()), (1, &[1u8, 3][..]));
    }

    #[test]
    fn range_errors() {
        assert!(exact_abundance(&copious8(), 0).is_err());
        assert!(exact_abundance(&copious8(), 9).is_err());
        assert!(is_abundant(&copious8(), 3, 0).is_err());
        assert!(abundance_sum(&copious8(), 9).is_err());
    }

    #[test]
    fn sums() {
        assert_eq!(abundance_sum(&d(&["123"]), 2).unwrap(), 3);
        assert_eq!(abundance_sum(&d(&["123", "213", "231", "321"]), 2).unwrap(), 6);
        let full = Domain::unrestricted(AlternativeSet::range(3).unwrap()).unwrap();
        assert_eq!(abundance_sum(&full, 2).unwrap(), 6);
    }

    #[test]
    fn lexicographic_ranking() {
        let a = AbundanceVector {
            entries: vec![1, 2, 4, 8],
            argmins: vec![],
        };
        let b = AbundanceVector {
            entries: vec![1, 2, 4, 9],
            argmins: vec![],
        };
        assert!(b > a);
        assert_eq!(
            compare_abundance(&copious8(), &copious8()).unwrap(),
            Ordering::Equal
        );
        assert!(compare_abundance(&copious8(), &d(&["123"])).is_err());
    }

    #[test]
    fn large_scan_matches_sequential() {
        let full = Domain::unrestricted(AlternativeSet::range(7).unwrap()).unwrap();
        let kernel = RestrictionKernel::new(&full);
        let par = kernel.sizes(7, 4);
        assert!(par.iter().all(|&(_, s)| s == 24));
        assert_eq!(par.len(), 35);
        assert_eq!(par[0].0, 0b1111);
    }
}
