//! Diversity indices of profiles.
//!
//! Entropies use the natural logarithm, `-Σ p ln p` over the restricted
//! census, with `0 ln 0 = 0`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::abundance::RestrictionKernel;
use crate::error::{Error, Result};
use crate::order::AlternativeSet;
use crate::profile::Profile;
use crate::subsets::{binomial, Combinations};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IndexKind {
    /// Support size minus one.
    Supp,
    /// Total support size over all k-subsets minus `C(n, k)`.
    SuppK,
    /// Exact abundance of the support at `k`.
    AbundanceK,
    /// Least entropy of a k-subset restriction.
    EntropyK,
    /// Sum of restriction support sizes over all k-subsets.
    AbundanceSumK,
    /// Sum of restriction entropies over all k-subsets.
    EntropySumK,
}

impl IndexKind {
    pub const ALL: [IndexKind; 6] = [
        IndexKind::Supp,
        IndexKind::SuppK,
        IndexKind::AbundanceK,
        IndexKind::EntropyK,
        IndexKind::AbundanceSumK,
        IndexKind::EntropySumK,
    ];

    pub fn name(self) -> &'static str {
        match self {
            IndexKind::Supp => "supp",
            IndexKind::SuppK => "supp_k",
            IndexKind::AbundanceK => "abundance_k",
            IndexKind::EntropyK => "entropy_k",
            IndexKind::AbundanceSumK => "abundance_sum_k",
            IndexKind::EntropySumK => "entropy_sum_k",
        }
    }

    pub fn needs_k(self) -> bool {
        self != IndexKind::Supp
    }
}

impl fmt::Display for IndexKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IndexKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase().replace('-', "_");
        IndexKind::ALL
            .into_iter()
            .find(|k| k.name() == key)
            .ok_or_else(|| Error::Parse(format!("unknown index kind {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IndexValue {
    pub kind: IndexKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    pub value: f64,
    /// First k-subset attaining the minimum, for the min-type kinds.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub argmin: Option<AlternativeSet>,
}

/// Restricted census on one index mask: counts of each distinct suborder.
fn restricted_counts(rankings: &[Vec<u8>], counts: &[u64], mask: u32) -> Vec<u64> {
    let mut keyed: Vec<(u64, u64)> = rankings
        .iter()
        .zip(counts)
        .map(|(r, &c)| (RestrictionKernel::key(r, mask), c))
        .collect();
    keyed.sort_unstable_by_key(|e| e.0);
    let mut out: Vec<u64> = Vec::new();
    let mut last = None;
    for (key, c) in keyed {
        if last == Some(key) {
            *out.last_mut().expect("nonempty") += c;
        } else {
            out.push(c);
            last = Some(key);
        }
    }
    out
}

/// Natural-log Shannon entropy of a count vector.
pub fn entropy(counts: &[u64]) -> f64 {
    let total: u64 = counts.iter().sum();
    if total == 0 {
        return 0.0;
    }
    let t = total as f64;
    counts
        .iter()
        .filter(|&&c| c > 0)
        .map(|&c| {
            let p = c as f64 / t;
            -p * p.ln()
        })
        .sum::<f64>()
        .max(0.0)
}

/// Per-subset `(support size, entropy)` for every k-subset, lexicographic
/// subset order.
fn per_subset(p: &Profile, k: usize) -> Vec<(u32, usize, f64)> {
    let support = p.support();
    let rankings = support.index_rankings();
    let counts: Vec<u64> = p.census().iter().map(|(c, _)| *c).collect();
    let masks: Vec<u32> = Combinations::new(p.n(), k).collect();
    masks
        .into_par_iter()
        .map(|m| {
            let rc = restricted_counts(&rankings, &counts, m);
            (m, rc.len(), entropy(&rc))
        })
        .collect()
}

/// Evaluates one index. `k` is required for every kind except `supp`.
pub fn compute_index(p: &Profile, kind: IndexKind, k: Option<usize>) -> Result<IndexValue> {
    let n = p.n();
    let k = match (kind.needs_k(), k) {
        (false, _) => None,
        (true, None) => {
            return Err(Error::InvalidArgument(format!("index {kind} needs k")));
        }
        (true, Some(k)) if k == 0 || k > n => {
            return Err(Error::InvalidArgument(format!("k = {k} outside 1..={n}")));
        }
        (true, Some(k)) => Some(k),
    };
    let mut argmin = None;
    let value = match kind {
        IndexKind::Supp => (p.census().len() - 1) as f64,
        _ => {
            let kk = k.expect("checked");
            let rows = per_subset(p, kk);
            let select = |m: u32| p.alternatives().select(m);
            match kind {
                IndexKind::SuppK => {
                    let total: u64 = rows.iter().map(|r| r.1 as u64).sum();
                    (total - binomial(n, kk)) as f64
                }
                IndexKind::AbundanceK => {
                    let row = rows
                        .iter()
                        .reduce(|a, b| if b.1 < a.1 { b } else { a })
                        .expect("k-subsets exist");
                    argmin = Some(select(row.0));
                    row.1 as f64
                }
                IndexKind::EntropyK => {
                    let row = rows
                        .iter()
                        .reduce(|a, b| if b.2 < a.2 { b } else { a })
                        .expect("k-subsets exist");
                    argmin = Some(select(row.0));
                    row.2
                }
                IndexKind::AbundanceSumK => rows.iter().map(|r| r.1 as u64).sum::<u64>() as f64,
                IndexKind::EntropySumK => rows.iter().map(|r| r.2).sum(),
                IndexKind::Supp => unreachable!(),
            }
        }
    };
    Ok(IndexValue {
        kind,
        k,
        value,
        argmin,
    })
}

/// Orders two profiles by one index. `Less` means `p1` is less diverse.
pub fn compare_profiles(p1: &Profile, p2: &Profile, kind: IndexKind, k: Option<usize>) -> Result<Ordering> {
    if p1.n() != p2.n() {
        return Err(Error::MismatchedAlternatives(format!(
            "{} vs {} alternatives",
            p1.n(),
            p2.n()
        )));
    }
    let a = compute_index(p1, kind, k)?.value;
    let b = compute_index(p2, kind, k)?.value;
    Ok(a.total_cmp(&b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::Domain;
    use crate::order::LinearOrder;

    fn prof(entries: &[(u64, &str)]) -> Profile {
        let orders: Vec<(u64, LinearOrder)> = entries.iter().map(|(c, s)| (*c, s.parse().unwrap())).collect();
        Profile::new(orders[0].1.alternatives(), orders).unwrap()
    }

    #[test]
    fn kind_names_round_trip() {
        for k in IndexKind::ALL {
            assert_eq!(k.name().parse::<IndexKind>().unwrap(), k);
        }
        assert_eq!("entropy-k".parse::<IndexKind>().unwrap(), IndexKind::EntropyK);
        assert!("gini".parse::<IndexKind>().is_err());
    }

    #[test]
    fn unanimous_is_zero() {
        let u = prof(&[(5, "2413")]);
        for kind in [
            IndexKind::Supp,
            IndexKind::SuppK,
            IndexKind::EntropyK,
            IndexKind::EntropySumK,
        ] {
            assert_eq!(compute_index(&u, kind, Some(3)).unwrap().value, 0.0, "{kind}");
        }
    }

    #[test]
    fn two_equal_masses() {
        let q = prof(&[(2, "123"), (2, "321")]);
        let v = compute_index(&q, IndexKind::EntropyK, Some(2)).unwrap();
        assert!((v.value - 2f64.ln()).abs() < 1e-12);
        let s = compute_index(&q, IndexKind::EntropySumK, Some(2)).unwrap();
        assert!((s.value - 3.0 * 2f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn supp_k_on_single_peaked_support() {
        let q = prof(&[(1, "123"), (1, "213"), (1, "231"), (1, "321")]);
        assert_eq!(compute_index(&q, IndexKind::SuppK, Some(2)).unwrap().value, 3.0);
        assert_eq!(
            compute_index(&q, IndexKind::AbundanceSumK, Some(2))
                .unwrap()
                .value,
            6.0
        );
        let a = compute_index(&q, IndexKind::AbundanceK, Some(3)).unwrap();
        assert_eq!(a.value, 4.0);
    }

    #[test]
    fn supp_k_on_full_domain() {
        let full = Domain::unrestricted(AlternativeSet::range(4).unwrap()).unwrap();
        let q = Profile::uniform(&full).unwrap();
        // C(4,3)(3! - 1)
        assert_eq!(compute_index(&q, IndexKind::SuppK, Some(3)).unwrap().value, 20.0);
    }

    #[test]
    fn errors() {
        let q = prof(&[(1, "12")]);
        assert!(compute_index(&q, IndexKind::EntropyK, None).is_err());
        assert!(compute_index(&q, IndexKind::EntropyK, Some(3)).is_err());
        assert!(compute_index(&q, IndexKind::Supp, None).is_ok());
        assert!(compare_profiles(&q, &prof(&[(1, "123")]), IndexKind::Supp, None).is_err());
    }

    #[test]
    fn comparisons() {
        let u = prof(&[(3, "123")]);
        let q = prof(&[(1, "123"), (2, "321")]);
        assert_eq!(
            compare_profiles(&u, &q, IndexKind::Supp, None).unwrap(),
            Ordering::Less
        );
        assert_eq!(
            compare_profiles(&q, &q, IndexKind::EntropyK, Some(2)).unwrap(),
            Ordering::Equal
        );
    }

    #[test]
    fn entropy_bounds() {
        assert_eq!(entropy(&[4]), 0.0);
        assert!((entropy(&[1, 1, 1, 1]) - 4f64.ln()).abs() < 1e-12);
        assert!(entropy(&[3, 1]) < 2f64.ln());
        assert_eq!(entropy(&[]), 0.0);
    }
}
