//! Profiles: how many agents hold each order.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::domain::Domain;
use crate::error::{Error, Result};
use crate::order::{AlternativeSet, Label, LinearOrder};

/// A census: distinct orders over a common alternative set, each with a
/// positive multiplicity. Entries are kept sorted by order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Profile {
    alts: AlternativeSet,
    census: Vec<(u64, LinearOrder)>,
    agents: u64,
}

impl Profile {
    /// Builds a profile, summing the counts of repeated orders.
    pub fn new(alts: AlternativeSet, entries: impl IntoIterator<Item = (u64, LinearOrder)>) -> Result<Self> {
        let mut merged: BTreeMap<LinearOrder, u64> = BTreeMap::new();
        for (count, order) in entries {
            if count == 0 {
                return Err(Error::Data(format!("order {order} has multiplicity 0")));
            }
            if order.alternatives() != alts {
                return Err(Error::InvalidArgument(format!(
                    "order {order} is not a permutation of {alts}"
                )));
            }
            *merged.entry(order).or_default() += count;
        }
        let census: Vec<(u64, LinearOrder)> = merged.into_iter().map(|(o, c)| (c, o)).collect();
        let agents = census.iter().map(|(c, _)| c).sum();
        if agents == 0 {
            return Err(Error::Data("a profile needs at least one agent".into()));
        }
        Ok(Profile { alts, census, agents })
    }

    /// One agent per listed order; repeats accumulate.
    pub fn from_agents(orders: impl IntoIterator<Item = LinearOrder>) -> Result<Self> {
        let orders: Vec<LinearOrder> = orders.into_iter().collect();
        let first = orders
            .first()
            .ok_or_else(|| Error::Data("a profile needs at least one agent".into()))?;
        Profile::new(first.alternatives(), orders.into_iter().map(|o| (1, o)))
    }

    /// One agent per order of `d`.
    pub fn uniform(d: &Domain) -> Result<Self> {
        Profile::new(d.alternatives().clone(), d.iter().map(|o| (1, o.clone())))
    }

    pub fn alternatives(&self) -> &AlternativeSet {
        &self.alts
    }

    pub fn n(&self) -> usize {
        self.alts.len()
    }

    /// Total number of agents.
    pub fn agents(&self) -> u64 {
        self.agents
    }

    pub fn census(&self) -> &[(u64, LinearOrder)] {
        &self.census
    }

    pub fn count(&self, order: &LinearOrder) -> u64 {
        self.census
            .binary_search_by(|(_, o)| o.cmp(order))
            .map_or(0, |i| self.census[i].0)
    }

    /// The distinct orders.
    pub fn support(&self) -> Domain {
        Domain::from_sorted_unchecked(
            self.alts.clone(),
            self.census.iter().map(|(_, o)| o.clone()).collect(),
        )
    }

    /// Whether every agent holds the same order.
    pub fn is_unanimous(&self) -> bool {
        self.census.len() == 1
    }

    /// Restriction to `subset`; counts of orders that coincide there add up.
    pub fn restrict(&self, subset: &AlternativeSet) -> Result<Profile> {
        if !subset.is_subset(&self.alts) {
            return Err(Error::InvalidAlternatives(format!(
                "{subset} is not a subset of {}",
                self.alts
            )));
        }
        let mask = subset.mask();
        Profile::new(
            subset.clone(),
            self.census.iter().map(|(c, o)| (*c, o.restrict_mask(mask))),
        )
    }

    /// Restriction with one alternative deleted.
    pub fn without(&self, label: Label) -> Result<Profile> {
        let rest: Vec<Label> = self
            .alts
            .labels()
            .iter()
            .copied()
            .filter(|&l| l != label)
            .collect();
        if rest.len() == self.alts.len() {
            return Err(Error::InvalidAlternatives(format!(
                "alternative {label} is not in {}",
                self.alts
            )));
        }
        self.restrict(&AlternativeSet::new(rest)?)
    }

    /// The alternative every agent ranks first, if any.
    pub fn universal_top(&self) -> Option<Label> {
        let top = self.census[0].1.ranking()[0];
        self.census
            .iter()
            .all(|(_, o)| o.ranking()[0] == top)
            .then_some(top)
    }

    /// Agent-weighted mean position (0 = top) of each alternative.
    pub fn mean_positions(&self) -> Vec<(Label, f64)> {
        self.alts
            .labels()
            .iter()
            .map(|&l| {
                let total: u64 = self
                    .census
                    .iter()
                    .map(|(c, o)| c * o.position(l).expect("order over alts") as u64)
                    .sum();
                (l, total as f64 / self.agents as f64)
            })
            .collect()
    }

    /// The `m` alternatives with the lowest mean position, ignoring
    /// `exclude`; ties go to the smaller label.
    pub fn most_popular(&self, m: usize, exclude: &[Label]) -> Result<AlternativeSet> {
        let mut ranked: Vec<(Label, f64)> = self
            .mean_positions()
            .into_iter()
            .filter(|(l, _)| !exclude.contains(l))
            .collect();
        if m == 0 || m > ranked.len() {
            return Err(Error::InvalidArgument(format!(
                "cannot pick {m} of {} alternatives",
                ranked.len()
            )));
        }
        ranked.sort_by(|a, b| a.1.total_cmp(&b.1).then(a.0.cmp(&b.0)));
        AlternativeSet::new(ranked[..m].iter().map(|(l, _)| *l))
    }

    pub fn to_json(&self) -> ProfileJson {
        ProfileJson {
            n: self.n(),
            alternatives: (self.alts != AlternativeSet::range(self.n()).expect("n ≥ 1"))
                .then(|| self.alts.labels().to_vec()),
            census: self
                .census
                .iter()
                .map(|(c, o)| CensusEntry {
                    count: *c,
                    order: o.ranking().to_vec(),
                })
                .collect(),
        }
    }

    pub fn from_json(json: &ProfileJson) -> Result<Profile> {
        let alts = match &json.alternatives {
            Some(l) => AlternativeSet::new(l.iter().copied())?,
            None => AlternativeSet::range(json.n)?,
        };
        if alts.len() != json.n {
            return Err(Error::Data(format!(
                "n = {} but {} alternatives listed",
                json.n,
                alts.len()
            )));
        }
        let entries = json
            .census
            .iter()
            .map(|e| Ok((e.count, LinearOrder::new(e.order.clone())?)))
            .collect::<Result<Vec<_>>>()?;
        Profile::new(alts, entries)
    }
}

/// Restriction of a profile to a subset of its alternatives.
pub fn restrict_profile(p: &Profile, subset: &AlternativeSet) -> Result<Profile> {
    p.restrict(subset)
}

/// The distinct orders of a profile.
pub fn support(p: &Profile) -> Domain {
    p.support()
}

/// Serialised profile.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfileJson {
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alternatives: Option<Vec<Label>>,
    pub census: Vec<CensusEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusEntry {
    pub count: u64,
    pub order: Vec<Label>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn o(s: &str) -> LinearOrder {
        s.parse().unwrap()
    }

    fn p(entries: &[(u64, &str)]) -> Profile {
        Profile::from_json(&ProfileJson {
            n: entries[0].1.len(),
            alternatives: None,
            census: entries
                .iter()
                .map(|(c, s)| CensusEntry {
                    count: *c,
                    order: o(s).ranking().to_vec(),
                })
                .collect(),
        })
        .unwrap()
    }

    #[test]
    fn support_and_unanimity() {
        let u = p(&[(3, "123")]);
        assert!(u.is_unanimous());
        assert_eq!(u.support(), Domain::parse_all(&["123"]).unwrap());
        let q = p(&[(2, "123"), (1, "321")]);
        assert_eq!(q.support().len(), 2);
        assert_eq!(q.agents(), 3);
        assert_eq!(q.count(&o("321")), 1);
    }

    #[test]
    fn restriction_merges_counts() {
        let q = p(&[(2, "123"), (1, "213")]);
        let r = q.restrict(&AlternativeSet::new([1, 3]).unwrap()).unwrap();
        assert_eq!(r.census(), &[(3, o("13"))]);
        let q = p(&[(1, "123"), (1, "321")]);
        let r = restrict_profile(&q, &AlternativeSet::new([1, 2]).unwrap()).unwrap();
        assert_eq!(r.census(), &[(1, o("12")), (1, o("21"))]);
        assert_eq!(r.agents(), q.agents());
        assert!(q.restrict(&AlternativeSet::new([4]).unwrap()).is_err());
    }

    #[test]
    fn duplicates_merge_and_zero_rejected() {
        let alts = AlternativeSet::range(2).unwrap();
        let q = Profile::new(alts.clone(), [(1, o("12")), (2, o("12"))]).unwrap();
        assert_eq!(q.census(), &[(3, o("12"))]);
        assert!(Profile::new(alts.clone(), [(0, o("12"))]).is_err());
        assert!(Profile::new(alts, []).is_err());
    }

    #[test]
    fn popularity() {
        let q = p(&[(2, "1234"), (1, "1432"), (1, "1324")]);
        assert_eq!(q.universal_top(), Some(1));
        let mp: BTreeMap<Label, f64> = q.mean_positions().into_iter().collect();
        assert_eq!((mp[&1], mp[&2], mp[&3], mp[&4]), (0.0, 1.75, 1.75, 2.5));
        // 2 and 3 tie; both fit
        let top2 = q.most_popular(2, &[1]).unwrap();
        assert_eq!(top2.labels(), &[2, 3]);
        assert_eq!(p(&[(1, "12"), (1, "21")]).universal_top(), None);
    }

    #[test]
    fn json_round_trip() {
        let q = p(&[(2, "123"), (1, "321")]);
        let text = serde_json::to_string(&q.to_json()).unwrap();
        assert_eq!(
            text,
            r#"{"n":3,"census":[{"count":2,"order":[1,2,3]},{"count":1,"order":[3,2,1]}]}"#
        );
        let back: ProfileJson = serde_json::from_str(&text).unwrap();
        assert_eq!(Profile::from_json(&back).unwrap(), q);
    }
}
