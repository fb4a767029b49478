//! Domains: deduplicated sets of linear orders over a common alternative set.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::order::{AlternativeSet, Label, LinearOrder, MAX_LABEL};
use crate::pattern::{Triple, TriplePatternSet};

/// A set of linear orders over `alternatives`, stored sorted and deduplicated.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Domain {
    alts: AlternativeSet,
    orders: Vec<LinearOrder>,
}

impl Domain {
    /// Builds a domain; every order must rank exactly `alts`.
    pub fn new(alts: AlternativeSet, orders: impl IntoIterator<Item = LinearOrder>) -> Result<Self> {
        let mut orders: Vec<LinearOrder> = orders.into_iter().collect();
        for o in &orders {
            if o.len() != alts.len() || o.ranking().iter().any(|&l| !alts.contains(l)) {
                return Err(Error::InvalidArgument(format!(
                    "order {o} is not a permutation of {alts}"
                )));
            }
        }
        orders.sort_unstable();
        orders.dedup();
        Ok(Domain { alts, orders })
    }

    /// Builds a domain whose alternative set is read off the first order.
    pub fn from_orders(orders: impl IntoIterator<Item = LinearOrder>) -> Result<Self> {
        let orders: Vec<LinearOrder> = orders.into_iter().collect();
        let first = orders.first().ok_or(Error::EmptyDomain)?;
        Domain::new(first.alternatives(), orders)
    }

    /// Parses each string with [`LinearOrder::from_str`](std::str::FromStr).
    ///
    /// ```
    /// use cdlab::Domain;
    /// let d = Domain::parse_all(&["321", "123", "123"]).unwrap();
    /// assert_eq!(d.len(), 2);
    /// assert_eq!(d.to_string(), "{123, 321}");
    /// ```
    pub fn parse_all<S: AsRef<str>>(orders: &[S]) -> Result<Self> {
        let parsed = orders
            .iter()
            .map(|s| s.as_ref().parse::<LinearOrder>())
            .collect::<Result<Vec<_>>>()?;
        Domain::from_orders(parsed)
    }

    /// The empty domain over `alts`.
    pub fn empty(alts: AlternativeSet) -> Self {
        Domain {
            alts,
            orders: Vec::new(),
        }
    }

    /// All `n!` orders over `alts`; at most 10 alternatives.
    pub fn unrestricted(alts: AlternativeSet) -> Result<Self> {
        if alts.len() > 10 {
            return Err(crate::error::capability(
                format!("unrestricted domain on {} alternatives", alts.len()),
                10,
            ));
        }
        let filter = crate::enumerate::TripleFilter::new(alts.len());
        let mut orders = Vec::new();
        let _ = filter.for_each(None, |perm| {
            orders.push(LinearOrder::from_valid(
                perm.iter().map(|&i| alts.labels()[i as usize]).collect(),
            ));
            std::ops::ControlFlow::Continue(())
        });
        Ok(Domain { alts, orders })
    }

    /// Caller guarantees the orders are valid permutations of `alts`,
    /// sorted and distinct.
    pub(crate) fn from_sorted_unchecked(alts: AlternativeSet, orders: Vec<LinearOrder>) -> Self {
        debug_assert!(orders.windows(2).all(|w| w[0] < w[1]));
        Domain { alts, orders }
    }

    pub fn alternatives(&self) -> &AlternativeSet {
        &self.alts
    }

    /// Number of alternatives.
    pub fn n(&self) -> usize {
        self.alts.len()
    }

    pub fn len(&self) -> usize {
        self.orders.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orders.is_empty()
    }

    pub fn orders(&self) -> &[LinearOrder] {
        &self.orders
    }

    pub fn iter(&self) -> std::slice::Iter<'_, LinearOrder> {
        self.orders.iter()
    }

    pub fn contains(&self, order: &LinearOrder) -> bool {
        self.orders.binary_search(order).is_ok()
    }

    /// Whether the ascending order over the alternatives is a member.
    pub fn is_unitary(&self) -> bool {
        self.contains(&LinearOrder::ascending(&self.alts))
    }

    /// A copy with `order` added.
    pub fn with_order(&self, order: LinearOrder) -> Result<Self> {
        Domain::new(
            self.alts.clone(),
            self.orders.iter().cloned().chain(std::iter::once(order)),
        )
    }

    pub fn is_subset(&self, other: &Domain) -> bool {
        self.alts == other.alts && self.orders.iter().all(|o| other.contains(o))
    }

    /// Rankings in alternative-index space (`0..n` along the axis).
    pub(crate) fn index_rankings(&self) -> Vec<Vec<u8>> {
        let mut index = [0u8; MAX_LABEL as usize + 1];
        for (i, &l) in self.alts.labels().iter().enumerate() {
            index[l as usize] = i as u8;
        }
        self.orders
            .iter()
            .map(|o| o.ranking().iter().map(|&l| index[l as usize]).collect())
            .collect()
    }

    /// The set of suborders induced on `subset`.
    pub fn restrict(&self, subset: &AlternativeSet) -> Result<Domain> {
        if !subset.is_subset(&self.alts) {
            return Err(Error::InvalidAlternatives(format!(
                "{subset} is not contained in {}",
                self.alts
            )));
        }
        let mask = subset.mask();
        let mut orders: Vec<LinearOrder> = self.orders.iter().map(|o| o.restrict_mask(mask)).collect();
        orders.sort_unstable();
        orders.dedup();
        Ok(Domain {
            alts: subset.clone(),
            orders,
        })
    }

    /// Distinct patterns induced on `triple`.
    pub fn triple_pattern_set(&self, triple: Triple) -> Result<TriplePatternSet> {
        if triple.labels().iter().any(|&l| !self.alts.contains(l)) {
            return Err(Error::InvalidArgument(format!(
                "triple {triple} is not within {}",
                self.alts
            )));
        }
        let patterns = self.orders.iter().fold(0u8, |m, o| m | 1 << triple.pattern_of(o));
        Ok(TriplePatternSet { triple, patterns })
    }

    /// Applies `map` pointwise to every order.
    pub fn relabel(&self, map: &Relabeling) -> Result<Domain> {
        if map.source() != self.alts {
            return Err(Error::InvalidArgument(format!(
                "relabeling is defined on {} but the domain is over {}",
                map.source(),
                self.alts
            )));
        }
        Domain::new(map.target(), self.orders.iter().map(|o| map.apply(o)))
    }

    /// Lexicographically least relabeling onto `{1, ..., n}`.
    ///
    /// The least order any domain can start with is `12…n`, which some
    /// relabeling always achieves, so only the `|D|` relabelings sending a
    /// member to `12…n` are candidates.
    pub fn canonical_form(&self) -> Domain {
        let n = self.n();
        let target = AlternativeSet::range(n).expect("n within limits");
        let mut best: Option<Vec<LinearOrder>> = None;
        for anchor in &self.orders {
            let mut rename = [0u8; MAX_LABEL as usize + 1];
            for (i, &l) in anchor.ranking().iter().enumerate() {
                rename[l as usize] = i as u8 + 1;
            }
            let mut orders: Vec<LinearOrder> = self
                .orders
                .iter()
                .map(|o| LinearOrder::from_valid(o.ranking().iter().map(|&l| rename[l as usize]).collect()))
                .collect();
            orders.sort_unstable();
            if best.as_ref().is_none_or(|b| orders < *b) {
                best = Some(orders);
            }
        }
        Domain {
            alts: target,
            orders: best.unwrap_or_default(),
        }
    }

    pub fn is_isomorphic(&self, other: &Domain) -> bool {
        self.n() == other.n() && self.len() == other.len() && self.canonical_form() == other.canonical_form()
    }

    /// Relabels so that the lexicographically least order becomes ascending.
    /// The alternative set is unchanged.
    pub fn make_unitary(&self) -> Result<(Domain, Relabeling)> {
        let least = self.orders.first().ok_or(Error::EmptyDomain)?;
        let map = Relabeling::new(
            least
                .ranking()
                .iter()
                .copied()
                .zip(self.alts.labels().iter().copied()),
        )?;
        Ok((self.relabel(&map)?, map))
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, o) in self.orders.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", o.compact())?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Domain{} {self}", self.alts)
    }
}

impl<'a> IntoIterator for &'a Domain {
    type Item = &'a LinearOrder;
    type IntoIter = std::slice::Iter<'a, LinearOrder>;

    fn into_iter(self) -> Self::IntoIter {
        self.orders.iter()
    }
}

/// A bijection between two alternative sets of equal size.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Relabeling {
    map: BTreeMap<Label, Label>,
}

impl Relabeling {
    pub fn new(pairs: impl IntoIterator<Item = (Label, Label)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (from, to) in pairs {
            if map.insert(from, to).is_some() {
                return Err(Error::InvalidArgument(format!("relabeling maps {from} twice")));
            }
        }
        let mut targets: Vec<Label> = map.values().copied().collect();
        targets.sort_unstable();
        if targets.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidArgument("relabeling is not injective".into()));
        }
        if map.is_empty() {
            return Err(Error::InvalidArgument("empty relabeling".into()));
        }
        AlternativeSet::new(targets)?;
        Ok(Relabeling { map })
    }

    pub fn identity(alts: &AlternativeSet) -> Self {
        Relabeling {
            map: alts.labels().iter().map(|&l| (l, l)).collect(),
        }
    }

    pub fn source(&self) -> AlternativeSet {
        AlternativeSet::new(self.map.keys().copied()).expect("validated on construction")
    }

    pub fn target(&self) -> AlternativeSet {
        AlternativeSet::new(self.map.values().copied()).expect("validated on construction")
    }

    pub fn get(&self, label: Label) -> Option<Label> {
        self.map.get(&label).copied()
    }

    pub fn inverse(&self) -> Relabeling {
        Relabeling {
            map: self.map.iter().map(|(&a, &b)| (b, a)).collect(),
        }
    }

    pub fn pairs(&self) -> impl Iterator<Item = (Label, Label)> + '_ {
        self.map.iter().map(|(&a, &b)| (a, b))
    }

    pub fn apply(&self, order: &LinearOrder) -> LinearOrder {
        LinearOrder::from_valid(order.ranking().iter().map(|l| self.map[l]).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(orders: &[&str]) -> Domain {
        Domain::parse_all(orders).unwrap()
    }

    fn set(labels: &[u8]) -> AlternativeSet {
        AlternativeSet::new(labels.iter().copied()).unwrap()
    }

    #[test]
    fn restriction_examples() {
        let r = d(&["123", "321"]).restrict(&set(&[1, 3])).unwrap();
        assert_eq!(r, d(&["13", "31"]));
        let copious8 = d(&["12345678", "43218765", "65872143", "78563412"]);
        let r = copious8.restrict(&set(&[1, 2, 3])).unwrap();
        assert_eq!(r, d(&["123", "321", "213", "312"]));
        assert_eq!(copious8.restrict(copious8.alternatives()).unwrap(), copious8);
        assert!(copious8.restrict(&set(&[1, 9])).is_err());
    }

    #[test]
    fn triple_patterns() {
        let t = Triple::new(1, 2, 3).unwrap();
        assert_eq!(d(&["123", "321"]).triple_pattern_set(t).unwrap().len(), 2);
        let all = Domain::unrestricted(set(&[1, 2, 3])).unwrap();
        assert_eq!(all.triple_pattern_set(t).unwrap().patterns, 0b111111);
        // Black single-peaked on three alternatives: 2 is never last.
        let black: Vec<LinearOrder> = all.iter().filter(|o| o.ranking()[2] != 2).cloned().collect();
        let ps = Domain::from_orders(black).unwrap().triple_pattern_set(t).unwrap();
        assert_eq!(ps.orders(), d(&["123", "213", "231", "321"]).orders());
        assert!(d(&["12", "21"]).triple_pattern_set(t).is_err());
    }

    #[test]
    fn relabel_examples() {
        let id = Relabeling::identity(&set(&[1, 2]));
        assert_eq!(d(&["12"]).relabel(&id).unwrap(), d(&["12"]));
        let swap = Relabeling::new([(1, 2), (2, 1)]).unwrap();
        assert_eq!(d(&["12"]).relabel(&swap).unwrap(), d(&["21"]));
        let m = Relabeling::new([(2, 1), (1, 2), (3, 3)]).unwrap();
        assert_eq!(d(&["213", "312"]).relabel(&m).unwrap(), d(&["123", "321"]));
        assert!(Relabeling::new([(1, 2), (2, 2)]).is_err());
        assert!(d(&["123"]).relabel(&swap).is_err());
    }

    #[test]
    fn unitary_form() {
        let (u, map) = d(&["213", "312"]).make_unitary().unwrap();
        assert_eq!(u, d(&["123", "321"]));
        assert_eq!(map, Relabeling::new([(2, 1), (1, 2), (3, 3)]).unwrap());
        let (u, map) = d(&["123", "231"]).make_unitary().unwrap();
        assert_eq!(u, d(&["123", "231"]));
        assert_eq!(map, Relabeling::identity(&set(&[1, 2, 3])));
        assert_eq!(
            Domain::empty(set(&[1, 2])).make_unitary().unwrap_err(),
            Error::EmptyDomain
        );
    }

    #[test]
    fn canonical_form_examples() {
        assert_eq!(d(&["21"]).canonical_form(), d(&["12"]));
        let a = d(&["213", "312"]);
        let b = d(&["123", "321"]);
        assert!(a.is_isomorphic(&b));
        // non-initial labels map onto 1..n
        let c = Domain::parse_all(&["5 9 2", "2 9 5"]).unwrap().canonical_form();
        assert_eq!(c, d(&["123", "321"]));
    }

    #[test]
    fn new_rejects_foreign_orders() {
        let o: LinearOrder = "132".parse().unwrap();
        assert!(Domain::new(set(&[1, 2, 4]), [o]).is_err());
    }
}
