//! Alternatives and strict linear orders over them.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest number of alternatives a domain may carry.
pub const MAX_ALTERNATIVES: usize = 16;

/// Largest admissible alternative label. Labels index bits of a `u64`.
pub const MAX_LABEL: u8 = 63;

/// Alternative label, `1..=MAX_LABEL`.
pub type Label = u8;

/// A nonempty set of alternatives. The societal axis is ascending label order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AlternativeSet {
    labels: Vec<Label>,
}

impl AlternativeSet {
    /// Builds a set from labels given in any order. Duplicates are rejected.
    pub fn new(labels: impl IntoIterator<Item = Label>) -> Result<Self> {
        let mut labels: Vec<Label> = labels.into_iter().collect();
        labels.sort_unstable();
        if labels.is_empty() {
            return Err(Error::InvalidAlternatives("empty alternative set".into()));
        }
        if let Some(w) = labels.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidAlternatives(format!("duplicate label {}", w[0])));
        }
        if labels[0] == 0 || *labels.last().unwrap() > MAX_LABEL {
            return Err(Error::InvalidAlternatives(format!(
                "labels must lie in 1..={MAX_LABEL}"
            )));
        }
        if labels.len() > MAX_ALTERNATIVES {
            return Err(Error::InvalidAlternatives(format!(
                "{} alternatives (at most {MAX_ALTERNATIVES} supported)",
                labels.len()
            )));
        }
        Ok(AlternativeSet { labels })
    }

    /// The set `{1, ..., n}`.
    pub fn range(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_ALTERNATIVES {
            return Err(Error::InvalidAlternatives(format!(
                "n = {n} outside 1..={MAX_ALTERNATIVES}"
            )));
        }
        Ok(AlternativeSet {
            labels: (1..=n as Label).collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    /// Always false: alternative sets are nonempty by construction.
    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn contains(&self, label: Label) -> bool {
        self.labels.binary_search(&label).is_ok()
    }

    /// Position of `label` along the axis, 0-based.
    pub fn index_of(&self, label: Label) -> Option<usize> {
        self.labels.binary_search(&label).ok()
    }

    /// Bit `l` is set for every label `l`.
    pub fn mask(&self) -> u64 {
        self.labels.iter().fold(0u64, |m, &l| m | 1 << l)
    }

    pub fn is_subset(&self, other: &AlternativeSet) -> bool {
        self.mask() & !other.mask() == 0
    }

    /// True when the set is exactly `{1, ..., n}`.
    pub fn is_initial_segment(&self) -> bool {
        self.labels.iter().enumerate().all(|(i, &l)| l as usize == i + 1)
    }

    /// Labels selected by an index mask (bit `i` selects the `i`-th label).
    pub(crate) fn select(&self, index_mask: u32) -> AlternativeSet {
        AlternativeSet {
            labels: self
                .labels
                .iter()
                .enumerate()
                .filter(|(i, _)| index_mask >> i & 1 == 1)
                .map(|(_, &l)| l)
                .collect(),
        }
    }
}

impl fmt::Display for AlternativeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, l) in self.labels.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for AlternativeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl serde::Serialize for AlternativeSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.labels().serialize(s)
    }
}

impl serde::Serialize for LinearOrder {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.ranking().serialize(s)
    }
}

/// A strict linear order, best alternative first.
///
/// Besides the ranking, an inverse rank table is kept so that pairwise
/// comparisons are constant time. Equality, ordering and hashing only look at
/// the ranking; orders compare lexicographically by it.
#[derive(Clone)]
pub struct LinearOrder {
    ranking: Vec<Label>,
    position: [u8; MAX_LABEL as usize + 1],
}

const ABSENT: u8 = u8::MAX;

impl LinearOrder {
    /// Builds an order from a best-first ranking of distinct labels.
    pub fn new(ranking: Vec<Label>) -> Result<Self> {
        if ranking.is_empty() {
            return Err(Error::Parse("empty ranking".into()));
        }
        if ranking.len() > MAX_ALTERNATIVES {
            return Err(Error::Parse(format!(
                "ranking of {} alternatives (at most {MAX_ALTERNATIVES})",
                ranking.len()
            )));
        }
        let mut position = [ABSENT; MAX_LABEL as usize + 1];
        for (i, &l) in ranking.iter().enumerate() {
            if l == 0 || l > MAX_LABEL {
                return Err(Error::Parse(format!("label {l} outside 1..={MAX_LABEL}")));
            }
            if position[l as usize] != ABSENT {
                return Err(Error::Parse(format!("duplicate label {l}")));
            }
            position[l as usize] = i as u8;
        }
        Ok(LinearOrder { ranking, position })
    }

    /// The ascending order over `alts`.
    pub fn ascending(alts: &AlternativeSet) -> Self {
        Self::new(alts.labels().to_vec()).expect("alternative sets hold valid labels")
    }

    pub(crate) fn from_valid(ranking: Vec<Label>) -> Self {
        let mut position = [ABSENT; MAX_LABEL as usize + 1];
        for (i, &l) in ranking.iter().enumerate() {
            position[l as usize] = i as u8;
        }
        LinearOrder { ranking, position }
    }

    pub fn ranking(&self) -> &[Label] {
        &self.ranking
    }

    pub fn len(&self) -> usize {
        self.ranking.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranking.is_empty()
    }

    /// 0-based rank of `label`, `None` when absent.
    pub fn position(&self, label: Label) -> Option<usize> {
        match self.position.get(label as usize) {
            Some(&p) if p != ABSENT => Some(p as usize),
            _ => None,
        }
    }

    /// Whether `a` is ranked above `b`. Both must be present.
    pub fn prefers(&self, a: Label, b: Label) -> bool {
        self.position[a as usize] < self.position[b as usize]
    }

    /// The set of alternatives this order ranks.
    pub fn alternatives(&self) -> AlternativeSet {
        let mut labels = self.ranking.clone();
        labels.sort_unstable();
        AlternativeSet { labels }
    }

    /// Induced suborder on the labels whose bit is set in `mask`.
    pub fn restrict_mask(&self, mask: u64) -> LinearOrder {
        Self::from_valid(
            self.ranking
                .iter()
                .copied()
                .filter(|&l| mask >> l & 1 == 1)
                .collect(),
        )
    }

    /// Compact rendering: digits run together when every label is a single
    /// digit, otherwise space separated.
    pub fn compact(&self) -> String {
        if self.ranking.iter().all(|&l| l <= 9) {
            self.ranking.iter().map(|l| char::from(b'0' + l)).collect()
        } else {
            self.to_string()
        }
    }
}

impl PartialEq for LinearOrder {
    fn eq(&self, other: &Self) -> bool {
        self.ranking == other.ranking
    }
}

impl Eq for LinearOrder {}

impl Hash for LinearOrder {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.ranking.hash(state)
    }
}

impl PartialOrd for LinearOrder {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for LinearOrder {
    fn cmp(&self, other: &Self) -> Ordering {
        self.ranking.cmp(&other.ranking)
    }
}

impl fmt::Display for LinearOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.ranking.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for LinearOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.compact())
    }
}

/// Splits order text into tokens. A single digit string of length > 1 is
/// read as one label per digit.
fn tokens(text: &str, digit_shorthand: bool) -> Vec<&str> {
    let parts: Vec<&str> = text
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .collect();
    if digit_shorthand
        && parts.len() == 1
        && parts[0].len() > 1
        && parts[0].bytes().all(|b| b.is_ascii_digit())
    {
        (0..parts[0].len()).map(|i| &parts[0][i..i + 1]).collect()
    } else {
        parts
    }
}

fn parse_label(token: &str) -> Result<Label> {
    token
        .parse::<Label>()
        .ok()
        .filter(|&l| (1..=MAX_LABEL).contains(&l))
        .ok_or_else(|| Error::Parse(format!("unknown label {token:?}")))
}

/// Parses an order over `alts`.
///
/// Labels are separated by whitespace or commas; when every label of `alts`
/// is a single digit the labels may also be run together (`"4321"`).
pub fn parse_order(text: &str, alts: &AlternativeSet) -> Result<LinearOrder> {
    let shorthand = alts.labels().iter().all(|&l| l <= 9);
    let mut seen = 0u64;
    let mut ranking = Vec::with_capacity(alts.len());
    for tok in tokens(text, shorthand) {
        let l = parse_label(tok)?;
        if !alts.contains(l) {
            return Err(Error::Parse(format!("unknown label {tok:?}")));
        }
        if seen >> l & 1 == 1 {
            return Err(Error::Parse(format!("duplicate label {l}")));
        }
        seen |= 1 << l;
        ranking.push(l);
    }
    if let Some(&missing) = alts.labels().iter().find(|&&l| seen >> l & 1 == 0) {
        return Err(Error::Parse(format!("missing label {missing}")));
    }
    Ok(LinearOrder::from_valid(ranking))
}

impl FromStr for LinearOrder {
    type Err = Error;

    /// Parses an order without a known alternative set; the alternatives are
    /// whatever labels appear.
    fn from_str(s: &str) -> Result<Self> {
        let ranking = tokens(s, true)
            .into_iter()
            .map(parse_label)
            .collect::<Result<Vec<_>>>()?;
        LinearOrder::new(ranking)
    }
}
