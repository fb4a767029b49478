//! Value restriction, never conditions, maximality and related searches.
//!
//! A domain is a Condorcet domain iff on every triple some `(alternative,
//! rank)` cell is never occupied, i.e. the triple satisfies a never
//! condition. Per triple we keep the 9-bit mask of occupied cells; a never
//! condition holds iff a bit is free.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::ops::ControlFlow;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::domain::Domain;
use crate::enumerate::TripleFilter;
use crate::error::{capability, Error, Result};
use crate::order::{AlternativeSet, LinearOrder};
use crate::pattern::{cell_bit, pattern_from_positions, Triple, FULL_CELLS, PATTERN_CELLS};

/// Largest alternative count for searches over all `n!` candidate orders.
pub const MAX_SEARCH_ALTERNATIVES: usize = 10;

/// Rank slot inside a triple.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Slot {
    Top,
    Middle,
    Bottom,
}

impl Slot {
    pub fn rank(self) -> u8 {
        match self {
            Slot::Top => 1,
            Slot::Middle => 2,
            Slot::Bottom => 3,
        }
    }

    fn letter(self) -> char {
        match self {
            Slot::Top => 't',
            Slot::Middle => 'm',
            Slot::Bottom => 'b',
        }
    }

    fn from_rank(r: u8) -> Slot {
        match r {
            1 => Slot::Top,
            2 => Slot::Middle,
            _ => Slot::Bottom,
        }
    }
}

/// Positional never condition `iNj`: the `i`-th alternative of a triple
/// along the axis is never at rank `j` within the triple.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct FishburnCondition {
    pub position: u8,
    pub rank: u8,
}

impl FishburnCondition {
    pub fn new(position: u8, rank: u8) -> Result<Self> {
        if !(1..=3).contains(&position) || !(1..=3).contains(&rank) {
            return Err(Error::InvalidArgument(format!(
                "never condition {position}N{rank} outside 1..=3"
            )));
        }
        Ok(FishburnCondition { position, rank })
    }

    /// All nine conditions in lexicographic order `1N1, 1N2, …, 3N3`.
    pub fn all() -> impl Iterator<Item = FishburnCondition> {
        (1..=3).flat_map(|i| (1..=3).map(move |j| FishburnCondition { position: i, rank: j }))
    }

    pub fn cell(self) -> u16 {
        cell_bit(self.position, self.rank)
    }
}

impl fmt::Display for FishburnCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}N{}", self.position, self.rank)
    }
}

impl FromStr for FishburnCondition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let b = s.trim().as_bytes();
        if b.len() != 3 || b[1] != b'N' || !b[0].is_ascii_digit() || !b[2].is_ascii_digit() {
            return Err(Error::Parse(format!("bad never condition {s:?}")));
        }
        FishburnCondition::new(b[0] - b'0', b[2] - b'0')
            .map_err(|_| Error::Parse(format!("bad never condition {s:?}")))
    }
}

impl Serialize for FishburnCondition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A never condition attached to a concrete triple.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct NeverCondition {
    pub triple: Triple,
    pub fishburn: FishburnCondition,
}

impl NeverCondition {
    /// From absolute form: `alternative` never at `slot`.
    pub fn absolute(triple: Triple, alternative: u8, slot: Slot) -> Result<Self> {
        let position = triple
            .labels()
            .iter()
            .position(|&l| l == alternative)
            .ok_or_else(|| Error::InvalidArgument(format!("{alternative} is not in triple {triple}")))?
            as u8
            + 1;
        Ok(NeverCondition {
            triple,
            fishburn: FishburnCondition {
                position,
                rank: slot.rank(),
            },
        })
    }

    /// The constrained alternative.
    pub fn alternative(&self) -> u8 {
        self.triple.at(self.fishburn.position)
    }

    pub fn slot(&self) -> Slot {
        Slot::from_rank(self.fishburn.rank)
    }

    /// Absolute form, e.g. `2Nb`.
    pub fn absolute_form(&self) -> String {
        format!("{}N{}", self.alternative(), self.slot().letter())
    }
}

impl fmt::Display for NeverCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@ {}", self.fishburn, self.triple)
    }
}

impl Serialize for NeverCondition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Occupied-cell masks of every triple, in alternative-index space.
pub(crate) struct CellTable {
    n: usize,
    occ: Vec<u16>,
}

impl CellTable {
    pub fn new(n: usize) -> Self {
        CellTable {
            n,
            occ: vec![0; n * n * n],
        }
    }

    pub fn from_rankings(n: usize, rankings: &[Vec<u8>]) -> Self {
        let mut t = CellTable::new(n);
        for r in rankings {
            t.add(r);
        }
        t
    }

    #[inline]
    fn slot(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.n + j) * self.n + k
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> u16 {
        self.occ[self.slot(i, j, k)]
    }

    /// Adds the cells of one index-space ranking.
    pub fn add(&mut self, ranking: &[u8]) {
        let n = self.n;
        let mut pos = vec![0u8; n];
        for (p, &x) in ranking.iter().enumerate() {
            pos[x as usize] = p as u8;
        }
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let p = pattern_from_positions(pos[i], pos[j], pos[k]);
                    let s = self.slot(i, j, k);
                    self.occ[s] |= PATTERN_CELLS[p as usize];
                }
            }
        }
    }

    /// Triples `(i, j, k)` in lexicographic order with their masks.
    pub fn triples(&self) -> impl Iterator<Item = (usize, usize, usize, u16)> + '_ {
        let n = self.n;
        (0..n).flat_map(move |i| {
            (i + 1..n).flat_map(move |j| (j + 1..n).map(move |k| (i, j, k, self.get(i, j, k))))
        })
    }

    /// Filter admitting exactly the orders that keep every triple value
    /// restricted when added.
    pub fn admissible_filter(&self) -> TripleFilter {
        let mut f = TripleFilter::new(self.n);
        for (i, j, k, occ) in self.triples() {
            let mask = (0..6)
                .filter(|&p| occ | PATTERN_CELLS[p] != FULL_CELLS)
                .fold(0u8, |m, p| m | 1 << p);
            f.set(i, j, k, mask);
        }
        f
    }
}

fn triple_from_indices(alts: &AlternativeSet, i: usize, j: usize, k: usize) -> Triple {
    let l = alts.labels();
    Triple {
        a: l[i],
        b: l[j],
        c: l[k],
    }
}

fn conditions_from_free(triple: Triple, occupied: u16) -> Vec<NeverCondition> {
    FishburnCondition::all()
        .filter(|c| occupied & c.cell() == 0)
        .map(|fishburn| NeverCondition { triple, fishburn })
        .collect()
}

/// Never conditions satisfied by `d` on `triple`, in `1N1 … 3N3` order.
pub fn satisfied_conditions(d: &Domain, triple: Triple) -> Result<Vec<NeverCondition>> {
    let ps = d.triple_pattern_set(triple)?;
    Ok(conditions_from_free(triple, ps.cells()))
}

/// Outcome of the value-restriction test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CondorcetReport {
    pub is_cd: bool,
    /// Lexicographically least triple satisfying no never condition.
    pub witness: Option<Triple>,
    #[serde(serialize_with = "serialize_per_triple")]
    pub per_triple: BTreeMap<Triple, Vec<NeverCondition>>,
}

#[derive(Serialize)]
struct TripleEntry<'a> {
    triple: &'a Triple,
    conditions: &'a [NeverCondition],
}

fn serialize_per_triple<S: Serializer>(
    map: &BTreeMap<Triple, Vec<NeverCondition>>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(
        map.iter()
            .map(|(triple, conditions)| TripleEntry { triple, conditions }),
    )
}

/// Checks every triple for a never condition.
pub fn is_condorcet(d: &Domain) -> CondorcetReport {
    let table = CellTable::from_rankings(d.n(), &d.index_rankings());
    let mut per_triple = BTreeMap::new();
    let mut witness = None;
    for (i, j, k, occ) in table.triples() {
        let t = triple_from_indices(d.alternatives(), i, j, k);
        let conds = conditions_from_free(t, occ);
        if conds.is_empty() && witness.is_none() {
            witness = Some(t);
        }
        per_triple.insert(t, conds);
    }
    CondorcetReport {
        is_cd: witness.is_none(),
        witness,
        per_triple,
    }
}

/// Fast boolean form of [`is_condorcet`].
pub fn is_condorcet_domain(d: &Domain) -> bool {
    first_violation(d).is_none()
}

fn first_violation(d: &Domain) -> Option<Triple> {
    let table = CellTable::from_rankings(d.n(), &d.index_rankings());
    let hit = table.triples().find(|&(_, _, _, occ)| occ == FULL_CELLS);
    hit.map(|(i, j, k, _)| triple_from_indices(d.alternatives(), i, j, k))
}

fn require_condorcet(d: &Domain) -> Result<()> {
    match first_violation(d) {
        Some(t) => Err(Error::NotCondorcet((t.a, t.b, t.c))),
        None => Ok(()),
    }
}

pub const ORACLE_MAX_ORDERS: usize = 12;
pub const ORACLE_MAX_ALTERNATIVES: usize = 6;

/// Brute-force check that every three-voter profile over `d` has a
/// transitive majority relation.
///
/// This never looks at never conditions and serves as an independent check
/// of [`is_condorcet`].
pub fn majority_oracle_check(d: &Domain) -> Result<bool> {
    if d.len() > ORACLE_MAX_ORDERS {
        return Err(capability(
            format!("oracle on {} orders", d.len()),
            ORACLE_MAX_ORDERS,
        ));
    }
    if d.n() > ORACLE_MAX_ALTERNATIVES {
        return Err(capability(
            format!("oracle on {} alternatives", d.n()),
            ORACLE_MAX_ALTERNATIVES,
        ));
    }
    let orders = d.orders();
    let labels = d.alternatives().labels();
    let m = orders.len();
    for a in 0..m {
        for b in a..m {
            for c in b..m {
                let voters = [&orders[a], &orders[b], &orders[c]];
                let beats = |x: u8, y: u8| voters.iter().filter(|o| o.prefers(x, y)).count() >= 2;
                for (ix, &x) in labels.iter().enumerate() {
                    for (iy, &y) in labels.iter().enumerate().skip(ix + 1) {
                        for &z in &labels[iy + 1..] {
                            let cyc1 = beats(x, y) && beats(y, z) && beats(z, x);
                            let cyc2 = beats(y, x) && beats(z, y) && beats(x, z);
                            if cyc1 || cyc2 {
                                return Ok(false);
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(true)
}

fn require_search_size(d: &Domain) -> Result<()> {
    if d.n() > MAX_SEARCH_ALTERNATIVES {
        return Err(capability(
            format!("search over orders of {} alternatives", d.n()),
            MAX_SEARCH_ALTERNATIVES,
        ));
    }
    Ok(())
}

fn to_order(alts: &AlternativeSet, perm: &[u8]) -> LinearOrder {
    LinearOrder::from_valid(perm.iter().map(|&i| alts.labels()[i as usize]).collect())
}

/// Orders outside `d` whose addition keeps `d` a Condorcet domain, in
/// lexicographic order.
pub fn admissible_orders(d: &Domain) -> Result<Vec<LinearOrder>> {
    require_condorcet(d)?;
    require_search_size(d)?;
    let rankings = d.index_rankings();
    let members: HashSet<&[u8]> = rankings.iter().map(|r| r.as_slice()).collect();
    let filter = CellTable::from_rankings(d.n(), &rankings).admissible_filter();
    let mut out = Vec::new();
    let _ = filter.for_each(None, |perm| {
        if !members.contains(perm) {
            out.push(to_order(d.alternatives(), perm));
        }
        ControlFlow::Continue(())
    });
    Ok(out)
}

/// Lexicographically least admissible order, if any.
fn first_admissible(n: usize, table: &CellTable, members: &HashSet<Vec<u8>>) -> Option<Vec<u8>> {
    let filter = table.admissible_filter();
    let mut found = None;
    let _ = filter.for_each(None, |perm| {
        if members.contains(perm) {
            ControlFlow::Continue(())
        } else {
            found = Some(perm.to_vec());
            ControlFlow::Break(())
        }
    });
    debug_assert!(found.as_ref().is_none_or(|p| p.len() == n));
    found
}

/// Whether no order can be added to `d` without breaking value restriction.
pub fn is_maximal(d: &Domain) -> Result<bool> {
    require_condorcet(d)?;
    require_search_size(d)?;
    let rankings = d.index_rankings();
    let table = CellTable::from_rankings(d.n(), &rankings);
    let members: HashSet<Vec<u8>> = rankings.into_iter().collect();
    Ok(first_admissible(d.n(), &table, &members).is_none())
}

/// Extends `d` to a maximal Condorcet domain by repeatedly adding the
/// lexicographically least admissible order.
pub fn close_to_maximal(d: &Domain) -> Result<Domain> {
    require_condorcet(d)?;
    require_search_size(d)?;
    let rankings = d.index_rankings();
    let mut table = CellTable::from_rankings(d.n(), &rankings);
    let mut members: HashSet<Vec<u8>> = rankings.into_iter().collect();
    while let Some(next) = first_admissible(d.n(), &table, &members) {
        table.add(&next);
        members.insert(next);
    }
    let mut orders: Vec<LinearOrder> = members.iter().map(|p| to_order(d.alternatives(), p)).collect();
    orders.sort_unstable();
    Ok(Domain::from_sorted_unchecked(d.alternatives().clone(), orders))
}

/// Restriction of a maximal domain to one `(n-1)`-subset.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubsetReport {
    pub removed: u8,
    pub subset: Vec<u8>,
    pub size: usize,
    pub maximal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiscordanceReport {
    pub discordant: bool,
    /// One entry per `(n-1)`-subset, subsets in lexicographic order.
    pub subsets: Vec<SubsetReport>,
}

/// A maximal domain is discordant when none of its restrictions to
/// `n - 1` alternatives is maximal. Non-maximal input is an error.
pub fn is_discordant(d: &Domain) -> Result<DiscordanceReport> {
    if d.n() < 4 {
        return Err(Error::InvalidArgument(
            "discordance needs at least 4 alternatives".into(),
        ));
    }
    if !is_maximal(d)? {
        return Err(Error::NotMaximal);
    }
    let labels = d.alternatives().labels();
    let mut subsets = Vec::with_capacity(labels.len());
    // lexicographic order of (n-1)-subsets removes the largest label first
    for &removed in labels.iter().rev() {
        let keep = AlternativeSet::new(labels.iter().copied().filter(|&l| l != removed))?;
        let r = d.restrict(&keep)?;
        subsets.push(SubsetReport {
            removed,
            subset: keep.labels().to_vec(),
            size: r.len(),
            maximal: is_maximal(&r)?,
        });
    }
    Ok(DiscordanceReport {
        discordant: subsets.iter().all(|s| !s.maximal),
        subsets,
    })
}

/// A set of alternatives on which every triple satisfies one condition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UniformSubset {
    pub alternatives: AlternativeSet,
    pub condition: FishburnCondition,
}

/// Largest subset of alternatives on which a single positional never
/// condition holds for every triple.
///
/// Ties go to the lexicographically least subset, then the least
/// condition. Returns `None` when the best subset is smaller than
/// `min_size`. Below three alternatives every condition holds vacuously and
/// `1N1` is reported.
pub fn find_uniform_never_subset(d: &Domain, min_size: usize) -> Result<Option<UniformSubset>> {
    if !d.is_unitary() {
        return Err(Error::NotUnitary);
    }
    let n = d.n();
    let table = CellTable::from_rankings(n, &d.index_rankings());
    let mut best: Option<(Vec<u8>, FishburnCondition)> = None;
    for cond in FishburnCondition::all() {
        let bit = cond.cell();
        let holds = |i: usize, j: usize, k: usize| table.get(i, j, k) & bit == 0;
        let mut current = Vec::with_capacity(n);
        let mut top: Vec<u8> = Vec::new();
        largest_uniform(n, 0, &mut current, &mut top, &holds);
        let better = match &best {
            None => true,
            Some((b, _)) => top.len() > b.len() || (top.len() == b.len() && top < *b),
        };
        if better {
            best = Some((top, cond));
        }
    }
    let Some((indices, condition)) = best else {
        return Ok(None);
    };
    if indices.len() < min_size {
        return Ok(None);
    }
    let mask = indices.iter().fold(0u32, |m, &i| m | 1 << i);
    Ok(Some(UniformSubset {
        alternatives: d.alternatives().select(mask),
        condition,
    }))
}

/// Include-first depth-first search; the first subset of a given size met is
/// the lexicographically least one.
fn largest_uniform<F>(n: usize, next: usize, current: &mut Vec<u8>, best: &mut Vec<u8>, holds: &F)
where
    F: Fn(usize, usize, usize) -> bool,
{
    if current.len() > best.len() {
        *best = current.clone();
    }
    for x in next..n {
        if current.len() + (n - x) <= best.len() {
            return;
        }
        let ok = current.iter().enumerate().all(|(iy, &y)| {
            current[iy + 1..]
                .iter()
                .all(|&z| holds(y as usize, z as usize, x))
        });
        if ok {
            current.push(x as u8);
            largest_uniform(n, x + 1, current, best, holds);
            current.pop();
        }
    }
}
