//! Triples of alternatives and the six patterns an order can induce on them.
//!
//! A pattern is identified by the axis positions of the triple read
//! best-first, e.g. `213` means the middle alternative of the triple is on
//! top, then the smallest, then the largest. Pattern indices follow the
//! lexicographic order of these strings: `123, 132, 213, 231, 312, 321`.
//!
//! Each pattern occupies three of the nine cells `(i, j)` meaning "the
//! `i`-th alternative along the axis sits at rank `j` within the triple".
//! Cell `(i, j)` is bit `3(i-1) + (j-1)` of a 9-bit mask.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::order::{Label, LinearOrder};

/// Axis positions, best first, for each pattern index.
pub const PATTERNS: [[u8; 3]; 6] = [[1, 2, 3], [1, 3, 2], [2, 1, 3], [2, 3, 1], [3, 1, 2], [3, 2, 1]];

/// All nine cells.
pub const FULL_CELLS: u16 = 0x1FF;

/// Bit of cell `(position, rank)`, both 1-based.
pub const fn cell_bit(position: u8, rank: u8) -> u16 {
    1 << ((position - 1) * 3 + (rank - 1))
}

const fn pattern_cells(p: usize) -> u16 {
    let seq = PATTERNS[p];
    cell_bit(seq[0], 1) | cell_bit(seq[1], 2) | cell_bit(seq[2], 3)
}

/// Occupied cells of each pattern.
pub const PATTERN_CELLS: [u16; 6] = [
    pattern_cells(0),
    pattern_cells(1),
    pattern_cells(2),
    pattern_cells(3),
    pattern_cells(4),
    pattern_cells(5),
];

// Indexed by (a before b) | (a before c) << 1 | (b before c) << 2.
const BITS_TO_PATTERN: [u8; 8] = [5, 4, u8::MAX, 1, 3, u8::MAX, 2, 0];

/// Pattern index induced on axis-sorted `a < b < c` by their positions.
#[inline]
pub fn pattern_from_positions(pa: u8, pb: u8, pc: u8) -> u8 {
    let bits = (pa < pb) as usize | ((pa < pc) as usize) << 1 | ((pb < pc) as usize) << 2;
    BITS_TO_PATTERN[bits]
}

/// Occupied cells of a set of patterns given as a 6-bit mask.
pub fn cells_of(patterns: u8) -> u16 {
    (0..6)
        .filter(|p| patterns >> p & 1 == 1)
        .fold(0, |m, p| m | PATTERN_CELLS[p])
}

/// Three alternatives `a < b < c`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Triple {
    pub a: Label,
    pub b: Label,
    pub c: Label,
}

impl Triple {
    /// Sorts the three labels; they must be distinct.
    pub fn new(x: Label, y: Label, z: Label) -> Result<Self> {
        let mut v = [x, y, z];
        v.sort_unstable();
        if v[0] == v[1] || v[1] == v[2] {
            return Err(Error::InvalidArgument(format!(
                "triple ({x},{y},{z}) has repeated alternatives"
            )));
        }
        Ok(Triple {
            a: v[0],
            b: v[1],
            c: v[2],
        })
    }

    pub fn labels(&self) -> [Label; 3] {
        [self.a, self.b, self.c]
    }

    /// The `i`-th alternative along the axis, `i` in `1..=3`.
    pub fn at(&self, i: u8) -> Label {
        self.labels()[i as usize - 1]
    }

    pub fn mask(&self) -> u64 {
        1 << self.a | 1 << self.b | 1 << self.c
    }

    /// Pattern index `order` induces on this triple.
    pub fn pattern_of(&self, order: &LinearOrder) -> u8 {
        let pos = |l| order.position(l).expect("triple inside order") as u8;
        pattern_from_positions(pos(self.a), pos(self.b), pos(self.c))
    }

    /// Labels of pattern `p`, best first.
    pub fn pattern_labels(&self, p: u8) -> [Label; 3] {
        PATTERNS[p as usize].map(|i| self.at(i))
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.a, self.b, self.c)
    }
}

impl Serialize for Triple {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.labels().serialize(s)
    }
}

/// The distinct patterns a domain induces on one triple.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct TriplePatternSet {
    pub triple: Triple,
    /// Bit `p` set when pattern `p` occurs.
    pub patterns: u8,
}

impl TriplePatternSet {
    pub fn len(&self) -> usize {
        self.patterns.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.patterns == 0
    }

    pub fn contains(&self, p: u8) -> bool {
        self.patterns >> p & 1 == 1
    }

    /// Occupied `(position, rank)` cells.
    pub fn cells(&self) -> u16 {
        cells_of(self.patterns)
    }

    /// The patterns as orders over the triple, in lexicographic pattern order.
    pub fn orders(&self) -> Vec<LinearOrder> {
        (0..6u8)
            .filter(|&p| self.contains(p))
            .map(|p| LinearOrder::from_valid(self.triple.pattern_labels(p).to_vec()))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_pattern_decodes_from_positions() {
        for (p, seq) in PATTERNS.iter().enumerate() {
            // position of axis element i is the rank index where it appears
            let mut pos = [0u8; 3];
            for (r, &i) in seq.iter().enumerate() {
                pos[i as usize - 1] = r as u8;
            }
            assert_eq!(pattern_from_positions(pos[0], pos[1], pos[2]) as usize, p);
        }
    }

    #[test]
    fn each_cell_is_hit_by_exactly_two_patterns() {
        for bit in 0..9 {
            let hits = PATTERN_CELLS.iter().filter(|&&c| c >> bit & 1 == 1).count();
            assert_eq!(hits, 2);
        }
        assert_eq!(cells_of(0b111111), FULL_CELLS);
    }

    #[test]
    fn triple_sorts_and_rejects_repeats() {
        let t = Triple::new(7, 2, 4).unwrap();
        assert_eq!(t.labels(), [2, 4, 7]);
        assert!(Triple::new(1, 1, 2).is_err());
        let o: LinearOrder = "7 1 4 2".parse().unwrap();
        // 7 on top, then 4, then 2 -> axis positions 3,2,1
        assert_eq!(t.pattern_of(&o), 5);
        assert_eq!(t.pattern_labels(2), [4, 2, 7]);
    }
}
