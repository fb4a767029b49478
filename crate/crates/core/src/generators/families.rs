//! Named domain families.

use crate::condorcet::FishburnCondition;
use crate::domain::Domain;
use crate::error::{Error, Result};
use crate::order::{AlternativeSet, LinearOrder, MAX_ALTERNATIVES};

use super::law::{generate_from_never_law, NeverLaw, LAW_CAP, LAW_LONG_CAP};

const TWO_N_ONE: FishburnCondition = FishburnCondition { position: 2, rank: 1 };
const TWO_N_THREE: FishburnCondition = FishburnCondition { position: 2, rank: 3 };
const ONE_N_THREE: FishburnCondition = FishburnCondition { position: 1, rank: 3 };
const THREE_N_ONE: FishburnCondition = FishburnCondition { position: 3, rank: 1 };

fn check_range(name: &str, n: usize, lo: usize, hi: usize) -> Result<()> {
    if n < lo || n > hi {
        return Err(Error::InvalidArgument(format!(
            "{name} needs {lo} ≤ n ≤ {hi}, got n = {n}"
        )));
    }
    Ok(())
}

/// Black's single-peaked domain on `{1, …, n}`: `2N3` on every triple.
/// Size `2^(n-1)`.
pub fn black_single_peaked(n: usize) -> Result<Domain> {
    check_range("black_single_peaked", n, 2, LAW_CAP)?;
    generate_from_never_law(&NeverLaw::uniform(n, TWO_N_THREE)?, false)
}

/// Fishburn's alternating law: triple `(i, j, k)` gets `2N1` when `j` is
/// odd and `2N3` when `j` is even.
pub fn fishburn_law(n: usize) -> Result<NeverLaw> {
    NeverLaw::from_rule(n, |t| vec![if t.b % 2 == 1 { TWO_N_ONE } else { TWO_N_THREE }])
}

/// Fishburn's alternating domain. `n = 11` needs `allow_long`.
pub fn fishburn_alternating(n: usize, allow_long: bool) -> Result<Domain> {
    check_range("fishburn_alternating", n, 3, LAW_LONG_CAP)?;
    generate_from_never_law(&fishburn_law(n)?, allow_long)
}

/// Set-alternating law for `set`: `1N3` on triples whose middle lies in
/// `set`, `3N1` on the rest.
pub fn set_alternating_law(n: usize, set: &[u8]) -> Result<NeverLaw> {
    if let Some(&bad) = set.iter().find(|&&a| a == 0 || a as usize > n) {
        return Err(Error::InvalidArgument(format!(
            "alternative {bad} of the alternating set is outside 1..={n}"
        )));
    }
    NeverLaw::from_rule(n, |t| {
        vec![if set.contains(&t.b) {
            ONE_N_THREE
        } else {
            THREE_N_ONE
        }]
    })
}

/// Set-alternating domain.
pub fn set_alternating(n: usize, set: &[u8]) -> Result<Domain> {
    check_range("set_alternating", n, 1, LAW_CAP)?;
    generate_from_never_law(&set_alternating_law(n, set)?, false)
}

/// Caterpillar group-separable domain: the order on `{i, …, n}` puts `i`
/// either above or below the whole order on `{i+1, …, n}`. Size `2^(n-1)`.
pub fn caterpillar_group_separable(n: usize) -> Result<Domain> {
    check_range("caterpillar_group_separable", n, 1, MAX_ALTERNATIVES)?;
    let mut blocks: Vec<Vec<u8>> = vec![vec![n as u8]];
    for i in (1..n as u8).rev() {
        blocks = blocks
            .into_iter()
            .flat_map(|b| {
                let mut front = Vec::with_capacity(b.len() + 1);
                front.push(i);
                front.extend_from_slice(&b);
                let mut back = b;
                back.push(i);
                [front, back]
            })
            .collect();
    }
    Domain::new(
        AlternativeSet::range(n)?,
        blocks.into_iter().map(LinearOrder::from_valid),
    )
}

/// The orders visited by bubble-sorting `12…n` into `n…21`, swapping the
/// leftmost adjacent ascending pair at each step. Each pair of alternatives
/// is swapped exactly once, giving `C(n,2) + 1` orders.
pub fn single_crossing_path(n: usize) -> Result<Vec<LinearOrder>> {
    check_range("single_crossing_path", n, 1, MAX_ALTERNATIVES)?;
    let mut current: Vec<u8> = (1..=n as u8).collect();
    let mut path = vec![LinearOrder::from_valid(current.clone())];
    while let Some(i) = (0..n.saturating_sub(1)).find(|&i| current[i] < current[i + 1]) {
        current.swap(i, i + 1);
        path.push(LinearOrder::from_valid(current.clone()));
    }
    Ok(path)
}

/// The single-crossing domain of [`single_crossing_path`].
pub fn single_crossing(n: usize) -> Result<Domain> {
    Domain::new(AlternativeSet::range(n)?, single_crossing_path(n)?)
}

/// `S(D1, D2)`: every concatenation `uv` and `vu` with `u ∈ D1`, `v ∈ D2`.
/// The alternative sets must be disjoint.
pub fn s_construction(d1: &Domain, d2: &Domain) -> Result<Domain> {
    let (a, b) = (d1.alternatives(), d2.alternatives());
    if a.mask() & b.mask() != 0 {
        return Err(Error::InvalidAlternatives(format!(
            "S-construction needs disjoint alternative sets, got {a} and {b}"
        )));
    }
    let alts = AlternativeSet::new(a.labels().iter().chain(b.labels()).copied())?;
    let mut orders = Vec::with_capacity(2 * d1.len() * d2.len());
    for u in d1 {
        for v in d2 {
            let uv: Vec<u8> = u.ranking().iter().chain(v.ranking()).copied().collect();
            let vu: Vec<u8> = v.ranking().iter().chain(u.ranking()).copied().collect();
            orders.push(LinearOrder::from_valid(uv));
            orders.push(LinearOrder::from_valid(vu));
        }
    }
    Domain::new(alts, orders)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(orders: &[&str]) -> Domain {
        Domain::parse_all(orders).unwrap()
    }

    #[test]
    fn black_small_cases() {
        assert_eq!(black_single_peaked(3).unwrap(), d(&["123", "213", "231", "321"]));
        assert_eq!(black_single_peaked(2).unwrap().len(), 2);
        assert!(black_single_peaked(1).is_err());
        assert!(black_single_peaked(11).is_err());
    }

    #[test]
    fn fishburn_membership() {
        let f4 = fishburn_alternating(4, false).unwrap();
        assert!(f4.contains(&"2134".parse().unwrap()));
        assert!(fishburn_alternating(2, false).is_err());
        assert!(fishburn_alternating(11, false).is_err());
    }

    #[test]
    fn set_alternating_example() {
        assert_eq!(
            set_alternating(3, &[2]).unwrap(),
            d(&["123", "132", "213", "312"])
        );
        assert!(set_alternating(3, &[4]).is_err());
    }

    #[test]
    fn caterpillar_unfolds() {
        assert_eq!(
            caterpillar_group_separable(3).unwrap(),
            d(&["123", "231", "132", "321"])
        );
        assert_eq!(caterpillar_group_separable(1).unwrap().len(), 1);
    }

    #[test]
    fn bubble_path() {
        let p: Vec<String> = single_crossing_path(3)
            .unwrap()
            .iter()
            .map(|o| o.compact())
            .collect();
        assert_eq!(p, ["123", "213", "231", "321"]);
        assert_eq!(single_crossing_path(1).unwrap().len(), 1);
    }

    #[test]
    fn s_construction_examples() {
        let s = s_construction(&d(&["12"]), &d(&["34"])).unwrap();
        assert_eq!(s, d(&["1234", "3412"]));
        let s = s_construction(&d(&["12", "21"]), &d(&["34", "43"])).unwrap();
        assert_eq!(s.len(), 8);
        assert!(s_construction(&d(&["12"]), &d(&["23"])).is_err());
    }
}
