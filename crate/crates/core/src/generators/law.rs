//! Never-condition laws: an assignment of positional conditions to every
//! triple of `{1, …, n}`, and the maximal domain they define.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::ops::ControlFlow;

use crate::condorcet::FishburnCondition;
use crate::domain::Domain;
use crate::enumerate::TripleFilter;
use crate::error::{capability, Error, Result};
use crate::order::{AlternativeSet, LinearOrder};
use crate::pattern::{Triple, PATTERN_CELLS};

/// Largest `n` generated without the long-run flag.
pub const LAW_CAP: usize = 10;
/// Largest `n` generated with it.
pub const LAW_LONG_CAP: usize = 11;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NeverLaw {
    n: usize,
    assignment: BTreeMap<Triple, Vec<FishburnCondition>>,
}

impl NeverLaw {
    /// Every triple unconstrained.
    pub fn unconstrained(n: usize) -> Result<Self> {
        let alts = AlternativeSet::range(n)?;
        let l = alts.labels();
        let mut assignment = BTreeMap::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    assignment.insert(
                        Triple {
                            a: l[i],
                            b: l[j],
                            c: l[k],
                        },
                        Vec::new(),
                    );
                }
            }
        }
        Ok(NeverLaw { n, assignment })
    }

    /// Assigns conditions triple by triple from `rule(i, j, k)`.
    pub fn from_rule<F>(n: usize, mut rule: F) -> Result<Self>
    where
        F: FnMut(Triple) -> Vec<FishburnCondition>,
    {
        let mut law = NeverLaw::unconstrained(n)?;
        for (t, conds) in law.assignment.iter_mut() {
            *conds = rule(*t);
        }
        Ok(law)
    }

    /// The same condition on every triple.
    pub fn uniform(n: usize, condition: FishburnCondition) -> Result<Self> {
        NeverLaw::from_rule(n, |_| vec![condition])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn conditions(&self, triple: &Triple) -> &[FishburnCondition] {
        self.assignment.get(triple).map_or(&[], |v| v.as_slice())
    }

    /// Replaces the conditions of one triple.
    pub fn set(&mut self, triple: Triple, conditions: Vec<FishburnCondition>) -> Result<()> {
        match self.assignment.get_mut(&triple) {
            Some(slot) => {
                *slot = conditions;
                Ok(())
            }
            None => Err(Error::InvalidArgument(format!(
                "triple {triple} is not within 1..={}",
                self.n
            ))),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Triple, &[FishburnCondition])> {
        self.assignment.iter().map(|(t, c)| (t, c.as_slice()))
    }

    /// Parses a law file: one `i j k : COND[,COND]` line per constrained
    /// triple; `#` starts a comment; omitted triples are unconstrained.
    pub fn parse(n: usize, text: &str) -> Result<Self> {
        let mut law = NeverLaw::unconstrained(n)?;
        for (no, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: String| Error::Line {
                line: no + 1,
                message,
            };
            let (lhs, rhs) = line
                .split_once(':')
                .ok_or_else(|| err(format!("expected `i j k : COND`, got {line:?}")))?;
            let nums = lhs
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<u8>().map_err(|_| err(format!("bad label {t:?}"))))
                .collect::<Result<Vec<_>>>()?;
            if nums.len() != 3 {
                return Err(err(format!("expected three labels, got {}", nums.len())));
            }
            let triple = Triple::new(nums[0], nums[1], nums[2]).map_err(|e| err(e.to_string()))?;
            let conds = rhs
                .split(',')
                .map(str::trim)
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<FishburnCondition>().map_err(|e| err(e.to_string())))
                .collect::<Result<Vec<_>>>()?;
            law.set(triple, conds).map_err(|e| err(e.to_string()))?;
        }
        Ok(law)
    }

    /// Law-file rendering of the constrained triples.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (t, conds) in self.iter().filter(|(_, c)| !c.is_empty()) {
            let list: Vec<String> = conds.iter().map(|c| c.to_string()).collect();
            let _ = writeln!(out, "{} {} {} : {}", t.a, t.b, t.c, list.join(","));
        }
        out
    }

    pub(crate) fn filter(&self) -> TripleFilter {
        let mut f = TripleFilter::new(self.n);
        for (t, conds) in &self.assignment {
            let forbidden = conds.iter().fold(0u16, |m, c| m | c.cell());
            let allowed = (0..6)
                .filter(|&p| PATTERN_CELLS[p] & forbidden == 0)
                .fold(0u8, |m, p| m | 1 << p);
            f.set(t.a as usize - 1, t.b as usize - 1, t.c as usize - 1, allowed);
        }
        f
    }
}

/// All orders of `{1, …, n}` satisfying every condition of the law, in
/// lexicographic order. `n` above [`LAW_CAP`] needs `allow_long`.
pub fn generate_from_never_law(law: &NeverLaw, allow_long: bool) -> Result<Domain> {
    let cap = if allow_long { LAW_LONG_CAP } else { LAW_CAP };
    if law.n > cap {
        return Err(capability(format!("never-law generation for n = {}", law.n), cap));
    }
    let alts = AlternativeSet::range(law.n)?;
    let mut orders = Vec::new();
    let _ = law.filter().for_each(None, |perm| {
        orders.push(LinearOrder::from_valid(perm.iter().map(|&i| i + 1).collect()));
        ControlFlow::Continue(())
    });
    Ok(Domain::from_sorted_unchecked(alts, orders))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fc(s: &str) -> FishburnCondition {
        s.parse().unwrap()
    }

    #[test]
    fn law_file_round_trip() {
        let text = "# alternating\n1 2 3 : 2N1\n1 2 4 : 2N3, 1N1\n\n";
        let law = NeverLaw::parse(4, text).unwrap();
        let t = Triple::new(1, 2, 4).unwrap();
        assert_eq!(law.conditions(&t), &[fc("2N3"), fc("1N1")]);
        assert!(law.conditions(&Triple::new(2, 3, 4).unwrap()).is_empty());
        assert_eq!(NeverLaw::parse(4, &law.to_text()).unwrap(), law);
    }

    #[test]
    fn law_file_errors_carry_line_numbers() {
        let e = NeverLaw::parse(4, "1 2 3 : 2N1\n1 2 5 : 2N1\n").unwrap_err();
        assert!(matches!(e, Error::Line { line: 2, .. }));
        let e = NeverLaw::parse(4, "1 2 : 2N1").unwrap_err();
        assert!(matches!(e, Error::Line { line: 1, .. }));
        let e = NeverLaw::parse(4, "1 2 3 : 2X1").unwrap_err();
        assert!(matches!(e, Error::Line { line: 1, .. }));
    }

    #[test]
    fn two_never_three_on_three_alternatives() {
        let law = NeverLaw::uniform(3, fc("2N3")).unwrap();
        let dom = generate_from_never_law(&law, false).unwrap();
        assert_eq!(dom, Domain::parse_all(&["123", "213", "231", "321"]).unwrap());
    }

    #[test]
    fn empty_law_gives_everything() {
        let dom = generate_from_never_law(&NeverLaw::unconstrained(3).unwrap(), false).unwrap();
        assert_eq!(dom.len(), 6);
    }

    #[test]
    fn caps() {
        let law = NeverLaw::uniform(11, fc("2N3")).unwrap();
        assert!(matches!(
            generate_from_never_law(&law, false),
            Err(Error::Capability { .. })
        ));
    }
}
