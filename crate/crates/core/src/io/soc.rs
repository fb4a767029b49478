//! PrefLib strict-order-complete (SOC) files.
//!
//! Current files carry `#`-prefixed metadata and `count: a1,a2,…` rows:
//!
//! ```text
//! # NUMBER ALTERNATIVES: 3
//! # NUMBER VOTERS: 3
//! # ALTERNATIVE NAME 1: Algebra
//! 1: 1,2,3
//! 2: 3,2,1
//! ```
//!
//! Older files start with the alternative count, one `i,name` line per
//! alternative, a `voters,total,unique` line, then `count,a1,a2,…` rows.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::order::{AlternativeSet, Label, LinearOrder, MAX_ALTERNATIVES};
use crate::profile::Profile;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SocDocument {
    pub alternatives: usize,
    pub names: BTreeMap<usize, String>,
    /// Agent count stated by the file, if any.
    pub declared_agents: Option<u64>,
    /// `(count, ranking)` per data row, in file order.
    pub rows: Vec<(u64, Vec<Label>)>,
}

impl SocDocument {
    pub fn agents(&self) -> u64 {
        self.rows.iter().map(|(c, _)| c).sum()
    }

    pub fn to_profile(&self) -> Result<Profile> {
        let alts = AlternativeSet::range(self.alternatives)?;
        Profile::new(
            alts,
            self.rows
                .iter()
                .map(|(c, r)| (*c, LinearOrder::from_valid(r.clone()))),
        )
    }
}

/// Parses a SOC file into a profile; labels are the file's 1-based indices.
pub fn parse_soc(text: &str) -> Result<Profile> {
    parse_soc_document(text)?.to_profile()
}

pub fn parse_soc_document(text: &str) -> Result<SocDocument> {
    let first = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty())
        .ok_or_else(|| Error::Data("empty SOC input".into()))?;
    let doc = if first.starts_with('#') {
        parse_current(text)?
    } else {
        parse_legacy(text)?
    };
    if doc.alternatives == 0 {
        return Err(Error::Data("no alternatives declared".into()));
    }
    if doc.rows.is_empty() {
        return Err(Error::Data("no ranking rows".into()));
    }
    if let Some(n) = doc.declared_agents {
        if n != doc.agents() {
            return Err(Error::Data(format!(
                "file declares {n} voters but its rows count {}",
                doc.agents()
            )));
        }
    }
    Ok(doc)
}

fn line_err(line: usize, message: impl Into<String>) -> Error {
    Error::Line {
        line,
        message: message.into(),
    }
}

fn unsupported(line: usize, message: impl Into<String>) -> Error {
    Error::UnsupportedFormat {
        line,
        message: message.into(),
    }
}

fn parse_current(text: &str) -> Result<SocDocument> {
    let mut n: Option<usize> = None;
    let mut declared = None;
    let mut names = BTreeMap::new();
    let mut pending: Vec<(usize, u64, &str)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let no = i + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(meta) = line.strip_prefix('#') {
            let Some((key, value)) = meta.split_once(':') else {
                continue;
            };
            let key = key.trim().to_ascii_uppercase();
            let value = value.trim();
            let number = || {
                value
                    .parse::<u64>()
                    .map_err(|_| line_err(no, format!("bad number {value:?} for {key}")))
            };
            if key == "NUMBER ALTERNATIVES" {
                n = Some(number()? as usize);
            } else if key == "NUMBER VOTERS" {
                declared = Some(number()?);
            } else if let Some(idx) = key.strip_prefix("ALTERNATIVE NAME") {
                let idx: usize = idx
                    .trim()
                    .parse()
                    .map_err(|_| line_err(no, format!("bad alternative index in {line:?}")))?;
                names.insert(idx, value.to_string());
            } else if key == "DATA TYPE" && !value.eq_ignore_ascii_case("soc") {
                return Err(unsupported(no, format!("data type {value} is not soc")));
            }
            continue;
        }
        let (count, ranking) = line
            .split_once(':')
            .ok_or_else(|| line_err(no, format!("expected `count: ranking`, got {line:?}")))?;
        let count: u64 = count
            .trim()
            .parse()
            .map_err(|_| line_err(no, format!("bad count {:?}", count.trim())))?;
        pending.push((no, count, ranking));
    }
    let n = match n {
        Some(n) => n,
        None => names
            .keys()
            .max()
            .copied()
            .ok_or_else(|| Error::Data("missing `# NUMBER ALTERNATIVES` metadata".into()))?,
    };
    check_n(n)?;
    let rows = pending
        .into_iter()
        .map(|(no, c, r)| Ok((c, ranking(no, r, n)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(SocDocument {
        alternatives: n,
        names,
        declared_agents: declared,
        rows,
    })
}

fn parse_legacy(text: &str) -> Result<SocDocument> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let (no, head) = lines.next().expect("checked nonempty");
    let n: usize = head
        .parse()
        .map_err(|_| line_err(no, format!("expected the alternative count, got {head:?}")))?;
    check_n(n)?;
    let mut names = BTreeMap::new();
    for _ in 0..n {
        let (no, l) = lines
            .next()
            .ok_or_else(|| Error::Data("file ends inside the alternative list".into()))?;
        let (idx, name) = l
            .split_once(',')
            .ok_or_else(|| line_err(no, format!("expected `index,name`, got {l:?}")))?;
        let idx: usize = idx
            .trim()
            .parse()
            .map_err(|_| line_err(no, format!("bad alternative index {idx:?}")))?;
        names.insert(idx, name.trim().to_string());
    }
    let (no, totals) = lines
        .next()
        .ok_or_else(|| Error::Data("file ends before the voter totals".into()))?;
    let totals = totals
        .split(',')
        .map(|t| t.trim().parse::<u64>())
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(|_| line_err(no, format!("bad voter totals {totals:?}")))?;
    if totals.is_empty() {
        return Err(line_err(no, "missing voter totals"));
    }
    let mut rows = Vec::new();
    for (no, l) in lines {
        let (count, ranking_text) = l
            .split_once(',')
            .ok_or_else(|| line_err(no, format!("expected `count,ranking`, got {l:?}")))?;
        let count: u64 = count
            .trim()
            .parse()
            .map_err(|_| line_err(no, format!("bad count {:?}", count.trim())))?;
        rows.push((count, ranking(no, ranking_text, n)?));
    }
    Ok(SocDocument {
        alternatives: n,
        names,
        declared_agents: Some(totals[0]),
        rows,
    })
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 || n > MAX_ALTERNATIVES {
        return Err(crate::error::capability(
            format!("SOC file with {n} alternatives"),
            MAX_ALTERNATIVES,
        ));
    }
    Ok(())
}

fn ranking(no: usize, text: &str, n: usize) -> Result<Vec<Label>> {
    if text.contains('{') || text.contains('}') {
        return Err(unsupported(no, "tied alternatives are not strict orders"));
    }
    let mut seen = vec![false; n + 1];
    let mut out = Vec::with_capacity(n);
    for tok in text.split(',').map(str::trim) {
        let a: usize = tok
            .parse()
            .map_err(|_| line_err(no, format!("bad alternative {tok:?}")))?;
        if a == 0 || a > n {
            return Err(line_err(no, format!("alternative {a} outside 1..={n}")));
        }
        if seen[a] {
            return Err(line_err(no, format!("alternative {a} ranked twice")));
        }
        seen[a] = true;
        out.push(a as Label);
    }
    if out.len() < n {
        return Err(unsupported(
            no,
            format!("incomplete ranking: {} of {n} alternatives", out.len()),
        ));
    }
    Ok(out)
}
