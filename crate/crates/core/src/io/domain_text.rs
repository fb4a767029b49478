//! Domain files.
//!
//! ```text
//! # Black single-peaked, n = 3
//! n=3
//! 1 2 3
//! 2 1 3
//! 231
//! ```
//!
//! `#` starts a comment line. The optional `n=<int>` header fixes the
//! alternatives to `1..=n`; without it they are read off the first order.
//! Labels are separated by whitespace or commas, or run together when every
//! label is a single digit. Output always uses the header when the
//! alternatives are `1..=n`, and whitespace-separated labels.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::domain::Domain;
use crate::error::{Error, Result};
use crate::order::{parse_order, AlternativeSet, LinearOrder};

pub fn read_domain(text: &str) -> Result<Domain> {
    let mut alts: Option<AlternativeSet> = None;
    let mut orders = Vec::new();
    for (no, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |e: Error| Error::Line {
            line: no + 1,
            message: match e {
                Error::Parse(m) | Error::InvalidArgument(m) | Error::InvalidAlternatives(m) => m,
                other => other.to_string(),
            },
        };
        if let Some(value) = header_value(line) {
            if alts.is_some() {
                return Err(err(Error::Parse("header must precede the orders".into())));
            }
            let n: usize = value
                .parse()
                .map_err(|_| err(Error::Parse(format!("bad header {line:?}"))))?;
            alts = Some(AlternativeSet::range(n).map_err(err)?);
            continue;
        }
        let order = match &alts {
            Some(a) => parse_order(line, a).map_err(err)?,
            None => {
                let o: LinearOrder = line.parse().map_err(err)?;
                alts = Some(o.alternatives());
                o
            }
        };
        orders.push(order);
    }
    match alts {
        Some(a) => Domain::new(a, orders),
        None => Err(Error::EmptyDomain),
    }
}

fn header_value(line: &str) -> Option<&str> {
    let (key, value) = line.split_once('=')?;
    (key.trim().eq_ignore_ascii_case("n")).then(|| value.trim())
}

pub fn write_domain(d: &Domain) -> String {
    let mut out = String::new();
    if AlternativeSet::range(d.n()).is_ok_and(|r| &r == d.alternatives()) {
        let _ = writeln!(out, "n={}", d.n());
    }
    for o in d {
        let _ = writeln!(out, "{o}");
    }
    out
}

pub fn read_domain_file(path: impl AsRef<Path>) -> Result<Domain> {
    let path = path.as_ref();
    let text =
        fs::read_to_string(path).map_err(|e| Error::Data(format!("cannot read {}: {e}", path.display())))?;
    read_domain(&text)
}

pub fn write_domain_file(d: &Domain, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, write_domain(d)).map_err(|e| Error::Data(format!("cannot write {}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mixed_separators_and_comments() {
        let d = read_domain("# three\nn=3\n\n1 2 3\n2,1,3\n231\n  # trailing\n321\n").unwrap();
        assert_eq!(d.to_string(), "{123, 213, 231, 321}");
    }

    #[test]
    fn header_optional() {
        let d = read_domain("12 3 7\n7 3 12\n").unwrap();
        assert_eq!(d.alternatives().labels(), &[3, 7, 12]);
        assert_eq!(write_domain(&d), "7 3 12\n12 3 7\n");
    }

    #[test]
    fn round_trip() {
        let d = Domain::parse_all(&["2413", "1234", "4321"]).unwrap();
        let text = write_domain(&d);
        assert_eq!(text, "n=4\n1 2 3 4\n2 4 1 3\n4 3 2 1\n");
        assert_eq!(read_domain(&text).unwrap(), d);
    }

    #[test]
    fn errors_name_the_line() {
        let e = read_domain("n=3\n123\n122\n").unwrap_err();
        assert!(matches!(e, Error::Line { line: 3, .. }), "{e}");
        let e = read_domain("123\n1234\n").unwrap_err();
        assert!(matches!(e, Error::Line { line: 2, .. }), "{e}");
        let e = read_domain("n=x\n").unwrap_err();
        assert!(matches!(e, Error::Line { line: 1, .. }));
        let e = read_domain("123\nn=3\n").unwrap_err();
        assert!(matches!(e, Error::Line { line: 2, .. }));
        assert!(matches!(read_domain("# nothing\n"), Err(Error::EmptyDomain)));
    }

    #[test]
    fn header_only_gives_empty_domain() {
        let d = read_domain("n=4\n").unwrap();
        assert!(d.is_empty());
        assert_eq!(d.n(), 4);
    }
}
