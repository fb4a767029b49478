//! Reading domains and profiles from files or stdin (`-`).

use std::fs;

use cdlab::io::{parse_soc, read_domain, DomainJson};
use cdlab::profile::ProfileJson;
use cdlab::{Domain, Profile};

use crate::CliError;

pub struct Inputs {
    stdin: Option<String>,
}

impl Inputs {
    pub fn new(stdin: Option<String>) -> Self {
        Inputs { stdin }
    }

    pub fn text(&mut self, path: &str) -> Result<String, CliError> {
        if path == "-" {
            self.stdin
                .take()
                .ok_or_else(|| CliError::Usage("stdin (`-`) can be read only once".into()))
        } else {
            fs::read_to_string(path).map_err(|e| CliError::Io(format!("cannot read {path}: {e}")))
        }
    }

    /// A domain file, or a domain JSON report.
    pub fn domain(&mut self, path: &str) -> Result<Domain, CliError> {
        let text = self.text(path)?;
        parse_domain(&text).map_err(|e| e.context(path))
    }

    /// A profile: JSON census, PrefLib SOC, or a domain file with one agent
    /// per order.
    pub fn profile(&mut self, path: &str) -> Result<Profile, CliError> {
        let text = self.text(path)?;
        parse_profile(&text).map_err(|e| e.context(path))
    }
}

pub fn parse_domain(text: &str) -> Result<Domain, CliError> {
    if text.trim_start().starts_with('{') {
        let json: DomainJson = serde_json::from_str(text)
            .map_err(|e| CliError::Lib(cdlab::Error::Parse(format!("domain JSON: {e}"))))?;
        return Ok(json.to_domain()?);
    }
    Ok(read_domain(text)?)
}

fn looks_like_soc(text: &str) -> bool {
    let mut body = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    if text
        .lines()
        .any(|l| l.trim_start().starts_with("# NUMBER ALTERNATIVES"))
    {
        return true;
    }
    match (body.next(), body.next()) {
        (Some(first), Some(second)) => {
            first.parse::<usize>().is_ok()
                && second
                    .split_once(',')
                    .is_some_and(|(i, _)| i.trim().parse::<usize>().is_ok())
                && !second.contains(' ')
                && second.split(',').count() == 2
        }
        _ => false,
    }
}

pub fn parse_profile(text: &str) -> Result<Profile, CliError> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('{') {
        let json: ProfileJson = serde_json::from_str(text)
            .map_err(|e| CliError::Lib(cdlab::Error::Parse(format!("profile JSON: {e}"))))?;
        return Ok(Profile::from_json(&json)?);
    }
    if looks_like_soc(text) {
        return Ok(parse_soc(text)?);
    }
    let d = read_domain(text)?;
    Ok(Profile::uniform(&d)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn profile_sources() {
        let soc = "# NUMBER ALTERNATIVES: 2\n# NUMBER VOTERS: 3\n2: 1,2\n1: 2,1\n";
        assert_eq!(parse_profile(soc).unwrap().agents(), 3);
        let legacy = "2\n1,A\n2,B\n3,3,2\n2,1,2\n1,2,1\n";
        assert_eq!(parse_profile(legacy).unwrap().agents(), 3);
        let dom = "# comment\nn=2\n12\n21\n";
        assert_eq!(parse_profile(dom).unwrap().agents(), 2);
        let json = r#"{"n":2,"census":[{"count":4,"order":[2,1]}]}"#;
        assert_eq!(parse_profile(json).unwrap().agents(), 4);
    }

    #[test]
    fn domain_json_input() {
        let d = parse_domain(r#"{"n":2,"alternatives":[1,2],"size":1,"orders":[[2,1]]}"#).unwrap();
        assert_eq!(d.len(), 1);
    }
}
