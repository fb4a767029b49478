//! JSON shapes shared by reports.

use serde::{Deserialize, Serialize};

use crate::domain::Domain;
use crate::error::Result;
use crate::order::{AlternativeSet, Label, LinearOrder};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DomainJson {
    pub n: usize,
    pub alternatives: Vec<Label>,
    pub size: usize,
    pub orders: Vec<Vec<Label>>,
}

impl DomainJson {
    pub fn to_domain(&self) -> Result<Domain> {
        Domain::new(
            AlternativeSet::new(self.alternatives.iter().copied())?,
            self.orders
                .iter()
                .map(|r| LinearOrder::new(r.clone()))
                .collect::<Result<Vec<_>>>()?,
        )
    }
}

pub fn domain_json(d: &Domain) -> DomainJson {
    DomainJson {
        n: d.n(),
        alternatives: d.alternatives().labels().to_vec(),
        size: d.len(),
        orders: d.iter().map(|o| o.ranking().to_vec()).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let d = Domain::parse_all(&["21", "12"]).unwrap();
        let j = domain_json(&d);
        assert_eq!(
            serde_json::to_string(&j).unwrap(),
            r#"{"n":2,"alternatives":[1,2],"size":2,"orders":[[1,2],[2,1]]}"#
        );
        assert_eq!(j.to_domain().unwrap(), d);
    }
}
