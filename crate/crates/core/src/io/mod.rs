//! Text formats: domain files, PrefLib strict-order-complete files, and
//! JSON reports.

mod domain_text;
mod report;
mod soc;

pub use domain_text::{read_domain, read_domain_file, write_domain, write_domain_file};
pub use report::{domain_json, DomainJson};
pub use soc::{parse_soc, parse_soc_document, SocDocument};
