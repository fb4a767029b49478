//! Condorcet domains, their never conditions, and how many distinct
//! suborders they keep on small sets of alternatives.
//!
//! ```
//! use cdlab::{is_condorcet_domain, exact_abundance, Domain};
//!
//! let d = Domain::parse_all(&["12345678", "43218765", "65872143", "78563412"]).unwrap();
//! assert!(is_condorcet_domain(&d));
//! assert_eq!(exact_abundance(&d, 3).unwrap().s, 4);
//! ```

pub mod abundance;
pub mod condorcet;
pub mod diversity;
pub mod domain;
mod enumerate;
pub mod error;
pub mod generators;
pub mod io;
pub mod order;
pub mod pattern;
pub mod profile;
pub mod sampling;
pub mod subsets;

pub use abundance::{
    abundance_sum, abundance_vector, abundance_vector_upto, compare_abundance, exact_abundance, is_abundant,
    restriction_sizes, Abundance, AbundanceVector,
};
pub use condorcet::{
    admissible_orders, close_to_maximal, find_uniform_never_subset, is_condorcet, is_condorcet_domain,
    is_discordant, is_maximal, majority_oracle_check, satisfied_conditions, CondorcetReport,
    DiscordanceReport, FishburnCondition, NeverCondition, Slot, UniformSubset,
};
pub use diversity::{compare_profiles, compute_index, IndexKind, IndexValue};
pub use domain::{Domain, Relabeling};
pub use error::{Error, Result};
pub use order::{parse_order, AlternativeSet, Label, LinearOrder};
pub use pattern::{Triple, TriplePatternSet};
pub use profile::{restrict_profile, support, Profile};
pub use sampling::{run_experiment, sample_profile, AbundanceHistogram, ExperimentConfig};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/orders-and-domains.md")]
    mod orders_and_domains {}
    #[doc = include_str!("../../../book/src/never-conditions.md")]
    mod never_conditions {}
    #[doc = include_str!("../../../book/src/abundance.md")]
    mod abundance {}
    #[doc = include_str!("../../../book/src/families.md")]
    mod families {}
    #[doc = include_str!("../../../book/src/profiles.md")]
    mod profiles {}
    #[doc = include_str!("../../../book/src/sampling.md")]
    mod sampling {}
    #[doc = include_str!("../../../book/src/files.md")]
    mod files {}
    #[doc = include_str!("../../../book/src/command-line.md")]
    mod command_line {}
}
