//! Domain families and constructions.

mod families;
mod law;
mod search;

pub use families::{
    black_single_peaked, caterpillar_group_separable, fishburn_alternating, fishburn_law, s_construction,
    set_alternating, set_alternating_law, single_crossing, single_crossing_path,
};
pub use law::{generate_from_never_law, NeverLaw, LAW_CAP, LAW_LONG_CAP};
pub use search::{enumerate_min_abundant, search_min_abundant, SearchSpec, SEARCH_CAP, SEARCH_LONG_CAP};
