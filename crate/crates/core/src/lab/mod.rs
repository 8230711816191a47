//! Explicit codes: separation, symbol statistics and the counting steps of the upper bound.

mod census;
mod code;
mod frequency;
mod hansel;
mod search;

pub use census::{census_identity_total, subcode_census, Census, OmegaPattern, DEFAULT_CENSUS_BUDGET};
pub use code::{is_k_separated, is_separated, Code, Separation, DEFAULT_PROBE_BUDGET, MAX_ALPHABET};
pub use frequency::{classify, decimal_rational, ell, ell_from_rate, frequency_profile, CoordinateClassification, FrequencyProfile};
pub use hansel::{
    hansel_check, hypergraph_hansel_check, tau, tau_graph, tau_sum, HanselCheck, HypergraphCheck,
    HANSEL_SLACK,
};
pub use search::{random_code_search, SearchResult};
