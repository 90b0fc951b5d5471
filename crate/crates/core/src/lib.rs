//! Factorization posets of generated groups: construction, Hurwitz action, chain-connectivity,
//! compatible generator orders, EL-labelings, cycle graphs and shellability.

pub mod analysis;
pub mod connectivity;
pub mod cyclegraph;
pub mod error;
pub mod fixtures;
pub mod group;
pub mod hurwitz;
pub mod orders;
pub mod poset;
pub mod report;
pub mod scan;
pub mod shelling;

pub use error::{Error, Result};
pub use group::{build_labeled_interval, ElementId, GroupOracle, Permutation};
pub use orders::GeneratorOrder;
pub use poset::{Chain, Factorization, LabeledInterval, NodeId};

/// Resource caps shared by all operations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Limits {
    /// Largest group or interval that will be materialized.
    pub max_elements: usize,
    /// Groups up to this order get a full multiplication table.
    pub table_threshold: usize,
    /// Largest number of maximal chains enumerated.
    pub max_chains: usize,
    /// Node budget of the shelling search and the feedback-arc branch and bound.
    pub search_budget: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_elements: 100_000, table_threshold: 2048, max_chains: 1_000_000, search_budget: 1 << 24 }
    }
}
