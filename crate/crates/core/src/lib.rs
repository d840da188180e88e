//! Partitioning with symmetric submodular costs under an actionability
//! constraint: some block must hold at least a fraction `t` of some group.
//!
//! Costs are evaluated through [`oracle::Oracle`] (graph cuts or Gaussian
//! mutual information). [`minimize`] finds cheapest subsets, optionally
//! within a [`family::GroupCapFamily`]; [`cluster`] builds partitions from
//! them, and [`report`] writes and re-checks results.

pub mod battery;
pub mod cluster;
pub mod counterexample;
pub mod error;
pub mod family;
pub mod gaussian;
pub mod graph;
pub mod instance;
pub mod minimize;
pub mod model;
pub mod objective;
pub mod oracle;
pub mod report;
pub mod set;

pub use error::{Error, Result};

// mdbook cannot link against this crate, so rustdoc runs the guide's
// snippets instead, one module per chapter.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/objective.md")]
    mod objective {}
    #[doc = include_str!("../../../book/src/families.md")]
    mod families {}
    #[doc = include_str!("../../../book/src/oracles.md")]
    mod oracles {}
    #[doc = include_str!("../../../book/src/minimizers.md")]
    mod minimizers {}
    #[doc = include_str!("../../../book/src/greedy.md")]
    mod greedy {}
    #[doc = include_str!("../../../book/src/counterexample.md")]
    mod counterexample {}
    #[doc = include_str!("../../../book/src/parallel.md")]
    mod parallel {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
