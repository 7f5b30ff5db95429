//! Exact exponential-time algorithms for Target Set Selection.
//!
//! Vertices are `0..n` internally; the text format and the CLI are 1-based.

pub mod activation;
pub mod bounded;
pub mod degree_ratio;
pub mod dual;
pub mod error;
pub mod instance;
pub mod mpvc;
pub mod oracle;
pub mod perfect;
pub mod reductions;
mod subsets;
pub mod vertex_set;

pub use error::{Result, TssError};
pub use instance::{Graph, Instance, Query, Thresholds};
pub use vertex_set::VertexSet;
