//! Per-word stability scores between two viewpoints: mapping-based,
//! neighbor-based (iterative), and the combination of the two.

mod combination;
mod linear;
mod neighbor;
mod rank;
mod report;

pub use combination::{combination_stability, lambda_select, overlap_count};
pub use linear::linear_stability;
pub use neighbor::neighbor_stability;
pub use rank::{minmax_normalize, rank_by_instability, tail_jaccard};
pub use report::{Method, StabilityParams, StabilityReport};
