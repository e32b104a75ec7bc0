//! Linear maps between two spaces learned from anchor words, and the
//! mapping-based similarity measures built on them.

mod anchors;
mod map;
mod similarity;
mod train;

pub use anchors::{default_anchors, load_anchors, parse_anchors};
pub use map::LinearMap;
pub use similarity::{one_way_similarity, round_trip_stability};
pub use train::{gradient_check, loss_gradient, map_loss, train_map, AlignConfig};
