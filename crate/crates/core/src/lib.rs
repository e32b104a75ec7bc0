//! Measure how much each word's meaning differs between two embedding spaces.
//!
//! The crate learns linear maps between two viewpoint spaces from anchor
//! words, scores every shared word with a mapping-based, a neighbor-based and
//! a combined stability measure, and applies the scores to instability
//! ranking, contrastive summaries, document expansion for classification, and
//! correlation with lexical properties.
//!
//! All numeric code is generic over [`Real`] (`f32` or `f64`); the aliases
//! below fix `f64`, which is what the file loaders and the CLI use.

pub mod align;
pub mod analysis;
pub mod corpus;
pub mod embed;
pub mod error;
pub mod fixtures;
pub mod scalar;
pub mod stability;

pub use error::{Error, Result};
pub use scalar::Real;

pub type EmbeddingSpace = embed::EmbeddingSpace<f64>;
pub type NeighborIndex = embed::NeighborIndex<f64>;
pub type LinearMap = align::LinearMap<f64>;
pub type StabilityReport = stability::StabilityReport<f64>;
pub type LinearTextModel = analysis::LinearTextModel<f64>;
pub type SparseVector = corpus::SparseVector<f64>;

pub use embed::{SharedVocab, TextFormat};
