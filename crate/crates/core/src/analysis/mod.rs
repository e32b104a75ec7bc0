//! Downstream uses of stability scores: contrastive summaries, document
//! expansion for classification, evaluation metrics and correlation studies.

mod classifier;
mod expand;
mod experiment;
mod laws;
mod metrics;
mod summary;

pub use classifier::{classify, train_classifier, ClassifierConfig, LinearTextModel};
pub use expand::{expand_document, ExpandConfig};
pub use experiment::{accuracy_by_stability_bin, run_expansion_experiment, BinAccuracy, ExperimentConfig, MethodResult};
pub use laws::{law_correlations, read_lexicon, rank_delta, Correlation, LawReport, RankDelta};
pub use metrics::{evaluate_prf, pearson, Prf};
pub use summary::{summarize_viewpoints, ViewpointSummary};
