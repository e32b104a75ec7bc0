use serde::{Deserialize, Serialize};

use crate::corpus::Document;
use crate::embed::NeighborIndex;
use crate::scalar::Real;
use crate::stability::StabilityReport;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExpandConfig {
    /// Words with stability at or below this are treated as unstable.
    pub theta: f64,
    /// Expansion words appended per unstable token.
    pub n: usize,
}

impl Default for ExpandConfig {
    fn default() -> Self {
        ExpandConfig { theta: 0.25, n: 5 }
    }
}

/// Appends, for every unstable token of a training document, its first `n`
/// unstable neighbors in the document's class space.
///
/// Original tokens are kept in place; expansions follow them in token order
/// and then neighbor order. Tokens missing from the report or the index are
/// left alone.
pub fn expand_document<T: Real>(doc: &Document, class_index: &NeighborIndex<T>, report: &StabilityReport<T>, cfg: &ExpandConfig) -> Document {
    let theta = T::of(cfg.theta);
    let unstable = |w: &str| report.get(w).is_some_and(|s| s <= theta);
    let mut tokens = doc.tokens.clone();
    if cfg.n > 0 {
        for tok in &doc.tokens {
            if !unstable(tok) {
                continue;
            }
            let Ok(neighbors) = class_index.neighbors_of(tok) else { continue };
            tokens.extend(
                neighbors
                    .into_iter()
                    .filter(|(w, _)| unstable(w))
                    .take(cfg.n)
                    .map(|(w, _)| w.to_string()),
            );
        }
    }
    Document { id: doc.id.clone(), label: doc.label.clone(), tokens }
}
