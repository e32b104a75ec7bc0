use std::fmt;

use serde::Serialize;

use crate::embed::NeighborIndex;
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::stability::StabilityReport;

/// How each viewpoint frames one concept: its nearest neighbors on each
/// side that are also unstable.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ViewpointSummary {
    pub concept: String,
    pub threshold: f64,
    pub side0: Vec<String>,
    pub side1: Vec<String>,
    pub space0: String,
    pub space1: String,
    pub length: usize,
}

impl ViewpointSummary {
    /// Two aligned columns headed by the viewpoint ids.
    pub fn to_columns(&self) -> String {
        let width = self
            .side0
            .iter()
            .map(|w| w.chars().count())
            .chain(std::iter::once(self.space0.chars().count()))
            .max()
            .unwrap_or(0);
        let mut out = format!("# concept\t{}\n# threshold\t{}\n", self.concept, self.threshold);
        out.push_str(&format!("{:<width$}  {}\n", self.space0, self.space1));
        for i in 0..self.side0.len().max(self.side1.len()) {
            let a = self.side0.get(i).map_or("", String::as_str);
            let b = self.side1.get(i).map_or("", String::as_str);
            out.push_str(format!("{a:<width$}  {b}").trim_end());
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for ViewpointSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_columns())
    }
}

fn side<T: Real>(concept: &str, idx: &NeighborIndex<T>, report: &StabilityReport<T>, threshold: T, l: usize) -> Result<Vec<String>> {
    Ok(idx
        .neighbors_of(concept)?
        .into_iter()
        .filter(|(w, _)| report.get(w).is_some_and(|s| s <= threshold))
        .take(l)
        .map(|(w, _)| w.to_string())
        .collect())
}

/// For each side, walks the concept's neighbors best-first and keeps those
/// whose stability is at most `threshold`, up to `l` words.
///
/// Neighbor lists are already limited to the shared vocabulary. Reports
/// used here are normally computed with a single iteration.
pub fn summarize_viewpoints<T: Real>(
    concept: &str,
    idx0: &NeighborIndex<T>,
    idx1: &NeighborIndex<T>,
    report: &StabilityReport<T>,
    threshold: T,
    l: usize,
) -> Result<ViewpointSummary> {
    if report.get(concept).is_none() {
        return Err(Error::UnknownWord(concept.to_string()));
    }
    Ok(ViewpointSummary {
        concept: concept.to_string(),
        threshold: threshold.as_f64(),
        side0: side(concept, idx0, report, threshold, l)?,
        side1: side(concept, idx1, report, threshold, l)?,
        space0: idx0.space_id().to_string(),
        space1: idx1.space_id().to_string(),
        length: l,
    })
}
