use std::collections::HashMap;
use std::fs;
use std::path::Path;

use serde::Serialize;

use crate::analysis::pearson;
use crate::corpus::FrequencyTable;
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::stability::{Method, StabilityReport};

/// Reads a `word<TAB>value` lexicon; `#` lines are comments.
pub fn read_lexicon(path: impl AsRef<Path>) -> Result<HashMap<String, f64>> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut out = HashMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim_end();
        if line.trim_start().starts_with('#') || line.trim().is_empty() {
            continue;
        }
        let (w, v) = line
            .split_once('\t')
            .ok_or_else(|| Error::parse(i + 1, "expected `word<TAB>value`"))?;
        let v: f64 = v
            .trim()
            .parse()
            .map_err(|_| Error::parse(i + 1, format!("bad value `{v}`")))?;
        if !v.is_finite() {
            return Err(Error::parse(i + 1, "non-finite value"));
        }
        out.insert(w.trim().to_string(), v);
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Correlation {
    pub r: f64,
    /// Words used (lexicon ∩ report vocabulary).
    pub n: usize,
}

/// Correlations of instability (`1 - stability`) with log frequency,
/// polysemy and concreteness for one method.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LawReport {
    pub method: Method,
    pub conformity: Correlation,
    pub innovation: Correlation,
    pub concreteness: Correlation,
}

fn correlate<T: Real>(report: &StabilityReport<T>, values: impl Fn(&str) -> Option<f64>, what: &str) -> Result<Correlation> {
    let (xs, ys): (Vec<f64>, Vec<f64>) = report
        .words()
        .iter()
        .zip(report.scores())
        .filter_map(|(w, s)| values(w).map(|v| (1.0 - s.as_f64(), v)))
        .unzip();
    if xs.len() < 2 {
        return Err(Error::Insufficient(format!(
            "{what}: only {} word(s) overlap the report vocabulary",
            xs.len()
        )));
    }
    Ok(Correlation { r: pearson(&xs, &ys)?, n: xs.len() })
}

/// Conformity uses the natural log of the corpus count, so only words seen
/// in the corpus take part.
pub fn law_correlations<T: Real>(
    report: &StabilityReport<T>,
    freq: &FrequencyTable,
    polysemy: &HashMap<String, f64>,
    concreteness: &HashMap<String, f64>,
) -> Result<LawReport> {
    let conformity = correlate(
        report,
        |w| match freq.get(w) {
            0 => None,
            c => Some((c as f64).ln()),
        },
        "frequency",
    )?;
    let innovation = correlate(report, |w| polysemy.get(w).copied(), "polysemy")?;
    let concreteness = correlate(report, |w| concreteness.get(w).copied(), "concreteness")?;
    Ok(LawReport { method: report.method, conformity, innovation, concreteness })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RankDelta {
    /// `rank_a(w) - rank_b(w)` per probe, zero-based ranks.
    pub deltas: Vec<(String, i64)>,
    pub mean_rank_a: f64,
    pub mean_rank_b: f64,
}

pub fn rank_delta<S: AsRef<str>>(rank_a: &[S], rank_b: &[S], probes: &[S]) -> Result<RankDelta> {
    fn pos<S: AsRef<str>>(r: &[S]) -> HashMap<&str, usize> {
        r.iter().enumerate().map(|(i, w)| (w.as_ref(), i)).collect()
    }
    let (pa, pb) = (pos(rank_a), pos(rank_b));
    let mut deltas = Vec::with_capacity(probes.len());
    let (mut sa, mut sb) = (0.0, 0.0);
    for p in probes {
        let p = p.as_ref();
        let (Some(&a), Some(&b)) = (pa.get(p), pb.get(p)) else {
            return Err(Error::UnknownWord(p.to_string()));
        };
        deltas.push((p.to_string(), a as i64 - b as i64));
        sa += a as f64;
        sb += b as f64;
    }
    let n = probes.len().max(1) as f64;
    Ok(RankDelta { deltas, mean_rank_a: sa / n, mean_rank_b: sb / n })
}
