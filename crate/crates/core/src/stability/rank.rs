use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::stability::StabilityReport;

/// Rescales `scores` in place to `[0, 1]`. When every value is equal there is
/// no evidence of instability and all scores become 1.
pub fn minmax_normalize<T: Real>(scores: &mut [T]) -> Result<()> {
    if scores.is_empty() {
        return Err(Error::EmptyVocab);
    }
    let (lo, hi) = scores
        .iter()
        .fold((T::infinity(), T::neg_infinity()), |(lo, hi), &x| (lo.min(x), hi.max(x)));
    if !(lo.is_finite() && hi.is_finite()) {
        return Err(Error::InvalidParam("cannot normalize non-finite scores".into()));
    }
    let span = hi - lo;
    if span == T::zero() {
        scores.iter_mut().for_each(|x| *x = T::one());
        return Ok(());
    }
    for x in scores.iter_mut() {
        *x = ((*x - lo) / span).max(T::zero()).min(T::one());
    }
    Ok(())
}

/// All words ordered from least to most stable; ties go lexicographically.
pub fn rank_by_instability<T: Real>(report: &StabilityReport<T>) -> Vec<String> {
    report.sorted().into_iter().map(|(w, _)| w.to_string()).collect()
}

/// Jaccard similarity of the last `k` entries (the most stable words) of two
/// rankings.
pub fn tail_jaccard<S: AsRef<str>>(rank_a: &[S], rank_b: &[S], k: usize) -> Result<f64> {
    if k == 0 || k > rank_a.len().min(rank_b.len()) {
        return Err(Error::InvalidParam(format!(
            "tail size {k} outside 1..={}",
            rank_a.len().min(rank_b.len())
        )));
    }
    let tail = |r: &[S]| -> HashSet<String> { r[r.len() - k..].iter().map(|w| w.as_ref().to_string()).collect() };
    let a = tail(rank_a);
    let b = tail(rank_b);
    let inter = a.intersection(&b).count();
    let union = a.union(&b).count();
    Ok(inter as f64 / union as f64)
}
