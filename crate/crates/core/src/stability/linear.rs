use rayon::prelude::*;

use crate::align::{round_trip_stability, LinearMap};
use crate::embed::{EmbeddingSpace, SharedVocab};
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::stability::{Method, StabilityParams, StabilityReport};

/// Round-trip mapping stability for every shared word.
///
/// Scores are the raw round-trip cosines (no rescaling), with negative
/// values clipped to 0 so the report stays in `[0, 1]`.
pub fn linear_stability<T: Real>(
    s0: &EmbeddingSpace<T>,
    s1: &EmbeddingSpace<T>,
    shared: &SharedVocab,
    map01: &LinearMap<T>,
    map10: &LinearMap<T>,
    params: &StabilityParams,
) -> Result<StabilityReport<T>> {
    if shared.is_empty() {
        return Err(Error::EmptyVocab);
    }
    let scores = shared
        .words()
        .par_iter()
        .map(|w| round_trip_stability(map01, map10, s0, s1, w).map(|s| s.max(T::zero()).min(T::one())))
        .collect::<Result<Vec<T>>>()?;
    Ok(StabilityReport::new(
        Method::Linear,
        0,
        params.clone(),
        (s0.id().to_string(), s1.id().to_string()),
        shared.words().to_vec(),
        scores,
        Vec::new(),
    ))
}
