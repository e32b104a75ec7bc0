use rayon::prelude::*;

use crate::embed::{EmbeddingSpace, NeighborIndex};
use crate::error::{Error, Result};
use crate::scalar::{cosine_of, Real};
use crate::stability::{minmax_normalize, Method, StabilityParams, StabilityReport};

/// Checks that two indexes describe the same shared vocabulary with the same
/// neighbor count, and returns that vocabulary.
pub(crate) fn check_indexes<'a, T: Real>(
    idx0: &'a NeighborIndex<T>,
    idx1: &NeighborIndex<T>,
    params: &StabilityParams,
) -> Result<&'a [String]> {
    params.validate()?;
    if !idx0.same_vocab(idx1) {
        return Err(Error::Mismatch("neighbor indexes were built over different vocabularies".into()));
    }
    if idx0.m() != idx1.m() || idx0.m() != params.m {
        return Err(Error::Mismatch(format!(
            "neighbor counts differ: index0 m={}, index1 m={}, params m={}",
            idx0.m(),
            idx1.m(),
            params.m
        )));
    }
    if idx0.is_empty() {
        return Err(Error::EmptyVocab);
    }
    Ok(idx0.words())
}

pub(crate) fn shared_rows<'a, T: Real>(space: &'a EmbeddingSpace<T>, words: &[String]) -> Result<Vec<&'a [T]>> {
    words
        .iter()
        .map(|w| space.vector(w))
        .collect::<Result<_>>()
        .map_err(|e| Error::Mismatch(format!("space `{}` does not cover the index vocabulary: {e}", space.id())))
}

/// Neighbor-graph stability.
///
/// Every word starts fully stable. In each round a word's score is the mean
/// of two terms: the cosines, measured in space 0, between the word and its
/// space-1 neighbors, weighted by the neighbors' previous scores; and the
/// same with the spaces swapped. Neighbors whose similarity in their own space
/// is below `sim_floor` are dropped first; a direction with no neighbors left
/// contributes 0. Scores are min-max normalized after every round, and each
/// round only reads the previous round's scores.
pub fn neighbor_stability<T: Real>(
    s0: &EmbeddingSpace<T>,
    s1: &EmbeddingSpace<T>,
    idx0: &NeighborIndex<T>,
    idx1: &NeighborIndex<T>,
    params: &StabilityParams,
) -> Result<StabilityReport<T>> {
    let words = check_indexes(idx0, idx1, params)?;
    let rows0 = shared_rows(s0, words)?;
    let rows1 = shared_rows(s1, words)?;
    let floor = T::of(params.sim_floor);

    // (neighbor, cosine to the word in the *other* space) per word
    let weighted = |rows: &[&[T]], idx: &NeighborIndex<T>| -> Vec<Vec<(usize, T)>> {
        (0..words.len())
            .into_par_iter()
            .map(|w| {
                idx.neighbors(w)
                    .iter()
                    .filter(|n| n.sim >= floor)
                    .map(|n| (n.pos, cosine_of(rows[w], rows[n.pos])))
                    .collect()
            })
            .collect()
    };
    let terms01 = weighted(&rows0, idx1);
    let terms10 = weighted(&rows1, idx0);

    let mean_term = |terms: &[(usize, T)], prev: &[T]| -> T {
        if terms.is_empty() {
            return T::zero();
        }
        let sum: T = terms.iter().map(|&(p, c)| c * prev[p]).sum();
        sum / T::of_usize(terms.len())
    };

    let mut scores = vec![T::one(); words.len()];
    let mut trace = Vec::with_capacity(params.iterations);
    for _ in 0..params.iterations {
        let prev = &scores;
        let mut next: Vec<T> = (0..words.len())
            .into_par_iter()
            .map(|w| (mean_term(&terms01[w], prev) + mean_term(&terms10[w], prev)) / T::of(2.0))
            .collect();
        minmax_normalize(&mut next)?;
        trace.push(next.clone());
        scores = next;
    }

    Ok(StabilityReport::new(
        Method::Neighbor,
        params.iterations,
        params.clone(),
        (s0.id().to_string(), s1.id().to_string()),
        words.to_vec(),
        scores,
        trace,
    ))
}
