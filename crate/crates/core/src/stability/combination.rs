use std::collections::{HashMap, HashSet};
use std::hash::Hash;

use ndarray::Array2;
use rayon::prelude::*;

use crate::align::LinearMap;
use crate::embed::{EmbeddingSpace, NeighborIndex};
use crate::error::{Error, Result};
use crate::scalar::{cosine_of, Real};
use crate::stability::neighbor::{check_indexes, shared_rows};
use crate::stability::{minmax_normalize, Method, StabilityParams, StabilityReport};

/// Rank-weighted neighbor overlap:
/// `|Ni| * |Ni ∩ Nj| - sum over shared w' of rank_j(w') / prior(w')`,
/// with zero-based ranks in `nj` and priors clamped below at `epsilon`.
pub fn overlap_count<K, T, F>(ni: &[K], nj: &[K], prior: F, epsilon: T) -> T
where
    K: Eq + Hash,
    T: Real,
    F: Fn(&K) -> T,
{
    let rank_j: HashMap<&K, usize> = nj.iter().enumerate().map(|(r, k)| (k, r)).collect();
    let shared: Vec<(&K, usize)> = ni
        .iter()
        .filter_map(|k| rank_j.get(k).map(|&r| (k, r)))
        .collect();
    let penalty: T = shared
        .iter()
        .map(|&(k, r)| T::of_usize(r) / prior(k).max(epsilon))
        .sum();
    T::of_usize(ni.len()) * T::of_usize(shared.len()) - penalty
}

fn lambda_from<T: Real>(same_set: bool, c01: T, c10: T) -> T {
    if same_set {
        T::one()
    } else if c01 == T::zero() && c10 == T::zero() {
        T::zero()
    } else {
        T::of(0.5)
    }
}

/// Mixing weight between the overlap signal and the mapping signal:
/// 1 when the two lists hold the same words (in any order), 0 when both
/// overlap counts are zero, 0.5 otherwise.
pub fn lambda_select<K: Eq + Hash, T: Real>(n0: &[K], n1: &[K], c01: T, c10: T) -> T {
    let a: HashSet<&K> = n0.iter().collect();
    let b: HashSet<&K> = n1.iter().collect();
    lambda_from(a == b, c01, c10)
}

/// Per-word quantities that do not change across rounds.
struct WordTerms<T> {
    same_set: bool,
    len0: usize,
    len1: usize,
    /// Shared neighbors of list 0 with their zero-based rank in list 1.
    inter01: Vec<(usize, usize)>,
    inter10: Vec<(usize, usize)>,
    /// Neighbors only in list 0, with `cos(W01 v0(n), v1(w))`.
    diff01: Vec<(usize, T)>,
    diff10: Vec<(usize, T)>,
}

fn check_map<T: Real>(map: &LinearMap<T>, src: &EmbeddingSpace<T>, dst: &EmbeddingSpace<T>, name: &str) -> Result<()> {
    if map.source_dim() != src.dim() || map.target_dim() != dst.dim() {
        return Err(Error::Mismatch(format!(
            "{name} is {}x{}, spaces need {}x{}",
            map.target_dim(),
            map.source_dim(),
            dst.dim(),
            src.dim()
        )));
    }
    Ok(())
}

/// `rows · Wᵀ` for every shared word: each word's vector carried into the
/// other space.
fn map_rows<T: Real>(rows: &[&[T]], map: &LinearMap<T>) -> Array2<T> {
    let x = Array2::from_shape_fn((rows.len(), map.source_dim()), |(i, j)| rows[i][j]);
    x.dot(&map.weights.t())
}

/// Combination of neighbor overlap and linear mapping.
///
/// Per round and word: the overlap counts in both directions give
/// `s_nei = (C01 + C10) / (2 * sum_{i=1..m} i)`; neighbors found in only one
/// list are mapped into the other space and compared with the word there,
/// weighted by their previous scores, giving `s_lin`; the two are mixed with
/// [`lambda_select`] and the mixture is min-max normalized. The maps stay
/// fixed across rounds.
pub fn combination_stability<T: Real>(
    s0: &EmbeddingSpace<T>,
    s1: &EmbeddingSpace<T>,
    idx0: &NeighborIndex<T>,
    idx1: &NeighborIndex<T>,
    map01: &LinearMap<T>,
    map10: &LinearMap<T>,
    params: &StabilityParams,
) -> Result<StabilityReport<T>> {
    let words = check_indexes(idx0, idx1, params)?;
    check_map(map01, s0, s1, "map01")?;
    check_map(map10, s1, s0, "map10")?;
    let rows0 = shared_rows(s0, words)?;
    let rows1 = shared_rows(s1, words)?;
    let mapped01 = map_rows(&rows0, map01);
    let mapped10 = map_rows(&rows1, map10);

    let terms: Vec<WordTerms<T>> = (0..words.len())
        .into_par_iter()
        .map(|w| {
            let list0: Vec<usize> = idx0.neighbors(w).iter().map(|n| n.pos).collect();
            let list1: Vec<usize> = idx1.neighbors(w).iter().map(|n| n.pos).collect();
            let rank0: HashMap<usize, usize> = list0.iter().enumerate().map(|(r, &p)| (p, r)).collect();
            let rank1: HashMap<usize, usize> = list1.iter().enumerate().map(|(r, &p)| (p, r)).collect();
            let mut t = WordTerms {
                same_set: list0.len() == list1.len() && list0.iter().all(|p| rank1.contains_key(p)),
                len0: list0.len(),
                len1: list1.len(),
                inter01: Vec::new(),
                inter10: Vec::new(),
                diff01: Vec::new(),
                diff10: Vec::new(),
            };
            for &p in &list0 {
                match rank1.get(&p) {
                    Some(&r) => t.inter01.push((p, r)),
                    None => t.diff01.push((p, cosine_of(mapped01.row(p).as_slice().unwrap(), rows1[w]))),
                }
            }
            for &p in &list1 {
                match rank0.get(&p) {
                    Some(&r) => t.inter10.push((p, r)),
                    None => t.diff10.push((p, cosine_of(mapped10.row(p).as_slice().unwrap(), rows0[w]))),
                }
            }
            t
        })
        .collect();

    let m_eff = idx0.effective_m();
    let denom = T::of(2.0) * T::of_usize(m_eff * (m_eff + 1) / 2);
    let eps = T::of(params.prior_epsilon);

    let count = |len: usize, inter: &[(usize, usize)], prev: &[T]| -> T {
        let penalty: T = inter.iter().map(|&(p, r)| T::of_usize(r) / prev[p].max(eps)).sum();
        T::of_usize(len) * T::of_usize(inter.len()) - penalty
    };
    let mapped_sim = |diff: &[(usize, T)], prev: &[T]| -> T {
        if diff.is_empty() {
            return T::zero();
        }
        diff.iter().map(|&(p, c)| c * prev[p]).sum::<T>() / T::of_usize(diff.len())
    };

    let mut scores = vec![T::one(); words.len()];
    let mut trace = Vec::with_capacity(params.iterations);
    for _ in 0..params.iterations {
        let prev = &scores;
        let mut next: Vec<T> = terms
            .par_iter()
            .map(|t| {
                let c01 = count(t.len0, &t.inter01, prev);
                let c10 = count(t.len1, &t.inter10, prev);
                let s_nei = if denom > T::zero() { (c01 + c10) / denom } else { T::zero() };
                let s_lin = (mapped_sim(&t.diff01, prev) + mapped_sim(&t.diff10, prev)) / T::of(2.0);
                let lambda = lambda_from(t.same_set, c01, c10);
                lambda * s_nei + (T::one() - lambda) * s_lin
            })
            .collect();
        minmax_normalize(&mut next)?;
        trace.push(next.clone());
        scores = next;
    }

    Ok(StabilityReport::new(
        Method::Combination,
        params.iterations,
        params.clone(),
        (s0.id().to_string(), s1.id().to_string()),
        words.to_vec(),
        scores,
        trace,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embed::{generate_synthetic_space, SharedVocab};

    #[test]
    fn worked_example_count() {
        let n0 = ["n1", "n2", "n3", "n4", "n5"];
        let n1 = ["n2", "n4", "n1", "n5", "n6"];
        // 5 * 4 - (2 + 0 + 1 + 3)
        assert_eq!(overlap_count(&n0, &n1, |_| 1.0, 1e-6), 14.0);
    }

    #[test]
    fn identical_and_disjoint_counts() {
        let l = ["a", "b", "c", "d", "e"];
        assert_eq!(overlap_count(&l, &l, |_| 1.0, 1e-6), 15.0);
        assert_eq!(overlap_count(&l, &["v", "x", "y"], |_| 1.0, 1e-6), 0.0);
    }

    #[test]
    fn zero_priors_are_clamped() {
        let count: f64 = overlap_count(&["a", "b"], &["b", "a"], |_| 0.0, 0.5);
        // 2*2 - (1/0.5 + 0/0.5)
        assert_eq!(count, 2.0);
    }

    #[test]
    fn lambda_cases() {
        assert_eq!(lambda_select(&["a", "b", "c"], &["c", "a", "b"], 3.0, 2.0), 1.0);
        assert_eq!(lambda_select(&["a", "b"], &["c", "d"], 0.0, 0.0), 0.0);
        assert_eq!(lambda_select(&["a", "b"], &["b", "d"], 2.0, 1.0), 0.5);
    }

    #[test]
    fn identical_spaces_all_one() {
        let s = generate_synthetic_space::<f64>(30, 5, 8);
        let shared = SharedVocab::intersect(&s, &s);
        let idx = NeighborIndex::build(&s, &shared, 7).unwrap();
        let id = LinearMap::identity(5);
        let params = StabilityParams { m: 7, iterations: 3, ..Default::default() };
        let r = combination_stability(&s, &s, &idx, &idx, &id, &id, &params).unwrap();
        for round in &r.trace {
            assert!(round.iter().all(|&x| x == 1.0));
        }
    }

    #[test]
    fn rejects_wrong_map_shape() {
        let s = generate_synthetic_space::<f64>(10, 3, 8);
        let shared = SharedVocab::intersect(&s, &s);
        let idx = NeighborIndex::build(&s, &shared, 3).unwrap();
        let bad = LinearMap::identity(2);
        let params = StabilityParams { m: 3, ..Default::default() };
        let id = LinearMap::identity(3);
        assert!(combination_stability(&s, &s, &idx, &idx, &bad, &id, &params).is_err());
    }
}
