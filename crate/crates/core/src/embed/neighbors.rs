use std::cmp::Ordering;

use rayon::prelude::*;

use crate::embed::{EmbeddingSpace, SharedVocab};
use crate::error::{Error, Result};
use crate::scalar::{self, Real};

/// One entry of a neighbor list: a shared-vocabulary position and its cosine
/// to the query word.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Neighbor<T> {
    pub pos: usize,
    pub sim: T,
}

/// Per-word ranked nearest neighbors within one space, restricted to the
/// shared vocabulary.
///
/// Lists are sorted by descending cosine, ties by ascending word. A word is
/// never its own neighbor.
#[derive(Clone, Debug)]
pub struct NeighborIndex<T> {
    space_id: String,
    m: usize,
    words: Vec<String>,
    vocab_fingerprint: u64,
    entries: Vec<Vec<Neighbor<T>>>,
}

/// Descending similarity, then ascending position (positions follow the
/// sorted word order, so this is the lexicographic tie-break).
fn rank_order<T: Real>(a: &Neighbor<T>, b: &Neighbor<T>) -> Ordering {
    b.sim
        .partial_cmp(&a.sim)
        .unwrap_or(Ordering::Equal)
        .then(a.pos.cmp(&b.pos))
}

impl<T: Real> NeighborIndex<T> {
    /// Exact exhaustive top-`m` search for every shared word.
    pub fn build(space: &EmbeddingSpace<T>, shared: &SharedVocab, m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidParam("neighbor count must be at least 1".into()));
        }
        if shared.is_empty() {
            return Err(Error::EmptyVocab);
        }
        let rows: Vec<&[T]> = shared
            .words()
            .iter()
            .map(|w| space.vector(w))
            .collect::<Result<_>>()
            .map_err(|e| Error::Mismatch(format!("space `{}` lacks a shared word: {e}", space.id())))?;
        let norms: Vec<T> = rows.iter().map(|r| scalar::norm(r)).collect();
        let keep = m.min(shared.len() - 1);

        let entries = (0..rows.len())
            .into_par_iter()
            .map(|q| {
                let mut cands: Vec<Neighbor<T>> = (0..rows.len())
                    .filter(|&j| j != q)
                    .map(|j| {
                        let sim = scalar::clamp_unit(scalar::dot(rows[q], rows[j]) / (norms[q] * norms[j]));
                        Neighbor { pos: j, sim }
                    })
                    .collect();
                if keep < cands.len() && keep > 0 {
                    cands.select_nth_unstable_by(keep - 1, rank_order);
                }
                cands.truncate(keep);
                cands.sort_by(rank_order);
                cands
            })
            .collect();

        Ok(NeighborIndex {
            space_id: space.id().to_string(),
            m,
            words: shared.words().to_vec(),
            vocab_fingerprint: shared.fingerprint(),
            entries,
        })
    }

    /// Assembles an index from explicit lists (e.g. precomputed or hand-made
    /// fixtures). Lists are re-sorted into canonical order and checked.
    pub fn from_lists(
        space_id: impl Into<String>,
        shared: &SharedVocab,
        m: usize,
        mut entries: Vec<Vec<Neighbor<T>>>,
    ) -> Result<Self> {
        if entries.len() != shared.len() {
            return Err(Error::Mismatch(format!(
                "{} neighbor lists for {} shared words",
                entries.len(),
                shared.len()
            )));
        }
        for (q, list) in entries.iter_mut().enumerate() {
            if list.len() > m {
                return Err(Error::InvalidParam(format!("list for `{}` longer than m={m}", shared.word(q))));
            }
            let mut seen = std::collections::HashSet::new();
            for n in list.iter() {
                if n.pos == q || n.pos >= shared.len() || !seen.insert(n.pos) || !n.sim.is_finite() {
                    return Err(Error::InvalidParam(format!(
                        "invalid neighbor list for `{}`",
                        shared.word(q)
                    )));
                }
            }
            list.sort_by(rank_order);
        }
        Ok(NeighborIndex {
            space_id: space_id.into(),
            m,
            words: shared.words().to_vec(),
            vocab_fingerprint: shared.fingerprint(),
            entries,
        })
    }

    pub fn space_id(&self) -> &str {
        &self.space_id
    }

    /// Requested neighbor count.
    pub fn m(&self) -> usize {
        self.m
    }

    /// Length of a full list: `m` clamped to the vocabulary size minus one.
    pub fn effective_m(&self) -> usize {
        self.m.min(self.words.len().saturating_sub(1))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn words(&self) -> &[String] {
        &self.words
    }

    pub fn vocab_fingerprint(&self) -> u64 {
        self.vocab_fingerprint
    }

    pub fn built_over(&self, shared: &SharedVocab) -> bool {
        self.words.len() == shared.len() && self.vocab_fingerprint == shared.fingerprint()
    }

    pub fn neighbors(&self, pos: usize) -> &[Neighbor<T>] {
        &self.entries[pos]
    }

    /// Neighbor words and similarities of `word`, best first.
    pub fn neighbors_of(&self, word: &str) -> Result<Vec<(&str, T)>> {
        let pos = self
            .words
            .binary_search_by(|w| w.as_str().cmp(word))
            .map_err(|_| Error::UnknownWord(word.to_string()))?;
        Ok(self.entries[pos]
            .iter()
            .map(|n| (self.words[n.pos].as_str(), n.sim))
            .collect())
    }

    pub(crate) fn same_vocab(&self, other: &NeighborIndex<T>) -> bool {
        self.words.len() == other.words.len() && self.vocab_fingerprint == other.vocab_fingerprint
    }
}
