use crate::embed::EmbeddingSpace;
use crate::scalar::Real;

/// Words present in both spaces, sorted lexicographically, with each word's
/// row in either space.
///
/// Positions in `words` are the canonical word ids used by neighbor indexes
/// and stability reports.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SharedVocab {
    words: Vec<String>,
    rows0: Vec<usize>,
    rows1: Vec<usize>,
}

impl SharedVocab {
    pub fn intersect<T: Real>(s0: &EmbeddingSpace<T>, s1: &EmbeddingSpace<T>) -> Self {
        let mut words: Vec<String> = s0
            .words()
            .iter()
            .filter(|w| s1.contains(w))
            .cloned()
            .collect();
        words.sort_unstable();
        let rows0 = words.iter().map(|w| s0.index_of(w).unwrap()).collect();
        let rows1 = words.iter().map(|w| s1.index_of(w).unwrap()).collect();
        SharedVocab { words, rows0, rows1 }
    }

    pub fn words(&self) -> &[String] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn word(&self, pos: usize) -> &str {
        &self.words[pos]
    }

    /// Position of `word` in the sorted list.
    pub fn position(&self, word: &str) -> Option<usize> {
        self.words
            .binary_search_by(|w| w.as_str().cmp(word))
            .ok()
    }

    /// Row indexes into space 0, aligned with `words`.
    pub fn rows0(&self) -> &[usize] {
        &self.rows0
    }

    /// Row indexes into space 1, aligned with `words`.
    pub fn rows1(&self) -> &[usize] {
        &self.rows1
    }

    pub fn row0(&self, word: &str) -> Option<usize> {
        self.position(word).map(|p| self.rows0[p])
    }

    pub fn row1(&self, word: &str) -> Option<usize> {
        self.position(word).map(|p| self.rows1[p])
    }

    /// Same vocabulary viewed from the other side.
    pub fn swapped(&self) -> Self {
        SharedVocab {
            words: self.words.clone(),
            rows0: self.rows1.clone(),
            rows1: self.rows0.clone(),
        }
    }

    /// Order-sensitive fingerprint of the word list, used to check that
    /// derived structures were built over the same vocabulary.
    pub fn fingerprint(&self) -> u64 {
        fingerprint(&self.words)
    }
}

pub(crate) fn fingerprint(words: &[String]) -> u64 {
    // FNV-1a; stable across runs and platforms.
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for w in words {
        for b in w.bytes().chain(std::iter::once(0xff)) {
            h ^= u64::from(b);
            h = h.wrapping_mul(0x0100_0000_01b3);
        }
    }
    h
}
