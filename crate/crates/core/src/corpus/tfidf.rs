use std::collections::{BTreeMap, HashMap, HashSet};

use crate::corpus::Document;
use crate::scalar::Real;

/// Sparse word-weight vector; zero weights are never stored.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SparseVector<T> {
    pub entries: BTreeMap<String, T>,
}

impl<T: Real> SparseVector<T> {
    pub fn get(&self, word: &str) -> T {
        self.entries.get(word).copied().unwrap_or_else(T::zero)
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Document frequencies of a (training) corpus.
#[derive(Clone, Debug, Default)]
pub struct DocumentFrequencies {
    pub n_docs: usize,
    pub df: HashMap<String, usize>,
}

impl DocumentFrequencies {
    pub fn from_docs(docs: &[Document]) -> Self {
        let mut df: HashMap<String, usize> = HashMap::new();
        for d in docs {
            let unique: HashSet<&String> = d.tokens.iter().collect();
            for w in unique {
                *df.entry(w.clone()).or_default() += 1;
            }
        }
        DocumentFrequencies { n_docs: docs.len(), df }
    }

    /// Smoothed inverse document frequency `ln((1 + N) / (1 + df)) + 1`.
    pub fn idf<T: Real>(&self, word: &str) -> T {
        let df = self.df.get(word).copied().unwrap_or(0);
        (T::of_usize(1 + self.n_docs) / T::of_usize(1 + df)).ln() + T::one()
    }
}

/// `tf(w, d) * idf(w) / |d|` for every word of every document.
pub fn tfidf_vectorize<T: Real>(docs: &[Document], df: &DocumentFrequencies) -> Vec<SparseVector<T>> {
    docs.iter()
        .map(|d| {
            let mut tf: BTreeMap<&str, usize> = BTreeMap::new();
            for t in &d.tokens {
                *tf.entry(t).or_default() += 1;
            }
            let len = T::of_usize(d.tokens.len());
            let entries = tf
                .into_iter()
                .map(|(w, c)| (w.to_string(), T::of_usize(c) * df.idf::<T>(w) / len))
                .filter(|(_, v)| *v != T::zero())
                .collect();
            SparseVector { entries }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn doc(tokens: &[&str]) -> Document {
        Document::new("d", None, tokens.iter().map(|s| s.to_string()).collect())
    }

    #[test]
    fn single_document() {
        let docs = [doc(&["a", "a", "b"])];
        let df = DocumentFrequencies::from_docs(&docs);
        let v = tfidf_vectorize::<f64>(&docs, &df);
        // idf = ln(2/2) + 1 = 1
        assert_abs_diff_eq!(v[0].get("a"), 2.0 / 3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(v[0].get("b"), 1.0 / 3.0, epsilon = 1e-15);
    }

    #[test]
    fn idf_values() {
        let docs = [doc(&["x", "y"]), doc(&["x"])];
        let df = DocumentFrequencies::from_docs(&docs);
        assert_eq!(df.idf::<f64>("x"), 1.0);
        assert_abs_diff_eq!(df.idf::<f64>("y"), (3.0f64 / 2.0).ln() + 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(df.idf::<f64>("unseen"), 3.0f64.ln() + 1.0, epsilon = 1e-15);
    }

    #[test]
    fn empty_document() {
        let docs = [doc(&[])];
        let df = DocumentFrequencies::from_docs(&docs);
        assert!(tfidf_vectorize::<f64>(&docs, &df)[0].is_empty());
    }

    #[test]
    fn doubling_tokens_keeps_weights() {
        let train = [doc(&["a", "b", "c"]), doc(&["a", "d"])];
        let df = DocumentFrequencies::from_docs(&train);
        let once = doc(&["a", "b", "b", "z"]);
        let mut twice = once.clone();
        twice.tokens.extend(once.tokens.clone());
        let v = tfidf_vectorize::<f64>(&[once, twice], &df);
        for (w, x) in &v[0].entries {
            assert_abs_diff_eq!(*x, v[1].get(w), epsilon = 1e-15);
        }
    }
}
