use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::corpus::Document;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PhraseConfig {
    /// Discount subtracted from the bigram count; suppresses rare pairs.
    pub delta: f64,
    pub threshold: f64,
}

impl Default for PhraseConfig {
    fn default() -> Self {
        PhraseConfig { delta: 5.0, threshold: 1e-3 }
    }
}

/// Single-pass bigram merging.
///
/// Adjacent pairs score `(count(ab) - delta) / (count(a) * count(b))` with
/// counts taken over the whole input. Scanning each document left to right,
/// a pair scoring above `threshold` is replaced by `a_b` and the scan resumes
/// after it, so merges never overlap.
pub fn detect_phrases(docs: &[Document], delta: f64, threshold: f64) -> Vec<Document> {
    let mut unigrams: HashMap<&str, u64> = HashMap::new();
    let mut bigrams: HashMap<(&str, &str), u64> = HashMap::new();
    for d in docs {
        for t in &d.tokens {
            *unigrams.entry(t).or_default() += 1;
        }
        for pair in d.tokens.windows(2) {
            *bigrams.entry((&pair[0], &pair[1])).or_default() += 1;
        }
    }
    let score = |a: &str, b: &str| -> f64 {
        let ab = bigrams.get(&(a, b)).copied().unwrap_or(0) as f64;
        (ab - delta) / (unigrams[a] as f64 * unigrams[b] as f64)
    };

    docs.iter()
        .map(|d| {
            let mut out = Vec::with_capacity(d.tokens.len());
            let mut i = 0;
            while i < d.tokens.len() {
                if i + 1 < d.tokens.len() && score(&d.tokens[i], &d.tokens[i + 1]) > threshold {
                    out.push(format!("{}_{}", d.tokens[i], d.tokens[i + 1]));
                    i += 2;
                } else {
                    out.push(d.tokens[i].clone());
                    i += 1;
                }
            }
            Document { id: d.id.clone(), label: d.label.clone(), tokens: out }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn doc(text: &str) -> Document {
        Document::from_text("d", None, text)
    }

    #[test]
    fn frequent_pair_merges() {
        // "new york" 50 times, each word 50 times: (50 - 5) / 2500 = 0.018
        let docs: Vec<Document> = (0..50).map(|i| doc(&format!("from{i} new york to{i}"))).collect();
        let merged = detect_phrases(&docs, 5.0, 0.001);
        assert_eq!(merged[7].tokens, ["from7", "new_york", "to7"]);
        assert!(merged.iter().all(|d| d.tokens.len() == 3));
    }

    #[test]
    fn rare_pair_never_merges() {
        // count(alpha beta) = 1, so the score is negative for delta = 5
        let docs = vec![doc("alpha beta"), doc("alpha gamma beta")];
        assert_eq!(detect_phrases(&docs, 5.0, 0.0), docs);
    }

    #[test]
    fn infinite_threshold_is_identity() {
        let docs: Vec<Document> = (0..10).map(|_| doc("new york new york")).collect();
        assert_eq!(detect_phrases(&docs, 0.0, f64::INFINITY), docs);
    }

    proptest! {
        #[test]
        fn merging_conserves_occurrences(
            docs in prop::collection::vec(prop::collection::vec(0u8..4, 0..12), 1..8),
            threshold in -0.5f64..0.5,
        ) {
            let docs: Vec<Document> = docs
                .iter()
                .map(|d| Document::new("d", None, d.iter().map(|t| format!("t{t}")).collect()))
                .collect();
            let merged = detect_phrases(&docs, 1.0, threshold);
            for (a, b) in docs.iter().zip(&merged) {
                let unmerged: Vec<String> = b.tokens.iter().flat_map(|t| t.split('_').map(str::to_string)).collect();
                prop_assert_eq!(&unmerged, &a.tokens);
            }
        }
    }
}
