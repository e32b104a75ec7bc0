//! Corpus preprocessing: tokenization, bigram phrase merging, frequency
//! counts and TF-IDF vectors.

mod document;
mod phrases;
mod tfidf;

pub use document::{count_frequencies, read_corpus, tokenize, write_corpus, Document, FrequencyTable};
pub use phrases::{detect_phrases, PhraseConfig};
pub use tfidf::{tfidf_vectorize, DocumentFrequencies, SparseVector};
