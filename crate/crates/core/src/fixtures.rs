//! Seeded synthetic viewpoint pairs and corpora.
//!
//! These stand in for real corpora wherever the ground truth has to be known:
//! which words drifted, which space belongs to which class, how the spaces
//! are related.

use ndarray::{Array1, Array2};
use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::weighted::WeightedIndex;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::corpus::Document;
use crate::embed::EmbeddingSpace;
use crate::scalar::Real;

fn gaussian(rng: &mut ChaCha8Rng, n: usize) -> Array1<f64> {
    Array1::from_shape_fn(n, |_| StandardNormal.sample(rng))
}

fn unit(rng: &mut ChaCha8Rng, n: usize) -> Array1<f64> {
    loop {
        let g = gaussian(rng, n);
        let norm = g.dot(&g).sqrt();
        if norm > 1e-12 {
            return g / norm;
        }
    }
}

fn orthogonal_from(rng: &mut ChaCha8Rng, dim: usize) -> Array2<f64> {
    // Modified Gram-Schmidt on the columns of a Gaussian matrix.
    let mut q = Array2::from_shape_fn((dim, dim), |_| StandardNormal.sample(rng));
    for j in 0..dim {
        for k in 0..j {
            let proj: f64 = q.column(k).dot(&q.column(j));
            let qk = q.column(k).to_owned();
            q.column_mut(j).scaled_add(-proj, &qk);
        }
        let norm = q.column(j).dot(&q.column(j)).sqrt();
        q.column_mut(j).mapv_inplace(|v| v / norm);
    }
    q
}

/// Seeded random orthogonal matrix.
pub fn random_orthogonal<T: Real>(dim: usize, seed: u64) -> Array2<T> {
    orthogonal_from(&mut ChaCha8Rng::seed_from_u64(seed), dim).mapv(T::of)
}

/// Applies `r` to every vector of `space`.
pub fn rotate_space<T: Real>(space: &EmbeddingSpace<T>, r: &Array2<T>, id: &str) -> EmbeddingSpace<T> {
    let rotated = space.vectors().dot(&r.t());
    EmbeddingSpace::new(id, space.words().to_vec(), rotated).expect("rotation preserves validity")
}

fn to_space<T: Real>(id: &str, words: &[String], rows: &[Array1<f64>]) -> EmbeddingSpace<T> {
    let dim = rows[0].len();
    let m = Array2::from_shape_fn((rows.len(), dim), |(i, j)| T::of(rows[i][j]));
    EmbeddingSpace::new(id, words.to_vec(), m).expect("generated rows are finite and nonzero")
}

/// Clustered pair of spaces related by a rotation, with per-word drift and a
/// set of words whose second-space vectors are replaced outright.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ViewpointPairConfig {
    pub n_words: usize,
    pub dim: usize,
    /// Rank of the subspace holding the cluster structure.
    pub signal_dim: usize,
    pub clusters: usize,
    pub cluster_spread: f64,
    /// Per-word drift magnitude is uniform in this range (relative to the
    /// signal norm).
    pub drift: (f64, f64),
    pub perturbed: usize,
    pub anchors: usize,
    /// Overall vector norm.
    pub scale: f64,
    /// Fixes clusters, drift levels, anchors and perturbed words.
    pub seed: u64,
    /// Fixes the noise realization only.
    pub noise_seed: u64,
}

impl Default for ViewpointPairConfig {
    fn default() -> Self {
        ViewpointPairConfig {
            n_words: 2000,
            dim: 50,
            signal_dim: 10,
            clusters: 100,
            cluster_spread: 0.5,
            drift: (0.05, 0.6),
            perturbed: 20,
            anchors: 200,
            scale: 4.0,
            seed: 1,
            noise_seed: 2,
        }
    }
}

pub struct ViewpointPair<T> {
    pub space0: EmbeddingSpace<T>,
    pub space1: EmbeddingSpace<T>,
    pub anchors: Vec<String>,
    pub perturbed: Vec<String>,
    /// Drift level per word, aligned with `space0.words()`.
    pub drift: Vec<f64>,
}

pub fn viewpoint_pair<T: Real>(cfg: &ViewpointPairConfig) -> ViewpointPair<T> {
    assert!(cfg.signal_dim <= cfg.dim && cfg.anchors + cfg.perturbed <= cfg.n_words);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let basis = orthogonal_from(&mut rng, cfg.dim);
    let rotation = orthogonal_from(&mut rng, cfg.dim);
    let centers: Vec<Array1<f64>> = (0..cfg.clusters.max(1)).map(|_| unit(&mut rng, cfg.signal_dim)).collect();

    let signal: Vec<Array1<f64>> = (0..cfg.n_words)
        .map(|i| {
            let jitter = gaussian(&mut rng, cfg.signal_dim) * (cfg.cluster_spread / (cfg.signal_dim as f64).sqrt());
            let local = &centers[i % centers.len()] + &jitter;
            let local = &local / local.dot(&local).sqrt();
            // embed into the full space through the first signal_dim basis columns
            basis.slice(ndarray::s![.., ..cfg.signal_dim]).dot(&local)
        })
        .collect();
    let drift: Vec<f64> = (0..cfg.n_words).map(|_| rng.random_range(cfg.drift.0..=cfg.drift.1)).collect();
    let mut order: Vec<usize> = (0..cfg.n_words).collect();
    order.shuffle(&mut rng);
    let anchor_ids = &order[..cfg.anchors];
    let perturbed_ids = &order[cfg.anchors..cfg.anchors + cfg.perturbed];

    let mut noise = ChaCha8Rng::seed_from_u64(cfg.noise_seed);
    let inv_sqrt_d = 1.0 / (cfg.dim as f64).sqrt();
    let mut rows0 = Vec::with_capacity(cfg.n_words);
    let mut rows1 = Vec::with_capacity(cfg.n_words);
    for (i, s) in signal.iter().enumerate() {
        let e0 = gaussian(&mut noise, cfg.dim) * (drift[i] * inv_sqrt_d);
        let e1 = gaussian(&mut noise, cfg.dim) * (drift[i] * inv_sqrt_d);
        rows0.push((s + &e0) * cfg.scale);
        rows1.push(rotation.dot(&(s + &e1)) * cfg.scale);
    }
    for &i in perturbed_ids {
        let norm = rows1[i].dot(&rows1[i]).sqrt();
        rows1[i] = unit(&mut noise, cfg.dim) * norm;
    }

    let words: Vec<String> = (0..cfg.n_words).map(|i| format!("w{i:04}")).collect();
    let mut anchors: Vec<String> = anchor_ids.iter().map(|&i| words[i].clone()).collect();
    anchors.sort();
    let mut perturbed: Vec<String> = perturbed_ids.iter().map(|&i| words[i].clone()).collect();
    perturbed.sort();
    ViewpointPair {
        space0: to_space("view0", &words, &rows0),
        space1: to_space("view1", &words, &rows1),
        anchors,
        perturbed,
        drift,
    }
}

/// Two-class corpus whose class vocabulary is organized differently in the
/// two classes' embedding spaces.
///
/// Neutral words sit in shared topic clusters and are the same (up to a
/// rotation) in both spaces. Each class has topic clusters of its own; they
/// are tight in that class's space and scattered in the other one. A
/// contested word per topic pair sits next to the class-0 topic in space 0
/// and next to the matching class-1 topic in space 1. Every document mixes
/// neutral words with a few words from one topic of its class and that
/// topic's contested word.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ClassCorpusConfig {
    pub labels: (String, String),
    pub docs_per_class: usize,
    pub dim: usize,
    pub neutral_topics: usize,
    pub neutral_per_topic: usize,
    pub topics_per_class: usize,
    pub words_per_topic: usize,
    pub doc_len: usize,
    /// Topic words per document.
    pub class_tokens: usize,
    /// Probability of one extra word from a random topic of the other class.
    pub cross_prob: f64,
    pub cluster_spread: f64,
    pub scale: f64,
    pub seed: u64,
}

impl Default for ClassCorpusConfig {
    fn default() -> Self {
        ClassCorpusConfig {
            labels: ("con".into(), "lab".into()),
            docs_per_class: 500,
            dim: 30,
            neutral_topics: 20,
            neutral_per_topic: 20,
            topics_per_class: 40,
            words_per_topic: 15,
            doc_len: 20,
            class_tokens: 4,
            cross_prob: 0.3,
            cluster_spread: 0.5,
            scale: 3.0,
            seed: 7,
        }
    }
}

pub struct ClassCorpus<T> {
    pub space0: EmbeddingSpace<T>,
    pub space1: EmbeddingSpace<T>,
    /// Neutral words: the stable part of the vocabulary.
    pub anchors: Vec<String>,
    pub docs: Vec<Document>,
}

pub fn class_corpus<T: Real>(cfg: &ClassCorpusConfig) -> ClassCorpus<T> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let d = cfg.dim;
    let rotation = orthogonal_from(&mut rng, d);
    let jitter = |rng: &mut ChaCha8Rng| gaussian(rng, d) * (cfg.cluster_spread / (d as f64).sqrt());
    let near = |center: &Array1<f64>, rng: &mut ChaCha8Rng| -> Array1<f64> {
        let v = center + &jitter(rng);
        &v / v.dot(&v).sqrt() * cfg.scale
    };

    let mut words = Vec::new();
    let mut rows0 = Vec::new();
    let mut rows1 = Vec::new();

    let mut neutral: Vec<String> = Vec::new();
    for t in 0..cfg.neutral_topics {
        let c = unit(&mut rng, d);
        for j in 0..cfg.neutral_per_topic {
            let w = format!("n{t:02}_{j:02}");
            let v = near(&c, &mut rng);
            let v1 = rotation.dot(&(&v + &(jitter(&mut rng) * 0.1)));
            words.push(w.clone());
            rows0.push(v);
            rows1.push(v1);
            neutral.push(w);
        }
    }

    // topics[class][topic] = word list
    let mut topics: [Vec<Vec<String>>; 2] = [Vec::new(), Vec::new()];
    let mut contested: Vec<String> = Vec::new();
    let centers: [Vec<Array1<f64>>; 2] = [
        (0..cfg.topics_per_class).map(|_| unit(&mut rng, d)).collect(),
        (0..cfg.topics_per_class).map(|_| unit(&mut rng, d)).collect(),
    ];
    for class in 0..2 {
        for (t, c) in centers[class].iter().enumerate() {
            let mut list = Vec::new();
            for j in 0..cfg.words_per_topic {
                let w = format!("c{class}t{t:02}_{j:02}");
                let own = near(c, &mut rng);
                let scattered = unit(&mut rng, d) * cfg.scale;
                let (v0, v1) = if class == 0 {
                    (own, scattered)
                } else {
                    (scattered, rotation.dot(&own))
                };
                words.push(w.clone());
                rows0.push(v0);
                rows1.push(v1);
                list.push(w);
            }
            topics[class].push(list);
        }
    }
    for t in 0..cfg.topics_per_class {
        let w = format!("k{t:02}");
        words.push(w.clone());
        rows0.push(near(&centers[0][t], &mut rng));
        rows1.push(rotation.dot(&near(&centers[1][t], &mut rng)));
        contested.push(w);
    }

    let mut docs = Vec::with_capacity(2 * cfg.docs_per_class);
    let labels = [&cfg.labels.0, &cfg.labels.1];
    let n_neutral = cfg.doc_len.saturating_sub(cfg.class_tokens + 1);
    for i in 0..cfg.docs_per_class {
        for class in 0..2 {
            let t = rng.random_range(0..cfg.topics_per_class);
            let mut tokens: Vec<String> = (0..n_neutral).map(|_| neutral.choose(&mut rng).unwrap().clone()).collect();
            for _ in 0..cfg.class_tokens {
                tokens.push(topics[class][t].choose(&mut rng).unwrap().clone());
            }
            tokens.push(contested[t].clone());
            if rng.random_bool(cfg.cross_prob) {
                let other = &topics[1 - class][rng.random_range(0..cfg.topics_per_class)];
                tokens.push(other.choose(&mut rng).unwrap().clone());
            }
            tokens.shuffle(&mut rng);
            docs.push(Document::new(format!("d{:05}", 2 * i + class), Some(labels[class]), tokens));
        }
    }

    ClassCorpus {
        space0: to_space(&cfg.labels.0, &words, &rows0),
        space1: to_space(&cfg.labels.1, &words, &rows1),
        anchors: neutral,
        docs,
    }
}

/// Unlabeled corpus in which each token is `words[i]` with probability
/// proportional to `weights[i]`.
pub fn weighted_corpus(words: &[String], weights: &[f64], docs: usize, doc_len: usize, seed: u64) -> Vec<Document> {
    assert_eq!(words.len(), weights.len());
    let dist = WeightedIndex::new(weights).expect("weights must be non-negative with a positive sum");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..docs)
        .map(|d| {
            let tokens = (0..doc_len).map(|_| words[dist.sample(&mut rng)].clone()).collect();
            Document::new(format!("d{d:05}"), None, tokens)
        })
        .collect()
}

/// Integer-valued lexicon in `lo..=hi` over a seeded random `fraction` of
/// `words`, sorted by word.
pub fn random_lexicon(words: &[String], fraction: f64, lo: u32, hi: u32, seed: u64) -> Vec<(String, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = ((words.len() as f64) * fraction.clamp(0.0, 1.0)).round() as usize;
    let mut picked: Vec<&String> = words.choose_multiple(&mut rng, k).collect();
    picked.sort();
    picked.into_iter().map(|w| (w.clone(), f64::from(rng.random_range(lo..=hi)))).collect()
}
