#![allow(dead_code)]

pub mod oracle;

use ndarray::Array2;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use semshift::{EmbeddingSpace, LinearMap, SharedVocab};

use oracle::Vectors;

/// Two small spaces over overlapping random vocabularies (shared part at most
/// 30 words), related by noise, plus a pair of random near-identity maps.
pub struct SmallPair {
    pub s0: EmbeddingSpace,
    pub s1: EmbeddingSpace,
    pub shared: SharedVocab,
    pub map01: LinearMap,
    pub map10: LinearMap,
    pub m: usize,
}

pub fn small_pair(seed: u64) -> SmallPair {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dim = 4;
    let mut pool: Vec<String> = (0..40).map(|i| format!("v{i:02}")).collect();
    pool.shuffle(&mut rng);
    let n_shared = rng.random_range(12..=30);
    let shared_words = pool[..n_shared].to_vec();
    let only0 = pool[n_shared..n_shared + 3].to_vec();
    let only1 = pool[n_shared + 3..n_shared + 6].to_vec();
    let noise = rng.random_range(0.1..1.0);

    let g = |rng: &mut ChaCha8Rng| -> Vec<f64> { (0..dim).map(|_| StandardNormal.sample(rng)).collect() };
    let mut rows0 = Vec::new();
    let mut rows1 = Vec::new();
    for _ in &shared_words {
        let v = g(&mut rng);
        let e = g(&mut rng);
        rows1.push(v.iter().zip(&e).map(|(a, b)| a + noise * b).collect::<Vec<_>>());
        rows0.push(v);
    }
    let build = |words: Vec<String>, rows: Vec<Vec<f64>>| {
        let m = Array2::from_shape_fn((rows.len(), dim), |(i, j)| rows[i][j]);
        EmbeddingSpace::new("x", words, m).unwrap()
    };
    let mut w0 = shared_words.clone();
    let mut w1 = shared_words;
    for w in only0 {
        w0.push(w);
        rows0.push(g(&mut rng));
    }
    for w in only1 {
        w1.push(w);
        rows1.push(g(&mut rng));
    }
    let s0 = build(w0, rows0).with_id("left");
    let s1 = build(w1, rows1).with_id("right");
    let near_identity = |rng: &mut ChaCha8Rng| {
        Array2::from_shape_fn((dim, dim), |(i, j)| {
            let z: f64 = StandardNormal.sample(rng);
            f64::from(u8::from(i == j)) + 0.3 * z
        })
    };
    let map01 = LinearMap::from_matrix("left", "right", near_identity(&mut rng)).unwrap();
    let map10 = LinearMap::from_matrix("right", "left", near_identity(&mut rng)).unwrap();
    let shared = SharedVocab::intersect(&s0, &s1);
    let m = rng.random_range(3..=8);
    SmallPair { s0, s1, shared, map01, map10, m }
}

pub fn vectors(space: &EmbeddingSpace) -> Vectors {
    space.words().iter().map(|w| (w.clone(), space.vector(w).unwrap().to_vec())).collect()
}

pub fn matrix_rows(map: &LinearMap) -> Vec<Vec<f64>> {
    map.weights.rows().into_iter().map(|r| r.to_vec()).collect()
}
