//! Straight-line re-implementations of the two neighbor-graph algorithms,
//! keyed by word and written without any of the library's indexing helpers.

#![allow(dead_code)]

use std::collections::HashMap;

pub type Vectors = HashMap<String, Vec<f64>>;

pub fn cos(a: &[f64], b: &[f64]) -> f64 {
    let dot: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
    let na: f64 = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let nb: f64 = b.iter().map(|x| x * x).sum::<f64>().sqrt();
    if na == 0.0 || nb == 0.0 {
        0.0
    } else {
        (dot / (na * nb)).clamp(-1.0, 1.0)
    }
}

pub fn matvec(w: &[Vec<f64>], v: &[f64]) -> Vec<f64> {
    w.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

/// Top-`m` neighbors of every word among `words`, best first, ties by word.
pub fn knn(vecs: &Vectors, words: &[String], m: usize) -> HashMap<String, Vec<(String, f64)>> {
    let mut out = HashMap::new();
    for w in words {
        let mut cands: Vec<(String, f64)> = words
            .iter()
            .filter(|o| *o != w)
            .map(|o| (o.clone(), cos(&vecs[w], &vecs[o])))
            .collect();
        cands.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap().then(a.0.cmp(&b.0)));
        cands.truncate(m);
        out.insert(w.clone(), cands);
    }
    out
}

fn normalize(s: &mut HashMap<String, f64>) {
    let lo = s.values().cloned().fold(f64::INFINITY, f64::min);
    let hi = s.values().cloned().fold(f64::NEG_INFINITY, f64::max);
    for v in s.values_mut() {
        *v = if hi == lo { 1.0 } else { (*v - lo) / (hi - lo) };
    }
}

/// Scores after each round.
pub fn neighbor_oracle(v0: &Vectors, v1: &Vectors, words: &[String], m: usize, rounds: usize, floor: f64) -> Vec<HashMap<String, f64>> {
    let n0 = knn(v0, words, m);
    let n1 = knn(v1, words, m);
    let mut prev: HashMap<String, f64> = words.iter().map(|w| (w.clone(), 1.0)).collect();
    let mut history = Vec::new();
    for _ in 0..rounds {
        let mut next = HashMap::new();
        for w in words {
            // space-1 neighbors, cosines taken in space 0
            let mut sim01 = 0.0;
            let mut k01 = 0;
            for (o, s) in &n1[w] {
                if *s >= floor {
                    sim01 += cos(&v0[w], &v0[o]) * prev[o];
                    k01 += 1;
                }
            }
            let mut sim10 = 0.0;
            let mut k10 = 0;
            for (o, s) in &n0[w] {
                if *s >= floor {
                    sim10 += cos(&v1[w], &v1[o]) * prev[o];
                    k10 += 1;
                }
            }
            let a = if k01 > 0 { sim01 / k01 as f64 } else { 0.0 };
            let b = if k10 > 0 { sim10 / k10 as f64 } else { 0.0 };
            next.insert(w.clone(), (a + b) / 2.0);
        }
        normalize(&mut next);
        history.push(next.clone());
        prev = next;
    }
    history
}

#[allow(clippy::too_many_arguments)]
pub fn combination_oracle(
    v0: &Vectors,
    v1: &Vectors,
    w01: &[Vec<f64>],
    w10: &[Vec<f64>],
    words: &[String],
    m: usize,
    rounds: usize,
    eps: f64,
) -> Vec<HashMap<String, f64>> {
    let n0 = knn(v0, words, m);
    let n1 = knn(v1, words, m);
    let denom = 2.0 * (1..=m).sum::<usize>() as f64;
    let mut prev: HashMap<String, f64> = words.iter().map(|w| (w.clone(), 1.0)).collect();
    let mut history = Vec::new();
    for _ in 0..rounds {
        let mut next = HashMap::new();
        for w in words {
            let a: Vec<&String> = n0[w].iter().map(|(o, _)| o).collect();
            let b: Vec<&String> = n1[w].iter().map(|(o, _)| o).collect();

            let mut c01 = 0.0;
            let mut shared = 0;
            for o in &a {
                if let Some(r) = b.iter().position(|x| x == o) {
                    shared += 1;
                    c01 -= r as f64 / prev[*o].max(eps);
                }
            }
            c01 += (a.len() * shared) as f64;
            let mut c10 = 0.0;
            shared = 0;
            for o in &b {
                if let Some(r) = a.iter().position(|x| x == o) {
                    shared += 1;
                    c10 -= r as f64 / prev[*o].max(eps);
                }
            }
            c10 += (b.len() * shared) as f64;
            let s_nei = (c01 + c10) / denom;

            let only0: Vec<&&String> = a.iter().filter(|o| !b.contains(o)).collect();
            let only1: Vec<&&String> = b.iter().filter(|o| !a.contains(o)).collect();
            let mut sim01 = 0.0;
            for o in &only0 {
                sim01 += cos(&matvec(w01, &v0[**o]), &v1[w]) * prev[**o];
            }
            if !only0.is_empty() {
                sim01 /= only0.len() as f64;
            }
            let mut sim10 = 0.0;
            for o in &only1 {
                sim10 += cos(&matvec(w10, &v1[**o]), &v0[w]) * prev[**o];
            }
            if !only1.is_empty() {
                sim10 /= only1.len() as f64;
            }
            let s_lin = (sim01 + sim10) / 2.0;

            let same = only0.is_empty() && only1.is_empty() && a.len() == b.len();
            let lambda = if same {
                1.0
            } else if c01 == 0.0 && c10 == 0.0 {
                0.0
            } else {
                0.5
            };
            next.insert(w.clone(), lambda * s_nei + (1.0 - lambda) * s_lin);
        }
        normalize(&mut next);
        history.push(next.clone());
        prev = next;
    }
    history
}
