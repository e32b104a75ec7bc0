use ndarray::Array2;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::embed::EmbeddingSpace;
use crate::scalar::Real;

/// Deterministic random space of `n` unit vectors named `w0000`, `w0001`, ...
///
/// Entries are standard normal draws from a ChaCha8 stream, so the same seed
/// yields bit-identical output on every platform.
pub fn generate_synthetic_space<T: Real>(n: usize, dim: usize, seed: u64) -> EmbeddingSpace<T> {
    assert!(n >= 2 && dim >= 2, "synthetic space needs n >= 2 and dim >= 2");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut data = Vec::with_capacity(n * dim);
    for _ in 0..n {
        let start = data.len();
        loop {
            data.truncate(start);
            data.extend((0..dim).map(|_| {
                let x: f64 = StandardNormal.sample(&mut rng);
                x
            }));
            let norm = data[start..].iter().map(|x| x * x).sum::<f64>().sqrt();
            if norm > 1e-12 {
                data[start..].iter_mut().for_each(|x| *x /= norm);
                break;
            }
        }
    }
    let words = (0..n).map(synthetic_word).collect();
    let vectors = Array2::from_shape_vec((n, dim), data.into_iter().map(T::of).collect())
        .expect("shape matches generated data");
    EmbeddingSpace::new(format!("synth-{seed}"), words, vectors).expect("synthetic rows are valid")
}

pub(crate) fn synthetic_word(i: usize) -> String {
    format!("w{i:04}")
}
