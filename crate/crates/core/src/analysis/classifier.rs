use std::collections::{BTreeMap, BTreeSet, HashMap};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::corpus::{tfidf_vectorize, Document, DocumentFrequencies};
use crate::error::{Error, Result};
use crate::scalar::Real;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ClassifierConfig {
    pub epochs: usize,
    /// L2 regularization strength.
    pub lambda: f64,
    /// Initial step size; decays as `eta0 / (1 + eta0 * lambda * t)`.
    pub eta0: f64,
    pub seed: u64,
}

impl Default for ClassifierConfig {
    fn default() -> Self {
        ClassifierConfig { epochs: 30, lambda: 1e-4, eta0: 1.0, seed: 0 }
    }
}

/// Binary linear max-margin text classifier over length-normalized TF-IDF
/// features. A positive score predicts `classes.1`.
#[derive(Clone, Debug)]
pub struct LinearTextModel<T> {
    pub weights: HashMap<String, T>,
    pub bias: T,
    pub classes: (String, String),
    pub epochs: usize,
    pub final_hinge_loss: T,
    df: DocumentFrequencies,
}

impl<T: Real> LinearTextModel<T> {
    pub fn score(&self, doc: &Document) -> T {
        let x = &tfidf_vectorize::<T>(std::slice::from_ref(doc), &self.df)[0];
        x.entries
            .iter()
            .map(|(w, v)| self.weights.get(w).copied().unwrap_or_else(T::zero) * *v)
            .sum::<T>()
            + self.bias
    }

    /// Document frequencies of the training corpus the features use.
    pub fn document_frequencies(&self) -> &DocumentFrequencies {
        &self.df
    }
}

/// Trains with epoch-based stochastic subgradient descent on the
/// L2-regularized hinge loss. Visiting order is reshuffled each epoch from
/// `cfg.seed`, so identical inputs give identical weights.
pub fn train_classifier<T: Real>(train: &[Document], cfg: &ClassifierConfig) -> Result<LinearTextModel<T>> {
    let labels: BTreeSet<&str> = train.iter().filter_map(|d| d.label.as_deref()).collect();
    if labels.len() < 2 {
        return Err(Error::Insufficient(format!("need two classes, found {}", labels.len())));
    }
    if labels.len() > 2 {
        return Err(Error::InvalidParam(format!("binary classifier given {} classes", labels.len())));
    }
    let mut it = labels.into_iter();
    let classes = (it.next().unwrap().to_string(), it.next().unwrap().to_string());
    let labeled: Vec<&Document> = train.iter().filter(|d| d.label.is_some()).collect();
    let docs: Vec<Document> = labeled.iter().map(|d| (*d).clone()).collect();

    let df = DocumentFrequencies::from_docs(&docs);
    let vocab: BTreeMap<&str, usize> = {
        let words: BTreeSet<&str> = df.df.keys().map(String::as_str).collect();
        words.into_iter().enumerate().map(|(i, w)| (w, i)).collect()
    };
    let xs: Vec<Vec<(usize, T)>> = tfidf_vectorize::<T>(&docs, &df)
        .into_iter()
        .map(|v| v.entries.into_iter().map(|(w, x)| (vocab[w.as_str()], x)).collect())
        .collect();
    let ys: Vec<T> = docs
        .iter()
        .map(|d| if d.label.as_deref() == Some(classes.1.as_str()) { T::one() } else { -T::one() })
        .collect();

    let lambda = T::of(cfg.lambda);
    let eta0 = T::of(cfg.eta0);
    // w = scale * v keeps the per-step shrinkage O(1).
    let mut v = vec![T::zero(); vocab.len()];
    let mut scale = T::one();
    let mut bias = T::zero();
    let mut order: Vec<usize> = (0..xs.len()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut t = 0usize;

    for _ in 0..cfg.epochs {
        order.shuffle(&mut rng);
        for &i in &order {
            t += 1;
            let eta = eta0 / (T::one() + eta0 * lambda * T::of_usize(t));
            let margin = ys[i] * (xs[i].iter().map(|&(j, x)| v[j] * x).sum::<T>() * scale + bias);
            scale *= T::one() - eta * lambda;
            if margin < T::one() {
                for &(j, x) in &xs[i] {
                    v[j] += eta * ys[i] * x / scale;
                }
                bias += eta * ys[i];
            }
            if scale < T::of(1e-9) {
                v.iter_mut().for_each(|x| *x *= scale);
                scale = T::one();
            }
        }
    }

    let w: Vec<T> = v.iter().map(|x| *x * scale).collect();
    let hinge = xs
        .iter()
        .zip(&ys)
        .map(|(x, &y)| (T::one() - y * (x.iter().map(|&(j, xv)| w[j] * xv).sum::<T>() + bias)).max(T::zero()))
        .sum::<T>()
        / T::of_usize(xs.len().max(1));
    if w.iter().any(|x| !x.is_finite()) || !bias.is_finite() {
        return Err(Error::Diverged(t));
    }
    let weights = vocab
        .iter()
        .filter(|(_, &j)| w[j] != T::zero())
        .map(|(word, &j)| (word.to_string(), w[j]))
        .collect();
    Ok(LinearTextModel { weights, bias, classes, epochs: cfg.epochs, final_hinge_loss: hinge, df })
}

/// Predicted label; a score of exactly zero goes to the first class.
pub fn classify<'m, T: Real>(model: &'m LinearTextModel<T>, doc: &Document) -> &'m str {
    if model.score(doc) > T::zero() {
        &model.classes.1
    } else {
        &model.classes.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn doc(label: &str, text: &str) -> Document {
        Document::from_text("d", Some(label), text)
    }

    fn colors() -> Vec<Document> {
        (0..10)
            .flat_map(|_| [doc("a", "red red"), doc("b", "blue"), doc("a", "red"), doc("b", "blue blue")])
            .collect()
    }

    #[test]
    fn separable_toy() {
        let train = colors();
        let model: LinearTextModel<f64> = train_classifier(&train, &ClassifierConfig::default()).unwrap();
        assert!(train.iter().all(|d| classify(&model, d) == d.label.as_deref().unwrap()));
        assert_eq!(classify(&model, &doc("?", "red")), "a");
    }

    #[test]
    fn deterministic() {
        let cfg = ClassifierConfig { seed: 9, ..Default::default() };
        let a: LinearTextModel<f64> = train_classifier(&colors(), &cfg).unwrap();
        let b: LinearTextModel<f64> = train_classifier(&colors(), &cfg).unwrap();
        assert_eq!(a.weights, b.weights);
        assert_eq!(a.bias, b.bias);
    }

    #[test]
    fn single_class_rejected() {
        let train = vec![doc("a", "x"), doc("a", "y")];
        assert!(train_classifier::<f64>(&train, &ClassifierConfig::default()).is_err());
    }

    #[test]
    fn zero_model_predicts_first_class() {
        let train = colors();
        let mut model: LinearTextModel<f64> = train_classifier(&train, &ClassifierConfig::default()).unwrap();
        model.weights.clear();
        model.bias = 0.0;
        assert_eq!(classify(&model, &doc("?", "blue")), "a");
        model.bias = 0.5;
        assert_eq!(classify(&model, &Document::new("e", None, vec![])), "b");
    }
}
