use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::analysis::{classify, evaluate_prf, expand_document, train_classifier, ClassifierConfig, ExpandConfig, LinearTextModel, Prf};
use crate::corpus::Document;
use crate::embed::NeighborIndex;
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::stability::StabilityReport;

/// Train/dev/test protocol for stability-driven document expansion.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub seed: u64,
    pub train_frac: f64,
    pub dev_frac: f64,
    /// Expansion words per unstable token; one result row per value.
    pub expansion_counts: Vec<usize>,
    /// Fixed threshold; when absent it is chosen on the dev split from
    /// `sweep_percentiles` of each report's score distribution.
    pub theta: Option<f64>,
    pub sweep_percentiles: Vec<f64>,
    /// Documents shorter than this are dropped before splitting.
    pub min_doc_len: usize,
    /// Class scored by P/R/F1; defaults to the second label in sorted order.
    pub positive: Option<String>,
    pub classifier: ClassifierConfig,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            seed: 0,
            train_frac: 0.8,
            dev_frac: 0.1,
            expansion_counts: vec![5],
            theta: None,
            sweep_percentiles: (1..=9).map(|i| f64::from(i) * 10.0).collect(),
            min_doc_len: 0,
            positive: None,
            classifier: ClassifierConfig::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BinAccuracy {
    pub lo: f64,
    pub hi: f64,
    pub n: usize,
    pub accuracy: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MethodResult {
    pub method: String,
    pub n: usize,
    pub theta: Option<f64>,
    pub dev_f1: Option<f64>,
    pub test: Prf,
    pub bins: Vec<BinAccuracy>,
}

struct Split {
    train: Vec<Document>,
    dev: Vec<Document>,
    test: Vec<Document>,
}

fn split(docs: &[Document], cfg: &ExperimentConfig) -> Result<Split> {
    let mut docs: Vec<Document> = docs
        .iter()
        .filter(|d| d.label.is_some() && d.tokens.len() >= cfg.min_doc_len)
        .cloned()
        .collect();
    if docs.len() < 10 {
        return Err(Error::Insufficient(format!("only {} labeled documents after filtering", docs.len())));
    }
    docs.shuffle(&mut ChaCha8Rng::seed_from_u64(cfg.seed));
    let n_train = ((docs.len() as f64) * cfg.train_frac).round() as usize;
    let n_dev = ((docs.len() as f64) * cfg.dev_frac).round() as usize;
    if n_train == 0 || n_dev == 0 || n_train + n_dev >= docs.len() {
        return Err(Error::InvalidParam("split fractions leave an empty partition".into()));
    }
    let test = docs.split_off(n_train + n_dev);
    let dev = docs.split_off(n_train);
    Ok(Split { train: docs, dev, test })
}

fn f1_on<T: Real>(model: &LinearTextModel<T>, docs: &[Document], positive: &str) -> Result<Prf> {
    let pairs: Vec<(&str, &str)> = docs
        .iter()
        .map(|d| (d.label.as_deref().unwrap_or(""), classify(model, d)))
        .collect();
    evaluate_prf(&pairs, &positive)
}

fn expand_all<T: Real>(
    train: &[Document],
    label_indexes: &[(String, &NeighborIndex<T>)],
    report: &StabilityReport<T>,
    cfg: &ExpandConfig,
) -> Vec<Document> {
    train
        .iter()
        .map(|d| {
            let idx = label_indexes
                .iter()
                .find(|(l, _)| Some(l.as_str()) == d.label.as_deref())
                .map(|(_, i)| *i);
            match idx {
                Some(idx) => expand_document(d, idx, report, cfg),
                None => d.clone(),
            }
        })
        .collect()
}

/// Mean report score of the document's scored tokens, if any.
fn doc_stability<T: Real>(doc: &Document, report: &StabilityReport<T>) -> Option<f64> {
    let scores: Vec<f64> = doc.tokens.iter().filter_map(|t| report.get(t)).map(|s| s.as_f64()).collect();
    (!scores.is_empty()).then(|| scores.iter().sum::<f64>() / scores.len() as f64)
}

/// Classification accuracy of `model` on `docs` grouped into decile bins of
/// mean token stability. Empty bins are omitted.
pub fn accuracy_by_stability_bin<T: Real>(model: &LinearTextModel<T>, docs: &[Document], report: &StabilityReport<T>) -> Vec<BinAccuracy> {
    let mut hits = [(0usize, 0usize); 10];
    for d in docs {
        let Some(s) = doc_stability(d, report) else { continue };
        let bin = ((s * 10.0).floor() as usize).min(9);
        hits[bin].1 += 1;
        if Some(classify(model, d)) == d.label.as_deref() {
            hits[bin].0 += 1;
        }
    }
    hits.iter()
        .enumerate()
        .filter(|(_, (_, n))| *n > 0)
        .map(|(i, &(ok, n))| BinAccuracy {
            lo: i as f64 / 10.0,
            hi: (i + 1) as f64 / 10.0,
            n,
            accuracy: ok as f64 / n as f64,
        })
        .collect()
}

/// Splits the corpus with a seeded shuffle, trains a baseline without
/// expansion, and for every report and expansion count tunes θ on the dev
/// split (unless fixed) and reports P/R/F1 on the test split. Only training
/// documents are ever expanded; each is expanded in the space of its own
/// label.
pub fn run_expansion_experiment<T: Real>(
    docs: &[Document],
    label_indexes: &[(String, &NeighborIndex<T>)],
    reports: &[(String, &StabilityReport<T>)],
    cfg: &ExperimentConfig,
) -> Result<Vec<MethodResult>> {
    let Split { train, dev, test } = split(docs, cfg)?;
    let baseline: LinearTextModel<T> = train_classifier(&train, &cfg.classifier)?;
    let positive = cfg.positive.clone().unwrap_or_else(|| baseline.classes.1.clone());

    let mut results = vec![MethodResult {
        method: "none".into(),
        n: 0,
        theta: None,
        dev_f1: None,
        test: f1_on(&baseline, &test, &positive)?,
        bins: Vec::new(),
    }];

    for (name, report) in reports {
        for &n in &cfg.expansion_counts {
            let candidates: Vec<f64> = match cfg.theta {
                Some(t) => vec![t],
                None => cfg.sweep_percentiles.iter().map(|&p| report.percentile(p).as_f64()).collect(),
            };
            let mut best: Option<(f64, f64)> = None;
            if candidates.len() > 1 {
                for &theta in &candidates {
                    let expanded = expand_all(&train, label_indexes, report, &ExpandConfig { theta, n });
                    let model: LinearTextModel<T> = train_classifier(&expanded, &cfg.classifier)?;
                    let f1 = f1_on(&model, &dev, &positive)?.f1;
                    if best.is_none_or(|(_, b)| f1 > b) {
                        best = Some((theta, f1));
                    }
                }
            }
            let theta = best.map_or(candidates[0], |(t, _)| t);
            let expanded = expand_all(&train, label_indexes, report, &ExpandConfig { theta, n });
            let model: LinearTextModel<T> = train_classifier(&expanded, &cfg.classifier)?;
            results.push(MethodResult {
                method: name.clone(),
                n,
                theta: Some(theta),
                dev_f1: best.map(|(_, f)| f),
                test: f1_on(&model, &test, &positive)?,
                bins: accuracy_by_stability_bin(&model, &test, report),
            });
        }
    }
    Ok(results)
}
