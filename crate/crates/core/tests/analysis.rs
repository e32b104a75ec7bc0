use std::collections::HashMap;

use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use semshift::align::{train_map, AlignConfig};
use semshift::analysis::{
    classify, evaluate_prf, law_correlations, pearson, rank_delta, run_expansion_experiment, summarize_viewpoints, train_classifier,
    ClassifierConfig, ExperimentConfig,
};
use semshift::corpus::{count_frequencies, Document};
use semshift::fixtures::{class_corpus, viewpoint_pair, ClassCorpusConfig, ViewpointPairConfig};
use semshift::stability::{combination_stability, rank_by_instability, Method, StabilityParams};
use semshift::{NeighborIndex, SharedVocab, StabilityReport};

fn monotone_fixture() -> (StabilityReport, Vec<Document>) {
    // word i occurs 2 + i^2 times; stability rises with log count, so
    // instability falls with it
    let counts: Vec<u64> = (0..60u64).map(|i| 2 + i * i).collect();
    let max_ln = (*counts.last().unwrap() as f64).ln();
    let pairs = counts
        .iter()
        .enumerate()
        .map(|(i, &c)| (format!("w{i:02}"), ((c as f64).ln() / max_ln).sqrt()))
        .collect();
    let report = StabilityReport::from_pairs(Method::Neighbor, 5, StabilityParams::default(), ("a".into(), "b".into()), pairs).unwrap();
    let docs = counts
        .iter()
        .enumerate()
        .map(|(i, &c)| Document::new(format!("d{i}"), None, vec![format!("w{i:02}"); c as usize]))
        .collect();
    (report, docs)
}

#[test]
fn conformity_detects_monotone_decline() {
    let (report, docs) = monotone_fixture();
    let freq = count_frequencies(&docs);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let lex = |rng: &mut ChaCha8Rng| -> HashMap<String, f64> {
        report.words().iter().take(40).map(|w| (w.clone(), rng.random_range(1..6) as f64)).collect()
    };
    let (poly, conc) = (lex(&mut rng), lex(&mut rng));
    let laws = law_correlations(&report, &freq, &poly, &conc).unwrap();
    assert!(laws.conformity.r < -0.9, "{}", laws.conformity.r);
    assert_eq!(laws.conformity.n, 60);
    assert_eq!((laws.innovation.n, laws.concreteness.n), (40, 40));
    for c in [laws.conformity, laws.innovation, laws.concreteness] {
        assert!((-1.0..=1.0).contains(&c.r));
    }
}

#[test]
fn disjoint_lexicon_is_rejected() {
    let (report, docs) = monotone_fixture();
    let freq = count_frequencies(&docs);
    let none: HashMap<String, f64> = [("zzz".to_string(), 1.0)].into();
    let some: HashMap<String, f64> = report.words().iter().map(|w| (w.clone(), 1.0 + w.len() as f64)).collect();
    assert!(law_correlations(&report, &freq, &none, &some).is_err());
}

#[test]
fn pearson_hand_example() {
    let r: f64 = pearson(&[1.0, 2.0, 3.0, 4.0], &[2.0, 1.0, 4.0, 3.0]).unwrap();
    assert!((r - 0.6).abs() < 1e-12);
}

#[test]
fn rank_delta_extremes() {
    let a = ["x", "y", "z"];
    let b = ["z", "y", "x"];
    let d = rank_delta(&a, &b, &["x"]).unwrap();
    assert_eq!(d.deltas, [("x".to_string(), -2)]);
    assert!(rank_delta(&a, &a, &a).unwrap().deltas.iter().all(|(_, v)| *v == 0));
}

struct Pair {
    i0: NeighborIndex,
    i1: NeighborIndex,
    report: StabilityReport,
}

fn summary_pair() -> Pair {
    let cfg = ViewpointPairConfig { n_words: 600, clusters: 30, anchors: 150, perturbed: 10, ..Default::default() };
    let p = viewpoint_pair::<f64>(&cfg);
    let shared = SharedVocab::intersect(&p.space0, &p.space1);
    let ac = AlignConfig { max_iterations: 5000, ..Default::default() };
    let m01 = train_map(&p.space0, &p.space1, &p.anchors, &ac).unwrap();
    let m10 = train_map(&p.space1, &p.space0, &p.anchors, &ac).unwrap();
    let params = StabilityParams { iterations: 1, ..Default::default() };
    let i0 = NeighborIndex::build(&p.space0, &shared, params.m).unwrap();
    let i1 = NeighborIndex::build(&p.space1, &shared, params.m).unwrap();
    let report = combination_stability(&p.space0, &p.space1, &i0, &i1, &m01, &m10, &params).unwrap();
    Pair { i0, i1, report }
}

#[test]
fn summaries_pass_both_filters() {
    let p = summary_pair();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let threshold = p.report.percentile(50.0);
    for concept in p.report.words().choose_multiple(&mut rng, 50) {
        let s = summarize_viewpoints(concept, &p.i0, &p.i1, &p.report, threshold, 5).unwrap();
        for (side, idx) in [(&s.side0, &p.i0), (&s.side1, &p.i1)] {
            assert!(side.len() <= 5);
            let top: Vec<&str> = idx.neighbors_of(concept).unwrap().into_iter().map(|(w, _)| w).collect();
            let mut last = 0;
            for w in side {
                let at = top.iter().position(|t| t == w).expect("summary word outside top-m");
                assert!(at >= last);
                last = at;
                assert!(p.report.get(w).unwrap() <= threshold);
            }
        }
    }
}

#[test]
fn classifier_separates_synthetic_classes() {
    let c = class_corpus::<f64>(&ClassCorpusConfig { docs_per_class: 100, topics_per_class: 4, words_per_topic: 10, seed: 3, ..Default::default() });
    let mut docs = c.docs.clone();
    docs.shuffle(&mut ChaCha8Rng::seed_from_u64(4));
    let (train, test) = docs.split_at(160);
    let model = train_classifier::<f64>(train, &ClassifierConfig::default()).unwrap();
    let pairs: Vec<(&str, &str)> = test.iter().map(|d| (d.label.as_deref().unwrap(), classify(&model, d))).collect();
    let prf = evaluate_prf(&pairs, &"lab").unwrap();
    assert!(prf.f1 > 0.9, "{prf:?}");
}

#[test]
fn expansion_leaves_test_documents_alone_and_is_reproducible() {
    let c = class_corpus::<f64>(&ClassCorpusConfig { docs_per_class: 60, seed: 5, ..Default::default() });
    let shared = SharedVocab::intersect(&c.space0, &c.space1);
    let ac = AlignConfig { max_iterations: 3000, ..Default::default() };
    let m01 = train_map(&c.space0, &c.space1, &c.anchors, &ac).unwrap();
    let m10 = train_map(&c.space1, &c.space0, &c.anchors, &ac).unwrap();
    let params = StabilityParams { m: 20, iterations: 2, ..Default::default() };
    let i0 = NeighborIndex::build(&c.space0, &shared, 20).unwrap();
    let i1 = NeighborIndex::build(&c.space1, &shared, 20).unwrap();
    let report = combination_stability(&c.space0, &c.space1, &i0, &i1, &m01, &m10, &params).unwrap();
    let before = c.docs.clone();
    let cfg = ExperimentConfig { expansion_counts: vec![0, 3], ..Default::default() };
    let run = || run_expansion_experiment(&c.docs, &[("con".into(), &i0), ("lab".into(), &i1)], &[("combination".into(), &report)], &cfg).unwrap();
    let a = run();
    assert_eq!(a, run());
    assert_eq!(c.docs, before);
    assert_eq!(a.len(), 3);
    assert_eq!(a[0].method, "none");
    // n = 0 expands nothing, so it reproduces the baseline exactly
    assert_eq!(a[1].test, a[0].test);
    assert!(!rank_by_instability(&report).is_empty());
}
