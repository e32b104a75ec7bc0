use semshift::align::{train_map, AlignConfig};
use semshift::fixtures::{viewpoint_pair, ViewpointPairConfig};
use semshift::stability::{combination_stability, linear_stability, neighbor_stability, rank_by_instability, StabilityParams};
use semshift::{NeighborIndex, SharedVocab, StabilityReport};

fn mean_rank(report: &StabilityReport, probes: &[String]) -> f64 {
    let ranking = rank_by_instability(report);
    probes.iter().map(|p| ranking.iter().position(|w| w == p).unwrap() as f64).sum::<f64>() / probes.len() as f64
}

#[test]
fn replaced_vectors_rank_as_unstable() {
    let cfg = ViewpointPairConfig { n_words: 800, clusters: 40, anchors: 150, perturbed: 10, ..Default::default() };
    let p = viewpoint_pair::<f64>(&cfg);
    let shared = SharedVocab::intersect(&p.space0, &p.space1);
    let ac = AlignConfig::default();
    let m01 = train_map(&p.space0, &p.space1, &p.anchors, &ac).unwrap();
    let m10 = train_map(&p.space1, &p.space0, &p.anchors, &ac).unwrap();
    let params = StabilityParams { m: 50, ..Default::default() };
    let i0 = NeighborIndex::build(&p.space0, &shared, 50).unwrap();
    let i1 = NeighborIndex::build(&p.space1, &shared, 50).unwrap();
    let reports = [
        linear_stability(&p.space0, &p.space1, &shared, &m01, &m10, &params).unwrap(),
        neighbor_stability(&p.space0, &p.space1, &i0, &i1, &params).unwrap(),
        combination_stability(&p.space0, &p.space1, &i0, &i1, &m01, &m10, &params).unwrap(),
    ];
    for r in &reports {
        let mean = mean_rank(r, &p.perturbed);
        assert!(mean < 0.1 * shared.len() as f64, "{}: {mean}", r.method);
    }
    assert!(mean_rank(&reports[2], &p.perturbed) <= mean_rank(&reports[0], &p.perturbed));
}
