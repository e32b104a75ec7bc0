use std::collections::BTreeSet;
use std::path::PathBuf;

use clap::Args;
use semshift::analysis::{run_expansion_experiment, MethodResult};
use semshift::corpus::read_corpus;
use semshift::StabilityReport;
use serde::Serialize;

use crate::cmd::{indexes, load_report, load_spaces};
use crate::error::{CliError, CliResult, WithPath};
use crate::output::{emit, file_name, is_json, require_file, Header};
use crate::{Context, SpaceArgs, StabilityFlags};

#[derive(Args)]
pub struct ClassifyArgs {
    /// emb0 belongs to the first label, emb1 to the second.
    #[command(flatten)]
    spaces: SpaceArgs,
    /// `id<TAB>label<TAB>text` per line.
    #[arg(long)]
    corpus: PathBuf,
    /// Stability report used to pick words to expand; repeat to compare.
    #[arg(long = "report", required = true)]
    reports: Vec<PathBuf>,
    /// Expansion words per unstable token; repeat for a sweep.
    #[arg(long = "n")]
    counts: Vec<usize>,
    /// Fixed stability threshold instead of a dev-set sweep.
    #[arg(long)]
    theta: Option<f64>,
    #[arg(long)]
    min_doc_len: Option<usize>,
    /// Labels in viewpoint order; default is the corpus labels sorted.
    #[arg(long, num_args = 2, value_names = ["LABEL0", "LABEL1"])]
    labels: Option<Vec<String>>,
    /// Class scored by precision/recall/F1; default is the second label.
    #[arg(long)]
    positive: Option<String>,
    #[command(flatten)]
    params: StabilityFlags,
    /// Output file; JSON (with per-bin accuracies) when it ends in .json.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Serialize)]
struct ClassifyFile<'a> {
    corpus: String,
    labels: &'a [String],
    positive: &'a str,
    reports: Vec<String>,
    m: usize,
    experiment: &'a semshift::analysis::ExperimentConfig,
    results: &'a [MethodResult],
}

fn opt(v: Option<f64>) -> String {
    v.map_or_else(|| "-".to_string(), |x| x.to_string())
}

pub fn run(ctx: &Context, args: ClassifyArgs) -> CliResult<()> {
    let mut exp = ctx.file.experiment.clone();
    exp.seed = ctx.seed;
    exp.classifier.seed = ctx.seed;
    if !args.counts.is_empty() {
        exp.expansion_counts = args.counts.clone();
    }
    if args.theta.is_some() {
        exp.theta = args.theta;
    }
    if let Some(v) = args.min_doc_len {
        exp.min_doc_len = v;
    }
    if let Some(t) = exp.theta.filter(|t| !(0.0..=1.0).contains(t)) {
        return Err(CliError::user(format!("theta {t} outside [0, 1]")));
    }
    if exp.expansion_counts.iter().any(|&n| n > 20) {
        return Err(CliError::user("expansion counts are limited to 0..=20"));
    }
    let params = ctx.stability(&args.params);
    params.validate()?;

    require_file(&args.corpus)?;
    let docs = read_corpus(&args.corpus).at(&args.corpus)?;
    let labels: Vec<String> = match &args.labels {
        Some(l) => l.clone(),
        None => docs.iter().filter_map(|d| d.label.clone()).collect::<BTreeSet<_>>().into_iter().collect(),
    };
    if labels.len() != 2 || labels[0] == labels[1] {
        return Err(CliError::user(format!("need exactly two distinct labels, found {labels:?}")));
    }
    let positive = args.positive.clone().or(exp.positive.clone()).unwrap_or_else(|| labels[1].clone());
    if !labels.contains(&positive) {
        return Err(CliError::user(format!("positive label `{positive}` is not one of {labels:?}")));
    }
    exp.positive = Some(positive.clone());

    let reports: Vec<StabilityReport> = args.reports.iter().map(|p| load_report(p)).collect::<CliResult<_>>()?;
    let mut names: Vec<String> = reports.iter().map(|r| r.method.to_string()).collect();
    for i in 0..names.len() {
        if names.iter().filter(|n| **n == names[i]).count() > 1 {
            names[i] = format!("{}:{}", names[i], file_name(&args.reports[i]));
        }
    }

    let l = load_spaces(&args.spaces)?;
    let (i0, i1) = indexes(&l, params.m)?;
    let label_indexes = [(labels[0].clone(), &i0), (labels[1].clone(), &i1)];
    let named: Vec<(String, &StabilityReport)> = names.iter().cloned().zip(reports.iter()).collect();
    let results = run_expansion_experiment(&docs, &label_indexes, &named, &exp)?;

    let text = if is_json(args.out.as_deref()) {
        let file = ClassifyFile {
            corpus: file_name(&args.corpus),
            labels: &labels,
            positive: &positive,
            reports: args.reports.iter().map(|p| file_name(p)).collect(),
            m: params.m,
            experiment: &exp,
            results: &results,
        };
        let mut s = serde_json::to_string_pretty(&file).map_err(|e| CliError::internal(e.to_string()))?;
        s.push('\n');
        s
    } else {
        let mut h = Header::new();
        h.add("command", "expand-classify")
            .add("corpus", file_name(&args.corpus))
            .add("space0", l.s0.id())
            .add("space1", l.s1.id())
            .add("labels", labels.join(","))
            .add("positive", &positive)
            .add("m", params.m);
        for (name, path) in names.iter().zip(&args.reports) {
            h.add(&format!("report.{name}"), file_name(path));
        }
        h.add("seed", exp.seed)
            .add("train_frac", exp.train_frac)
            .add("dev_frac", exp.dev_frac)
            .add("min_doc_len", exp.min_doc_len)
            .add("theta", opt(exp.theta))
            .add("sweep_percentiles", exp.sweep_percentiles.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(","))
            .add("epochs", exp.classifier.epochs)
            .add("lambda", exp.classifier.lambda)
            .add("eta0", exp.classifier.eta0);
        let mut s = h.render();
        s.push_str("method\tn\ttheta\tdev_f1\tprecision\trecall\tf1\n");
        for r in &results {
            s.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
                r.method,
                r.n,
                opt(r.theta),
                opt(r.dev_f1),
                r.test.precision,
                r.test.recall,
                r.test.f1
            ));
        }
        s
    };
    emit(args.out.as_deref(), &text)
}
