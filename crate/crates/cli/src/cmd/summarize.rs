use std::path::PathBuf;

use clap::Args;
use semshift::analysis::summarize_viewpoints;

use crate::cmd::{indexes, load_report, load_spaces};
use crate::error::{CliError, CliResult};
use crate::output::{emit, file_name, is_json};
use crate::{Context, SpaceArgs};

#[derive(Args)]
pub struct SummarizeArgs {
    #[command(flatten)]
    spaces: SpaceArgs,
    /// Report computed from the same two spaces, normally with one iteration.
    #[arg(long)]
    report: PathBuf,
    /// Concept to summarize; repeat for several.
    #[arg(long = "concept", required = true)]
    concepts: Vec<String>,
    /// Stability threshold; the report's 25th percentile when omitted.
    #[arg(long)]
    threshold: Option<f64>,
    /// Words per side.
    #[arg(long)]
    length: Option<usize>,
    /// Accept a report computed with more than one iteration.
    #[arg(long)]
    any_iterations: bool,
    /// Output file; JSON when it ends in .json, aligned text otherwise.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(serde::Serialize)]
struct SummaryFile<'a> {
    report: String,
    m: usize,
    summaries: &'a [semshift::analysis::ViewpointSummary],
}

pub fn run(ctx: &Context, args: SummarizeArgs) -> CliResult<()> {
    let report = load_report(&args.report)?;
    if report.iterations != 1 && !args.any_iterations {
        return Err(CliError::user(format!(
            "{}: summaries use single-iteration reports, this one has {} (pass --any-iterations to override)",
            args.report.display(),
            report.iterations
        )));
    }
    let threshold = args.threshold.or(ctx.file.summary.threshold).unwrap_or_else(|| report.percentile(25.0));
    if !(0.0..=1.0).contains(&threshold) {
        return Err(CliError::user("--threshold must lie in [0, 1]"));
    }
    let length = args.length.unwrap_or(ctx.file.summary.length);
    let l = load_spaces(&args.spaces)?;
    let (i0, i1) = indexes(&l, report.params.m)?;

    let summaries = args
        .concepts
        .iter()
        .map(|c| summarize_viewpoints(c, &i0, &i1, &report, threshold, length).map_err(CliError::from))
        .collect::<CliResult<Vec<_>>>()?;

    let text = if is_json(args.out.as_deref()) {
        let file = SummaryFile { report: file_name(&args.report), m: report.params.m, summaries: &summaries };
        let mut s = serde_json::to_string_pretty(&file).map_err(|e| CliError::internal(e.to_string()))?;
        s.push('\n');
        s
    } else {
        let mut s = format!("# report\t{}\n# m\t{}\n# length\t{length}\n", file_name(&args.report), report.params.m);
        for summary in &summaries {
            s.push_str(&summary.to_columns());
            s.push('\n');
        }
        s
    };
    emit(args.out.as_deref(), &text)
}
