use std::path::PathBuf;

use clap::Args;
use semshift::align::load_anchors;
use semshift::analysis::rank_delta;
use semshift::stability::rank_by_instability;
use semshift::StabilityReport;

use crate::cmd::load_report;
use crate::error::{CliError, CliResult, WithPath};
use crate::output::{emit, file_name, require_file, Header};
use crate::Context;

#[derive(Args)]
pub struct RankArgs {
    #[arg(long)]
    report: PathBuf,
    /// Words to locate in the ranking, one per line.
    #[arg(long)]
    probes: Option<PathBuf>,
    /// Second report; probe ranks are compared against it.
    #[arg(long, requires = "probes")]
    against: Option<PathBuf>,
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn describe(h: &mut Header, prefix: &str, path: &PathBuf, r: &StabilityReport) {
    h.add(&format!("{prefix}report"), file_name(path))
        .add(&format!("{prefix}method"), r.method)
        .add(&format!("{prefix}iterations"), r.iterations)
        .add(&format!("{prefix}m"), r.params.m)
        .add(&format!("{prefix}space0"), &r.spaces.0)
        .add(&format!("{prefix}space1"), &r.spaces.1);
}

pub fn run(_ctx: &Context, args: RankArgs) -> CliResult<()> {
    let report = load_report(&args.report)?;
    let ranking = rank_by_instability(&report);
    let mut h = Header::new();
    h.add("command", "rank");
    describe(&mut h, "", &args.report, &report);

    let Some(probe_path) = &args.probes else {
        let mut text = h.render();
        text.push_str("rank\tword\tscore\n");
        for (i, (w, s)) in report.sorted().into_iter().enumerate() {
            text.push_str(&format!("{i}\t{w}\t{s}\n"));
        }
        return emit(args.out.as_deref(), &text);
    };

    require_file(probe_path)?;
    let probes = load_anchors(probe_path).at(probe_path)?;
    if probes.is_empty() {
        return Err(CliError::user(format!("{}: no probe words", probe_path.display())));
    }
    let other = match &args.against {
        Some(p) => Some(load_report(p)?),
        None => None,
    };
    let other_ranking = other.as_ref().map(rank_by_instability);
    let delta = rank_delta(&ranking, other_ranking.as_deref().unwrap_or(&ranking), &probes).map_err(|e| match e {
        semshift::Error::UnknownWord(w) => CliError::user(format!("probe `{w}` is not in the report")),
        e => e.into(),
    })?;

    h.add("probes", file_name(probe_path)).add("probe_count", probes.len()).add("mean_rank", delta.mean_rank_a);
    if let (Some(p), Some(o)) = (&args.against, &other) {
        describe(&mut h, "against_", p, o);
        h.add("against_mean_rank", delta.mean_rank_b);
    }
    let mut text = h.render();
    if other.is_some() {
        text.push_str("probe\trank\tagainst_rank\tdelta\n");
    } else {
        text.push_str("probe\trank\n");
    }
    for (w, d) in &delta.deltas {
        let r = ranking.iter().position(|x| x == w).expect("probe located above");
        if other.is_some() {
            text.push_str(&format!("{w}\t{r}\t{}\t{d}\n", r as i64 - d));
        } else {
            text.push_str(&format!("{w}\t{r}\n"));
        }
    }
    emit(args.out.as_deref(), &text)
}
