use std::path::PathBuf;

use clap::Args;
use semshift::analysis::{law_correlations, read_lexicon};
use semshift::corpus::{count_frequencies, read_corpus};

use crate::cmd::load_report;
use crate::error::{CliResult, WithPath};
use crate::output::{emit, file_name, require_file, Header};
use crate::Context;

#[derive(Args)]
pub struct LawsArgs {
    /// Stability report; repeat for several methods.
    #[arg(long = "report", required = true)]
    reports: Vec<PathBuf>,
    /// Corpus whose token counts give word frequencies.
    #[arg(long)]
    corpus: PathBuf,
    /// `word<TAB>sense count` lexicon.
    #[arg(long)]
    polysemy: PathBuf,
    /// `word<TAB>rating` lexicon.
    #[arg(long)]
    concreteness: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

pub fn run(_ctx: &Context, args: LawsArgs) -> CliResult<()> {
    for p in [&args.corpus, &args.polysemy, &args.concreteness] {
        require_file(p)?;
    }
    let freq = count_frequencies(&read_corpus(&args.corpus).at(&args.corpus)?);
    let poly = read_lexicon(&args.polysemy).at(&args.polysemy)?;
    let conc = read_lexicon(&args.concreteness).at(&args.concreteness)?;

    let mut h = Header::new();
    h.add("command", "laws")
        .add("corpus", file_name(&args.corpus))
        .add("corpus_tokens", freq.total)
        .add("polysemy", file_name(&args.polysemy))
        .add("concreteness", file_name(&args.concreteness))
        .add("frequency_transform", "ln(count)")
        .add("instability", "1 - stability");
    let mut rows = String::from("report\tmethod\tlaw\tr\tn\n");
    for path in &args.reports {
        let report = load_report(path)?;
        let laws = law_correlations(&report, &freq, &poly, &conc).at(path)?;
        for (law, c) in [("conformity", laws.conformity), ("innovation", laws.innovation), ("concreteness", laws.concreteness)] {
            rows.push_str(&format!("{}\t{}\t{law}\t{}\t{}\n", file_name(path), laws.method, c.r, c.n));
        }
    }
    let mut text = h.render();
    text.push_str(&rows);
    emit(args.out.as_deref(), &text)
}
