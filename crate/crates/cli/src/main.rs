//! `semshift` command-line tool.

mod cmd;
mod config;
mod error;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use semshift::stability::StabilityParams;
use semshift::TextFormat;

use crate::config::FileConfig;
use crate::error::CliResult;

#[derive(Parser)]
#[command(name = "semshift", version, about = "Word stability across two viewpoint embedding spaces")]
struct Cli {
    /// TOML file with defaults for any of the settings below.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Seed for every random choice (splits, classifier, synthetic data).
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// More log output; repeat for more.
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
pub struct SpaceArgs {
    /// Embeddings of viewpoint 0.
    #[arg(long)]
    pub emb0: PathBuf,
    /// Embeddings of viewpoint 1.
    #[arg(long)]
    pub emb1: PathBuf,
    /// word2vec-text (with a count/dim header) or headerless-text.
    #[arg(long, default_value = "word2vec-text")]
    pub format: TextFormat,
}

#[derive(Args, Clone, Default)]
pub struct StabilityFlags {
    /// Neighbors per word.
    #[arg(long)]
    pub m: Option<usize>,
    /// Rounds of the iterative methods.
    #[arg(long)]
    pub iterations: Option<usize>,
    #[arg(long)]
    pub sim_floor: Option<f64>,
    #[arg(long)]
    pub prior_epsilon: Option<f64>,
}

impl StabilityFlags {
    pub fn apply(&self, mut p: StabilityParams) -> StabilityParams {
        if let Some(v) = self.m {
            p.m = v;
        }
        if let Some(v) = self.iterations {
            p.iterations = v;
        }
        if let Some(v) = self.sim_floor {
            p.sim_floor = v;
        }
        if let Some(v) = self.prior_epsilon {
            p.prior_epsilon = v;
        }
        p
    }
}

#[derive(Subcommand)]
enum Command {
    /// Train the two linear maps and report mean mapped similarities.
    Align(cmd::align::AlignArgs),
    /// Score every shared word with one stability method.
    Stability(cmd::stability::StabilityArgs),
    /// Rank words from most to least unstable, or locate probe words.
    Rank(cmd::rank::RankArgs),
    /// Contrast how the two viewpoints frame a concept.
    Summarize(cmd::summarize::SummarizeArgs),
    /// Classification with stability-driven expansion of training documents.
    ExpandClassify(cmd::classify::ClassifyArgs),
    /// Correlate instability with frequency, polysemy and concreteness.
    Laws(cmd::laws::LawsArgs),
    /// Nearest shared-vocabulary neighbors of a word in each space.
    Neighbors(cmd::neighbors::NeighborsArgs),
    /// Write a synthetic data set.
    Synth(cmd::synth::SynthArgs),
}

/// Settings resolved from defaults, the config file and global flags.
pub struct Context {
    pub file: FileConfig,
    pub seed: u64,
}

impl Context {
    pub fn stability(&self, flags: &StabilityFlags) -> StabilityParams {
        flags.apply(self.file.stability.clone())
    }
}

fn run(cli: Cli) -> CliResult<()> {
    let file = match &cli.config {
        Some(p) => FileConfig::load(p)?,
        None => FileConfig::default(),
    };
    let seed = cli.seed.or(file.seed).unwrap_or(0);
    let ctx = Context { file, seed };
    match cli.command {
        Command::Align(a) => cmd::align::run(&ctx, a),
        Command::Stability(a) => cmd::stability::run(&ctx, a),
        Command::Rank(a) => cmd::rank::run(&ctx, a),
        Command::Summarize(a) => cmd::summarize::run(&ctx, a),
        Command::ExpandClassify(a) => cmd::classify::run(&ctx, a),
        Command::Laws(a) => cmd::laws::run(&ctx, a),
        Command::Neighbors(a) => cmd::neighbors::run(&ctx, a),
        Command::Synth(a) => cmd::synth::run(&ctx, a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();

    match std::panic::catch_unwind(|| run(cli)) {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(e)) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code())
        }
        Err(_) => ExitCode::from(2),
    }
}

