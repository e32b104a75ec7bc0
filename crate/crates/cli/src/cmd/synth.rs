use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use semshift::corpus::{write_corpus, Document};
use semshift::embed::generate_synthetic_space;
use semshift::fixtures::{class_corpus, random_lexicon, random_orthogonal, rotate_space, viewpoint_pair, weighted_corpus};
use semshift::EmbeddingSpace;
use serde::Serialize;

use crate::error::{CliError, CliResult, WithPath};
use crate::output::write_text;
use crate::Context;

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    /// Clustered pair with drifting words and a set of replaced vectors.
    Pair,
    /// Two-class corpus with class-specific embedding spaces.
    Classes,
    /// Random space and an exact rotation of it.
    Rotation,
}

#[derive(Args)]
pub struct SynthArgs {
    #[arg(long, value_enum)]
    kind: Kind,
    #[arg(long)]
    out_dir: PathBuf,
    #[arg(long)]
    n_words: Option<usize>,
    #[arg(long)]
    dim: Option<usize>,
    #[arg(long)]
    anchors: Option<usize>,
    /// Words whose second-space vectors are replaced (pair only).
    #[arg(long)]
    perturbed: Option<usize>,
    /// Seed for the noise realization only (pair); `--seed + 1` by default.
    #[arg(long)]
    noise_seed: Option<u64>,
    #[arg(long)]
    docs_per_class: Option<usize>,
}

fn save_space(space: &EmbeddingSpace, path: &Path) -> CliResult<()> {
    space.save(path).at(path)
}

fn save_words(words: &[String], path: &Path) -> CliResult<()> {
    let mut text: String = words.iter().map(|w| format!("{w}\n")).collect();
    if text.is_empty() {
        text.push('\n');
    }
    write_text(path, &text)
}

fn save_corpus(docs: &[Document], path: &Path) -> CliResult<()> {
    let io = |e: std::io::Error| CliError::user(format!("{}: {e}", path.display()));
    let mut out = BufWriter::new(File::create(path).map_err(io)?);
    write_corpus(docs, &mut out).and_then(|_| out.flush()).map_err(io)
}

fn save_lexicon(entries: &[(String, f64)], what: &str, path: &Path) -> CliResult<()> {
    let mut text = format!("# {what}\n");
    for (w, v) in entries {
        text.push_str(&format!("{w}\t{v}\n"));
    }
    write_text(path, &text)
}

#[derive(Serialize)]
struct Record<T: Serialize> {
    kind: Kind,
    seed: u64,
    config: T,
}

fn save_record<T: Serialize>(kind: Kind, seed: u64, config: T, dir: &Path) -> CliResult<()> {
    let text = toml::to_string(&Record { kind, seed, config }).map_err(|e| CliError::internal(e.to_string()))?;
    write_text(&dir.join("synth.toml"), &text)
}

pub fn run(ctx: &Context, args: SynthArgs) -> CliResult<()> {
    let dir = &args.out_dir;
    std::fs::create_dir_all(dir).map_err(|e| CliError::user(format!("{}: {e}", dir.display())))?;
    match args.kind {
        Kind::Pair => {
            let mut cfg = ctx.file.pair.clone();
            cfg.seed = ctx.seed;
            cfg.noise_seed = args.noise_seed.unwrap_or(ctx.seed.wrapping_add(1));
            cfg.n_words = args.n_words.unwrap_or(cfg.n_words);
            cfg.dim = args.dim.unwrap_or(cfg.dim);
            cfg.anchors = args.anchors.unwrap_or(cfg.anchors);
            cfg.perturbed = args.perturbed.unwrap_or(cfg.perturbed);
            if cfg.signal_dim > cfg.dim || cfg.anchors + cfg.perturbed > cfg.n_words || cfg.n_words == 0 || cfg.clusters == 0 {
                return Err(CliError::user("inconsistent pair settings: need signal_dim <= dim, anchors + perturbed <= n_words"));
            }
            let p = viewpoint_pair::<f64>(&cfg);
            save_space(&p.space0, &dir.join("emb0.txt"))?;
            save_space(&p.space1, &dir.join("emb1.txt"))?;
            save_words(&p.anchors, &dir.join("anchors.txt"))?;
            save_words(&p.perturbed, &dir.join("perturbed.txt"))?;
            let words = p.space0.words();
            let mut drift = String::from("word\tdrift\n");
            for (w, d) in words.iter().zip(&p.drift) {
                drift.push_str(&format!("{w}\t{d}\n"));
            }
            write_text(&dir.join("drift.tsv"), &drift)?;
            // low-drift words are the frequent ones
            let span = (cfg.drift.1 - cfg.drift.0).max(f64::MIN_POSITIVE);
            let weights: Vec<f64> = p.drift.iter().map(|d| (-4.0 * (d - cfg.drift.0) / span).exp()).collect();
            save_corpus(&weighted_corpus(words, &weights, 200, 100, ctx.seed), &dir.join("corpus.tsv"))?;
            save_lexicon(&random_lexicon(words, 0.5, 1, 8, ctx.seed.wrapping_add(2)), "sense counts", &dir.join("polysemy.tsv"))?;
            save_lexicon(&random_lexicon(words, 0.5, 1, 5, ctx.seed.wrapping_add(3)), "concreteness ratings", &dir.join("concreteness.tsv"))?;
            save_record(args.kind, ctx.seed, cfg, dir)
        }
        Kind::Classes => {
            let mut cfg = ctx.file.classes.clone();
            cfg.seed = ctx.seed;
            cfg.dim = args.dim.unwrap_or(cfg.dim);
            cfg.docs_per_class = args.docs_per_class.unwrap_or(cfg.docs_per_class);
            if cfg.topics_per_class == 0 || cfg.words_per_topic == 0 || cfg.neutral_topics == 0 || cfg.neutral_per_topic == 0 {
                return Err(CliError::user("class corpus needs at least one topic and one neutral word"));
            }
            let c = class_corpus::<f64>(&cfg);
            save_space(&c.space0, &dir.join("emb0.txt"))?;
            save_space(&c.space1, &dir.join("emb1.txt"))?;
            save_words(&c.anchors, &dir.join("anchors.txt"))?;
            save_corpus(&c.docs, &dir.join("corpus.tsv"))?;
            save_record(args.kind, ctx.seed, cfg, dir)
        }
        Kind::Rotation => {
            let n = args.n_words.unwrap_or(1000);
            let dim = args.dim.unwrap_or(50);
            let k = args.anchors.unwrap_or(200).min(n);
            let src = generate_synthetic_space::<f64>(n, dim, ctx.seed);
            let dst = rotate_space(&src, &random_orthogonal(dim, ctx.seed.wrapping_add(1)), "emb1");
            save_space(&src, &dir.join("emb0.txt"))?;
            save_space(&dst, &dir.join("emb1.txt"))?;
            save_words(&src.words()[..k], &dir.join("anchors.txt"))?;
            #[derive(Serialize)]
            struct Rotation {
                n_words: usize,
                dim: usize,
                anchors: usize,
            }
            save_record(args.kind, ctx.seed, Rotation { n_words: n, dim, anchors: k }, dir)
        }
    }
}
