use std::path::PathBuf;

use clap::Args;
use semshift::align::{default_anchors, load_anchors, one_way_similarity, round_trip_stability, train_map};

use crate::cmd::load_spaces;
use crate::error::{CliError, CliResult, WithPath};
use crate::output::{file_name, require_file, write_text, Header};
use crate::{Context, SpaceArgs};

#[derive(Args)]
pub struct AlignArgs {
    #[command(flatten)]
    spaces: SpaceArgs,
    /// One anchor word per line; the built-in stopword list when omitted.
    #[arg(long)]
    anchors: Option<PathBuf>,
    /// Receives map01.txt, map10.txt and align.tsv.
    #[arg(long)]
    out_dir: PathBuf,
    #[arg(long)]
    learning_rate: Option<f64>,
    #[arg(long)]
    max_iterations: Option<usize>,
    #[arg(long)]
    convergence_tol: Option<f64>,
}

pub fn run(ctx: &Context, args: AlignArgs) -> CliResult<()> {
    let mut cfg = ctx.file.align.clone();
    cfg.seed = ctx.seed;
    if let Some(v) = args.learning_rate {
        cfg.learning_rate = v;
    }
    if let Some(v) = args.max_iterations {
        cfg.max_iterations = v;
    }
    if let Some(v) = args.convergence_tol {
        cfg.convergence_tol = v;
    }
    cfg.validate()?;

    let anchors = match &args.anchors {
        Some(p) => {
            require_file(p)?;
            load_anchors(p).at(p)?
        }
        None => default_anchors(),
    };
    let l = load_spaces(&args.spaces)?;
    let m01 = train_map(&l.s0, &l.s1, &anchors, &cfg)?;
    let m10 = train_map(&l.s1, &l.s0, &anchors, &cfg)?;

    let n = l.shared.len() as f64;
    let mut one01 = 0.0;
    let mut one10 = 0.0;
    let mut round = 0.0;
    for w in l.shared.words() {
        one01 += one_way_similarity(&m01, &l.s0, &l.s1, w)?;
        one10 += one_way_similarity(&m10, &l.s1, &l.s0, w)?;
        round += round_trip_stability(&m01, &m10, &l.s0, &l.s1, w)?;
    }
    let (one01, one10, round) = (one01 / n, one10 / n, round / n);

    std::fs::create_dir_all(&args.out_dir).map_err(|e| CliError::user(format!("{}: {e}", args.out_dir.display())))?;
    m01.save(args.out_dir.join("map01.txt")).at(&args.out_dir)?;
    m10.save(args.out_dir.join("map10.txt")).at(&args.out_dir)?;

    let mut h = Header::new();
    h.add("command", "align")
        .add("space0", l.s0.id())
        .add("space1", l.s1.id())
        .add("format", args.spaces.format)
        .add("anchors", args.anchors.as_deref().map_or("builtin-stopwords".to_string(), |p| file_name(p)))
        .add("anchors_used", m01.anchors_used)
        .add("learning_rate", cfg.learning_rate)
        .add("max_iterations", cfg.max_iterations)
        .add("convergence_tol", cfg.convergence_tol)
        .add("seed", cfg.seed)
        .add("shared_words", l.shared.len());
    let mut text = h.render();
    text.push_str("quantity\tvalue\n");
    for (k, v) in [
        ("iterations_01", m01.iterations_run as f64),
        ("iterations_10", m10.iterations_run as f64),
        ("final_loss_01", m01.final_loss),
        ("final_loss_10", m10.final_loss),
        ("mean_one_way_01", one01),
        ("mean_one_way_10", one10),
        ("mean_round_trip", round),
    ] {
        text.push_str(&format!("{k}\t{v}\n"));
    }
    write_text(&args.out_dir.join("align.tsv"), &text)?;
    println!("mean one-way similarity 0->1\t{one01:.6}");
    println!("mean one-way similarity 1->0\t{one10:.6}");
    println!("mean round-trip stability\t{round:.6}");
    Ok(())
}
