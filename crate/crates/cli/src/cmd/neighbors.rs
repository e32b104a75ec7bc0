use clap::Args;
use semshift::NeighborIndex;

use crate::cmd::load_spaces;
use crate::error::CliResult;
use crate::output::emit;
use crate::{Context, SpaceArgs};

#[derive(Args)]
pub struct NeighborsArgs {
    #[command(flatten)]
    spaces: SpaceArgs,
    #[arg(long)]
    word: String,
    #[arg(long, default_value_t = 10)]
    m: usize,
}

pub fn run(_ctx: &Context, args: NeighborsArgs) -> CliResult<()> {
    let l = load_spaces(&args.spaces)?;
    let mut text = format!("# word\t{}\n# m\t{}\nspace\trank\tneighbor\tsimilarity\n", args.word, args.m);
    for space in [&l.s0, &l.s1] {
        let idx = NeighborIndex::build(space, &l.shared, args.m)?;
        for (i, (w, s)) in idx.neighbors_of(&args.word)?.into_iter().enumerate() {
            text.push_str(&format!("{}\t{i}\t{w}\t{s}\n", space.id()));
        }
    }
    emit(None, &text)
}
