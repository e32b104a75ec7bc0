pub mod align;
pub mod classify;
pub mod laws;
pub mod neighbors;
pub mod rank;
pub mod stability;
pub mod summarize;
pub mod synth;

use std::path::Path;

use semshift::{EmbeddingSpace, NeighborIndex, SharedVocab, StabilityReport};

use crate::error::{CliError, CliResult, WithPath};
use crate::output::require_file;
use crate::SpaceArgs;

pub struct Loaded {
    pub s0: EmbeddingSpace,
    pub s1: EmbeddingSpace,
    pub shared: SharedVocab,
}

pub fn load_spaces(args: &SpaceArgs) -> CliResult<Loaded> {
    require_file(&args.emb0)?;
    require_file(&args.emb1)?;
    let s0 = EmbeddingSpace::load(&args.emb0, args.format).at(&args.emb0)?;
    let s1 = EmbeddingSpace::load(&args.emb1, args.format).at(&args.emb1)?;
    if s0.id() == s1.id() {
        log::warn!("both spaces are named `{}`; report headers will not tell them apart", s0.id());
    }
    let shared = SharedVocab::intersect(&s0, &s1);
    if shared.is_empty() {
        return Err(CliError::user("the two spaces share no words"));
    }
    log::info!("{} shared words ({} / {})", shared.len(), s0.len(), s1.len());
    Ok(Loaded { s0, s1, shared })
}

pub fn indexes(l: &Loaded, m: usize) -> CliResult<(NeighborIndex, NeighborIndex)> {
    Ok((NeighborIndex::build(&l.s0, &l.shared, m)?, NeighborIndex::build(&l.s1, &l.shared, m)?))
}

pub fn load_report(path: &Path) -> CliResult<StabilityReport> {
    require_file(path)?;
    StabilityReport::load(path).at(path)
}

/// A freshly computed report must cover exactly the shared vocabulary with
/// scores in [0, 1].
pub fn check_report(report: &StabilityReport, shared: &SharedVocab) -> CliResult<()> {
    if report.words() != shared.words() {
        return Err(CliError::internal("report vocabulary differs from the shared vocabulary"));
    }
    if let Some(s) = report.scores().iter().find(|s| !(0.0..=1.0).contains(*s)) {
        return Err(CliError::internal(format!("stability score {s} outside [0, 1]")));
    }
    Ok(())
}
