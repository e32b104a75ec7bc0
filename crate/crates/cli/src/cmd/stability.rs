use std::path::PathBuf;

use clap::Args;
use semshift::stability::{combination_stability, linear_stability, neighbor_stability, Method};
use semshift::LinearMap;

use crate::cmd::{check_report, indexes, load_spaces};
use crate::error::{CliError, CliResult, WithPath};
use crate::output::require_file;
use crate::{Context, SpaceArgs, StabilityFlags};

#[derive(Args)]
pub struct StabilityArgs {
    #[command(flatten)]
    spaces: SpaceArgs,
    /// linear, neighbor or combination.
    #[arg(long)]
    method: Method,
    /// Map from space 0 to space 1 (needed by linear and combination).
    #[arg(long)]
    map01: Option<PathBuf>,
    #[arg(long)]
    map10: Option<PathBuf>,
    #[command(flatten)]
    params: StabilityFlags,
    /// Report file; JSON when the name ends in .json, TSV otherwise.
    #[arg(long)]
    out: PathBuf,
}

fn load_map(path: Option<&PathBuf>, name: &str, method: Method) -> CliResult<LinearMap> {
    let path = path.ok_or_else(|| CliError::user(format!("--method {method} needs --{name}")))?;
    require_file(path)?;
    LinearMap::load(path).at(path)
}

pub fn run(ctx: &Context, args: StabilityArgs) -> CliResult<()> {
    let params = ctx.stability(&args.params);
    params.validate()?;
    let maps = match args.method {
        Method::Neighbor => None,
        m => Some((load_map(args.map01.as_ref(), "map01", m)?, load_map(args.map10.as_ref(), "map10", m)?)),
    };
    let l = load_spaces(&args.spaces)?;
    let report = match (args.method, &maps) {
        (Method::Linear, Some((m01, m10))) => linear_stability(&l.s0, &l.s1, &l.shared, m01, m10, &params)?,
        (Method::Neighbor, _) => {
            let (i0, i1) = indexes(&l, params.m)?;
            neighbor_stability(&l.s0, &l.s1, &i0, &i1, &params)?
        }
        (Method::Combination, Some((m01, m10))) => {
            let (i0, i1) = indexes(&l, params.m)?;
            combination_stability(&l.s0, &l.s1, &i0, &i1, m01, m10, &params)?
        }
        _ => unreachable!("maps are loaded for every method that needs them"),
    };
    check_report(&report, &l.shared)?;
    report.save(&args.out).at(&args.out)?;
    log::info!("wrote {} scores to {}", report.len(), args.out.display());
    Ok(())
}
