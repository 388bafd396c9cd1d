mod bench;
mod flow;
mod scale;
mod solve;

pub use bench::bench;
pub use flow::flow;
pub use scale::scale;
pub use solve::solve;

use lapflow_core::graph::{generate, with_random_weights, GraphKind, StandardSplitting, WeightedGraph};
use lapflow_core::spectral::{ChainSpec, KappaSource};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::args::{GraphArgs, GraphFamily, KappaChoice};
use crate::error::{CliError, CliResult};
use crate::io::read_graph;
use crate::report::Header;

pub fn graph_kind(args: &GraphArgs) -> CliResult<Option<GraphKind>> {
    Ok(Some(match args.graph {
        GraphFamily::Path => GraphKind::Path { n: args.n },
        GraphFamily::Grid => GraphKind::Grid { rows: args.rows, cols: args.cols },
        GraphFamily::Barbell => GraphKind::Barbell { clique: args.clique, path_len: args.path_len },
        GraphFamily::Random => {
            let pairs = args.n * args.n.saturating_sub(1) / 2;
            GraphKind::Random { n: args.n, m: args.edges.unwrap_or((3 * args.n).min(pairs)) }
        }
        GraphFamily::ScaleFree => GraphKind::ScaleFree { n: args.n },
        GraphFamily::Complete => GraphKind::Complete { n: args.n },
        GraphFamily::File => return Ok(None),
    }))
}

/// Builds the requested graph and records how it was made.
pub fn build_graph(args: &GraphArgs, header: &mut Header) -> CliResult<WeightedGraph> {
    let g = match graph_kind(args)? {
        Some(kind) => {
            header.set("graph", format!("{kind:?}")).set("seed", args.seed);
            generate(&kind, args.seed)?
        }
        None => {
            let path = args.file.as_ref().ok_or_else(|| CliError::Usage("--graph file needs --file".into()))?;
            header.set("graph", format!("file:{}", path.display()));
            read_graph(path)?
        }
    };
    match args.weight_range.as_deref() {
        Some(&[lo, hi]) => {
            header.set("weight_range", format!("{lo},{hi}"));
            Ok(with_random_weights(&g, lo, hi, args.seed)?)
        }
        Some(_) => Err(CliError::Usage("--weight-range takes LO,HI".into())),
        None => Ok(g),
    }
}

/// Largest power of two not above `r`, with a warning when that changes it.
pub fn hop_radius(r: usize) -> CliResult<usize> {
    if r == 0 {
        return Err(CliError::Usage("--rhop must be at least 1".into()));
    }
    let rounded = 1usize << (usize::BITS - 1 - r.leading_zeros());
    if rounded != r {
        log::warn!("--rhop {r} is not a power of two; using {rounded}");
    }
    Ok(rounded)
}

pub fn check_eps(eps: f64) -> CliResult<()> {
    if eps > 0.0 && eps <= 0.5 {
        Ok(())
    } else {
        Err(CliError::Usage(format!("--eps must lie in (0, 0.5], got {eps}")))
    }
}

pub fn kappa_source(choice: KappaChoice) -> KappaSource {
    match choice {
        KappaChoice::Bound => KappaSource::AnalyticBound,
        KappaChoice::Estimate => KappaSource::Estimated,
    }
}

/// Chain for a system grounded out of `graph`.
pub fn chain_spec(graph: &WeightedGraph, s: &StandardSplitting, choice: KappaChoice) -> CliResult<ChainSpec> {
    Ok(match choice {
        KappaChoice::Bound => ChainSpec::from_bound(graph, true)?,
        KappaChoice::Estimate => ChainSpec::from_estimate(s)?,
    })
}

pub fn random_rhs(n: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| rng.random_range(-1.0..1.0)).collect()
}
