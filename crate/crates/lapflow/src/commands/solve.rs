use std::path::Path;

use lapflow_core::distributed::DistributedSolver;
use lapflow_core::graph::{ground, laplacian};
use lapflow_core::linalg::{norm2, sub};
use lapflow_core::netsim::SimTranscript;
use lapflow_core::reference::{
    direct_solve, parallel_esolve, parallel_rsolve, relative_m_error, richardson_iterations, InverseChainView,
};

use super::{build_graph, chain_spec, check_eps, hop_radius, random_rhs};
use crate::args::{Rhs, SolveArgs, SolverChoice};
use crate::error::{CliError, CliResult};
use crate::report::{num, write_csv, Header};

/// Above this size the dense oracle comparison is skipped.
const ORACLE_LIMIT: usize = 500;

pub fn solve(args: &SolveArgs) -> CliResult<()> {
    check_eps(args.eps)?;
    let mut header = Header::new("solve");
    let graph = build_graph(&args.graph, &mut header)?;
    if args.ground >= graph.n() {
        return Err(CliError::Usage(format!("--ground {} is not a node of a {}-node graph", args.ground, graph.n())));
    }
    let radius = hop_radius(args.rhop)?;
    let (s, grounding) = ground(&laplacian(&graph)?, args.ground)?;
    let spec = chain_spec(&graph, &s, args.kappa)?;
    let b = match args.rhs {
        Rhs::Random => random_rhs(s.n(), args.graph.seed),
        Rhs::Ones => vec![1.0; s.n()],
    };
    header
        .set("n", graph.n())
        .set("edges", graph.edge_count())
        .set("ground", args.ground)
        .set("solver", format!("{:?}", args.solver).to_lowercase())
        .set("rhop", radius)
        .set("eps", args.eps)
        .set("rhs", format!("{:?}", args.rhs).to_lowercase())
        .set("kappa_source", format!("{:?}", spec.kappa_source))
        .set("kappa", num(spec.kappa))
        .set("d", spec.d)
        .set("eps_d", num(spec.eps_d))
        .set("q", richardson_iterations(args.eps)?);

    let (x0, xt, crude, transcript) = match args.solver {
        SolverChoice::Sequential => {
            let chain = InverseChainView::from_spec(&s, &spec);
            let x0 = parallel_rsolve(&chain, &b);
            (x0, parallel_esolve(&chain, &b, args.eps)?, SimTranscript::default(), SimTranscript::default())
        }
        SolverChoice::Full | SolverChoice::Rhop => {
            let make = || match args.solver {
                SolverChoice::Full => DistributedSolver::full(&s, spec.d),
                _ => DistributedSolver::rhop(&s, spec.d, radius),
            };
            let mut crude_solver = make()?;
            let x0 = crude_solver.crude_solve(&b)?;
            let mut solver = make()?;
            let xt = solver.solve(&b, args.eps)?;
            (x0, xt, crude_solver.transcript().clone(), solver.transcript().clone())
        }
    };

    let residual = norm2(&sub(&s.apply(&xt), &b));
    header
        .set("residual", num(residual))
        .set("crude_messages", crude.messages_total)
        .set("rounds", transcript.rounds)
        .set("messages", transcript.messages_total)
        .set("max_hop_used", transcript.max_hop_used);
    if s.n() <= ORACLE_LIMIT {
        let x_star = direct_solve(&s, &b)?;
        let err = relative_m_error(&s, &xt, &x_star);
        header.set("m_norm_error", num(err));
        log::info!("relative M-norm error {err:e}");
    }
    if let Some(path) = &args.transcript {
        write_transcript(path, &header, &transcript)?;
    }
    let rows = (0..graph.n()).filter_map(|node| {
        grounding.reduced_index(node).map(|i| vec![node.to_string(), num(x0[i]), num(xt[i])])
    });
    write_csv(args.out.as_deref(), &header, &["node", "x0", "xtilde"], rows)
}

fn write_transcript(path: &Path, header: &Header, t: &SimTranscript) -> CliResult<()> {
    let rows = t.rows().map(|(round, messages, hop)| vec![round.to_string(), messages.to_string(), hop.to_string()]);
    write_csv(Some(path), header, &["round", "messages", "max_hop"], rows)
}
