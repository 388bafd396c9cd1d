use lapflow_core::distributed::edist_rsolve;
use lapflow_core::flow::{optimize, EdgeCost, FlowProblem, Method, NewtonSettings, OptimizeConfig, SolverMode};
use lapflow_core::graph::{generate, ground, laplacian, GraphKind};
use lapflow_core::reference::richardson_iterations;
use lapflow_core::stats::log_log_slope;

use super::{chain_spec, check_eps, hop_radius, kappa_source, random_rhs};
use crate::args::{ScaleArgs, ScaleFamily};
use crate::error::{CliError, CliResult};
use crate::report::{num, write_csv, Header};

fn kind(family: ScaleFamily, n: usize) -> GraphKind {
    match family {
        ScaleFamily::Path => GraphKind::Path { n },
        ScaleFamily::Grid => {
            let side = ((n as f64).sqrt().round() as usize).max(2);
            GraphKind::Grid { rows: side, cols: side }
        }
        ScaleFamily::ScaleFree => GraphKind::ScaleFree { n },
    }
}

pub fn scale(args: &ScaleArgs) -> CliResult<()> {
    if args.sizes.is_empty() {
        return Err(CliError::Usage("--sizes needs at least one size".into()));
    }
    if let Some(&n) = args.sizes.iter().find(|&&n| n < 2) {
        return Err(CliError::Usage(format!("size {n} is too small; graphs need at least two nodes")));
    }
    check_eps(args.eps)?;
    let radius = hop_radius(args.rhop)?;
    let q = richardson_iterations(args.eps)?;
    let mut header = Header::new("scale");
    header
        .set("family", format!("{:?}", args.family))
        .set("eps", args.eps)
        .set("rhop", radius)
        .set("kappa_source", format!("{:?}", kappa_source(args.kappa)))
        .set("seed", args.seed)
        .set("q", q);

    let mut columns = vec!["n", "edges", "max_degree", "kappa", "d", "rounds", "messages", "max_hop"];
    if args.newton {
        columns.extend(["newton_iterations", "newton_messages"]);
    }
    let (mut ns, mut rounds, mut messages) = (Vec::new(), Vec::new(), Vec::new());
    let mut rows = Vec::new();
    for &size in &args.sizes {
        let graph = generate(&kind(args.family, size), args.seed)?;
        let (s, _) = ground(&laplacian(&graph)?, 0)?;
        let spec = chain_spec(&graph, &s, args.kappa)?;
        let b = random_rhs(s.n(), args.seed);
        let solved = edist_rsolve(&s, &b, spec.d, radius, args.eps)?;
        let t = &solved.transcript;
        log::info!("n={} d={} messages={}", graph.n(), spec.d, t.messages_total);
        ns.push(graph.n() as f64);
        rounds.push(t.rounds as f64);
        messages.push(t.messages_total as f64);
        let mut row = vec![
            graph.n().to_string(),
            graph.edge_count().to_string(),
            graph.max_degree().to_string(),
            num(spec.kappa),
            spec.d.to_string(),
            t.rounds.to_string(),
            t.messages_total.to_string(),
            t.max_hop_used.to_string(),
        ];
        if args.newton {
            let problem = FlowProblem::diametral(graph.orient(), 1.0, EdgeCost::Exp)?;
            let settings = NewtonSettings {
                eps: args.eps,
                mode: SolverMode::RHopDistributed(radius),
                kappa: kappa_source(args.kappa),
                ..NewtonSettings::default()
            };
            let trace = optimize(&problem, &Method::SddmNewton(settings), &OptimizeConfig::default())?;
            row.push(trace.iterations().to_string());
            row.push(trace.total_messages().to_string());
        }
        rows.push(row);
    }
    if let Some(fit) = log_log_slope(&ns, &messages) {
        header.set("messages_loglog_slope", num(fit.slope)).set("messages_loglog_r2", num(fit.r_squared));
    }
    if let Some(fit) = log_log_slope(&ns, &rounds) {
        header.set("rounds_loglog_slope", num(fit.slope)).set("rounds_loglog_r2", num(fit.r_squared));
    }
    write_csv(args.out.as_deref(), &header, &columns, rows)
}
