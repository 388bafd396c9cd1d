use lapflow_core::flow::{
    default_subgradient_step, optimize, EdgeCost, FlowProblem, Method, NewtonSettings, OptimizeConfig, SolverMode,
};
use lapflow_core::graph::{generate_flow, GraphKind};

use super::flow::{summarize, write_trace};
use super::{check_eps, hop_radius};
use crate::args::{BenchArgs, Experiment};
use crate::error::CliResult;
use crate::report::{num, opt, write_csv, Header};

const EXPERIMENTS: [Experiment; 4] =
    [Experiment::RandomSmall, Experiment::RandomLarge, Experiment::Barbell60, Experiment::Barbell120];

fn name(e: Experiment) -> &'static str {
    match e {
        Experiment::RandomSmall => "random-small",
        Experiment::RandomLarge => "random-large",
        Experiment::Barbell60 => "barbell-60",
        Experiment::Barbell120 => "barbell-120",
        Experiment::All => "all",
    }
}

/// Graph and Newton network solver for each experiment. The barbells use
/// full communication since their bridge makes one-hop chains very long.
fn instance(e: Experiment, radius: usize) -> (GraphKind, SolverMode) {
    match e {
        Experiment::RandomSmall => (GraphKind::Random { n: 20, m: 60 }, SolverMode::RHopDistributed(radius)),
        Experiment::RandomLarge => (GraphKind::Random { n: 50, m: 150 }, SolverMode::RHopDistributed(radius)),
        Experiment::Barbell60 => (GraphKind::Barbell { clique: 20, path_len: 20 }, SolverMode::FullDistributed),
        Experiment::Barbell120 | Experiment::All => {
            (GraphKind::Barbell { clique: 40, path_len: 40 }, SolverMode::FullDistributed)
        }
    }
}

pub fn bench(args: &BenchArgs) -> CliResult<()> {
    check_eps(args.eps)?;
    let radius = hop_radius(args.rhop)?;
    let selected: Vec<Experiment> =
        if args.experiment == Experiment::All { EXPERIMENTS.to_vec() } else { vec![args.experiment] };
    if let Some(dir) = &args.traces {
        std::fs::create_dir_all(dir)?;
    }
    let mut header = Header::new("bench");
    header
        .set("seed", args.seed)
        .set("eps", args.eps)
        .set("rhop", radius)
        .set("magnitude", args.magnitude)
        .set("feas_threshold", args.feas_threshold)
        .set("terms", args.terms);

    let mut rows = Vec::new();
    for e in selected {
        let (kind, mode) = instance(e, radius);
        let problem = FlowProblem::diametral(generate_flow(&kind, args.seed)?, args.magnitude, EdgeCost::Exp)?;
        let settings = NewtonSettings { eps: args.eps, mode, ..NewtonSettings::default() };
        let methods = [
            (Method::SddmNewton(settings), args.newton_iters),
            (Method::ExactNewton, args.newton_iters),
            (Method::AddNeumann { terms: args.terms }, args.baseline_iters),
            (Method::Subgradient { step: default_subgradient_step(&problem) }, args.baseline_iters),
        ];
        for (method, max_iters) in methods {
            log::info!("{} / {}", name(e), method.name());
            let config =
                OptimizeConfig { feasibility_threshold: args.feas_threshold, max_iters, ..OptimizeConfig::default() };
            let trace = optimize(&problem, &method, &config)?;
            eprintln!("{}: {}", name(e), summarize(&trace, args.feas_threshold));
            if let Some(dir) = &args.traces {
                let mut h = header.clone();
                h.set("experiment", name(e)).set("method", method.name()).set("max_iters", max_iters);
                let path = dir.join(format!("{}-{}.csv", name(e), method.name()));
                write_trace(Some(&path), &h, &trace)?;
            }
            let last = trace.rows.last();
            rows.push(vec![
                name(e).to_string(),
                problem.n().to_string(),
                problem.edge_count().to_string(),
                method.name().to_string(),
                opt(trace.iterations_to(args.feas_threshold)),
                trace.converged.to_string(),
                num(last.map_or(f64::NAN, |r| r.feasibility)),
                num(last.map_or(f64::NAN, |r| r.objective)),
                trace.total_messages().to_string(),
            ]);
        }
    }
    write_csv(
        args.out.as_deref(),
        &header,
        &["experiment", "n", "edges", "method", "iterations", "converged", "feasibility", "objective", "messages"],
        rows,
    )
}
