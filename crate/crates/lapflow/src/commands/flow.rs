use std::path::Path;

use lapflow_core::flow::{
    default_subgradient_step, optimize, ConvergenceConstants, FlowProblem, Method, NewtonSettings, OptimizeConfig,
    SolverMode, StepPolicy, Trace,
};

use super::{build_graph, check_eps, hop_radius, kappa_source};
use crate::args::{FlowArgs, MethodChoice, NetworkSolver, NewtonArgs, StepChoice};
use crate::error::{CliError, CliResult};
use crate::io::read_problem;
use crate::report::{num, opt, write_csv, Header};

/// Phase labels need a dense eigendecomposition; skip them above this size.
const PHASE_LABEL_LIMIT: usize = 200;

pub const TRACE_COLUMNS: [&str; 8] =
    ["iter", "objective", "dual_value", "feasibility", "grad_lnorm", "step", "phase", "messages"];

pub fn trace_rows(trace: &Trace) -> impl Iterator<Item = Vec<String>> + '_ {
    trace.rows.iter().map(|r| {
        vec![
            r.iter.to_string(),
            num(r.objective),
            num(r.dual_value),
            num(r.feasibility),
            num(r.grad_lnorm),
            num(r.step),
            r.phase.map_or_else(String::new, |p| p.label().to_string()),
            r.messages.to_string(),
        ]
    })
}

pub fn newton_settings(args: &NewtonArgs) -> CliResult<NewtonSettings> {
    check_eps(args.eps)?;
    let mode = match args.solver {
        NetworkSolver::Rhop => SolverMode::RHopDistributed(hop_radius(args.rhop)?),
        NetworkSolver::Full => SolverMode::FullDistributed,
    };
    Ok(NewtonSettings { eps: args.eps, mode, kappa: kappa_source(args.kappa), ref_node: args.ref_node })
}

pub fn summarize(trace: &Trace, threshold: f64) -> String {
    let last = trace.rows.last();
    format!(
        "{}: {} iterations, converged={}, feasibility={}, objective={}, messages={}, first below {threshold}: {}",
        trace.method,
        trace.iterations(),
        trace.converged,
        num(last.map_or(f64::NAN, |r| r.feasibility)),
        num(last.map_or(f64::NAN, |r| r.objective)),
        trace.total_messages(),
        opt(trace.iterations_to(threshold)),
    )
}

pub fn flow(args: &FlowArgs) -> CliResult<()> {
    let mut header = Header::new("flow");
    let problem = match &args.problem {
        Some(path) => {
            header.set("problem", path.display());
            read_problem(path)?
        }
        None => {
            let graph = build_graph(&args.graph, &mut header)?;
            header.set("cost", args.cost).set("magnitude", args.magnitude);
            FlowProblem::diametral(graph.orient(), args.magnitude, args.cost)?
        }
    };
    if args.newton.ref_node >= problem.n() {
        return Err(CliError::Usage(format!("--ref-node {} is not a node", args.newton.ref_node)));
    }
    let method = match args.method {
        MethodChoice::SddmNewton => Method::SddmNewton(newton_settings(&args.newton)?),
        MethodChoice::ExactNewton => Method::ExactNewton,
        MethodChoice::Subgradient => {
            Method::Subgradient { step: args.alpha.unwrap_or_else(|| default_subgradient_step(&problem)) }
        }
        MethodChoice::Add => Method::AddNeumann { terms: args.terms },
    };
    let step = match args.step {
        StepChoice::Fixed => {
            StepPolicy::Fixed(args.alpha.ok_or_else(|| CliError::Usage("--step fixed needs --alpha".into()))?)
        }
        StepChoice::AlphaStar => StepPolicy::AlphaStar,
        StepChoice::Backtracking => StepPolicy::Backtracking,
    };
    let constants = if args.step == StepChoice::AlphaStar {
        Some(ConvergenceConstants::compute(&problem, args.newton.eps, args.flow_box)?)
    } else if problem.n() <= PHASE_LABEL_LIMIT {
        ConvergenceConstants::compute(&problem, args.newton.eps, args.flow_box)
            .inspect_err(|e| log::info!("no phase labels: {e}"))
            .ok()
    } else {
        None
    };
    header
        .set("n", problem.n())
        .set("edges", problem.edge_count())
        .set("method", method.name())
        .set("step", format!("{step:?}"))
        .set("max_iters", args.max_iters)
        .set("feas_threshold", args.feas_threshold);
    if let Method::SddmNewton(s) = &method {
        header.set("eps", s.eps).set("mode", format!("{:?}", s.mode)).set("kappa_source", format!("{:?}", s.kappa));
    }
    if let Some(c) = &constants {
        header.set("alpha_star", num(c.alpha_star)).set("eta0", num(c.eta0)).set("eta1", num(c.eta1));
    }
    let config = OptimizeConfig {
        step,
        max_iters: args.max_iters,
        feasibility_threshold: args.feas_threshold,
        constants,
        initial_lambda: None,
    };
    match optimize(&problem, &method, &config) {
        Ok(trace) => {
            header.set("converged", trace.converged).set("total_messages", trace.total_messages());
            write_trace(args.out.as_deref(), &header, &trace)?;
            eprintln!("{}", summarize(&trace, args.feas_threshold));
            Ok(())
        }
        Err(failure) => {
            header.set("error", &failure.error);
            write_trace(args.out.as_deref(), &header, &failure.trace)?;
            Err(failure.into())
        }
    }
}

pub fn write_trace(out: Option<&Path>, header: &Header, trace: &Trace) -> CliResult<()> {
    write_csv(out, header, &TRACE_COLUMNS, trace_rows(trace))
}
