use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lapflow_core::flow::{EdgeCost, DEFAULT_FLOW_BOX};

#[derive(Debug, Parser)]
#[command(name = "lapflow", version, about = "Distributed SDDM solvers and dual Newton flows on a simulated network")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve a grounded Laplacian system and print `node,x0,xtilde`.
    Solve(SolveArgs),
    /// Run one flow optimization and print its trace.
    Flow(FlowArgs),
    /// Compare all methods on the reference flow instances.
    Bench(BenchArgs),
    /// Measure solver cost across graph sizes.
    Scale(ScaleArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GraphFamily {
    Path,
    Grid,
    Barbell,
    Random,
    ScaleFree,
    Complete,
    File,
}

#[derive(Debug, Clone, Args)]
pub struct GraphArgs {
    #[arg(long, value_enum, default_value_t = GraphFamily::Path)]
    pub graph: GraphFamily,
    #[arg(long, default_value_t = 10)]
    pub n: usize,
    #[arg(long, default_value_t = 4)]
    pub rows: usize,
    #[arg(long, default_value_t = 4)]
    pub cols: usize,
    #[arg(long, default_value_t = 20)]
    pub clique: usize,
    #[arg(long = "path-len", default_value_t = 20)]
    pub path_len: usize,
    /// Edge count for `--graph random` [default: min(3n, n(n-1)/2)].
    #[arg(long)]
    pub edges: Option<usize>,
    /// Edge list for `--graph file`.
    #[arg(long)]
    pub file: Option<PathBuf>,
    /// Redraw edge weights uniformly from `LO,HI`.
    #[arg(long = "weight-range", value_delimiter = ',', value_name = "LO,HI")]
    pub weight_range: Option<Vec<f64>>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KappaChoice {
    /// `n⁴·W_max/W_min` for a grounded system.
    Bound,
    /// Power and inverse power iteration.
    Estimate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SolverChoice {
    /// R-hop restricted node-local solver.
    Rhop,
    /// Full-communication node-local solver.
    Full,
    /// Centralized inverse-chain solver, no network.
    Sequential,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Rhs {
    Random,
    Ones,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    /// Node removed to make the Laplacian nonsingular.
    #[arg(long, default_value_t = 0)]
    pub ground: usize,
    #[arg(long, default_value_t = 1e-4)]
    pub eps: f64,
    #[arg(long, default_value_t = 1)]
    pub rhop: usize,
    #[arg(long, value_enum, default_value_t = SolverChoice::Rhop)]
    pub solver: SolverChoice,
    #[arg(long, value_enum, default_value_t = KappaChoice::Bound)]
    pub kappa: KappaChoice,
    #[arg(long, value_enum, default_value_t = Rhs::Random)]
    pub rhs: Rhs,
    /// Also write the round-by-round transcript as CSV.
    #[arg(long)]
    pub transcript: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodChoice {
    SddmNewton,
    ExactNewton,
    Subgradient,
    Add,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StepChoice {
    Fixed,
    AlphaStar,
    Backtracking,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum NetworkSolver {
    Rhop,
    Full,
}

#[derive(Debug, Clone, Args)]
pub struct NewtonArgs {
    #[arg(long, default_value_t = 1e-4)]
    pub eps: f64,
    #[arg(long, default_value_t = 1)]
    pub rhop: usize,
    /// Network solver behind the SDDM Newton direction.
    #[arg(long, value_enum, default_value_t = NetworkSolver::Rhop)]
    pub solver: NetworkSolver,
    #[arg(long, value_enum, default_value_t = KappaChoice::Estimate)]
    pub kappa: KappaChoice,
    /// Node grounded in every Hessian solve.
    #[arg(long = "ref-node", default_value_t = 0)]
    pub ref_node: usize,
}

#[derive(Debug, Args)]
pub struct FlowArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    /// Problem file (edge list plus `b` and `cost` lines); overrides `--graph`.
    #[arg(long)]
    pub problem: Option<PathBuf>,
    #[arg(long, default_value_t = EdgeCost::Exp)]
    pub cost: EdgeCost,
    /// Size of the source and sink placed a diameter apart.
    #[arg(long, default_value_t = 1.0)]
    pub magnitude: f64,
    #[arg(long, value_enum, default_value_t = MethodChoice::SddmNewton)]
    pub method: MethodChoice,
    #[command(flatten)]
    pub newton: NewtonArgs,
    #[arg(long = "max-iters", default_value_t = 100)]
    pub max_iters: usize,
    #[arg(long = "feas-threshold", default_value_t = 1e-5)]
    pub feas_threshold: f64,
    #[arg(long, value_enum, default_value_t = StepChoice::Backtracking)]
    pub step: StepChoice,
    /// Step for `--step fixed` and the subgradient method.
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Neumann terms for `--method add`.
    #[arg(long, default_value_t = 2)]
    pub terms: usize,
    /// Flow box `[-x, x]` used for curvature bounds and phase labels.
    #[arg(long = "flow-box", default_value_t = DEFAULT_FLOW_BOX)]
    pub flow_box: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Experiment {
    /// random(20, 60)
    RandomSmall,
    /// random(50, 150)
    RandomLarge,
    /// Two 20-cliques joined by a 20-node path.
    Barbell60,
    /// Two 40-cliques joined by a 40-node path.
    Barbell120,
    All,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long, value_enum, default_value_t = Experiment::All)]
    pub experiment: Experiment,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value_t = 1e-4)]
    pub eps: f64,
    #[arg(long, default_value_t = 1)]
    pub rhop: usize,
    #[arg(long, default_value_t = 1.0)]
    pub magnitude: f64,
    /// Iteration cap for the two Newton methods.
    #[arg(long = "newton-iters", default_value_t = 100)]
    pub newton_iters: usize,
    /// Iteration cap for the subgradient and Neumann baselines.
    #[arg(long = "baseline-iters", default_value_t = 1_000_000)]
    pub baseline_iters: usize,
    /// Every method stops once `‖Ax − b‖₂` reaches this.
    #[arg(long = "feas-threshold", default_value_t = 1e-2)]
    pub feas_threshold: f64,
    #[arg(long, default_value_t = 2)]
    pub terms: usize,
    /// Directory for one full trace CSV per experiment and method.
    #[arg(long)]
    pub traces: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ScaleFamily {
    Path,
    /// Square grids; sizes are rounded to the nearest square.
    Grid,
    ScaleFree,
}

#[derive(Debug, Args)]
pub struct ScaleArgs {
    #[arg(long, value_enum, default_value_t = ScaleFamily::Path)]
    pub family: ScaleFamily,
    /// Comma-separated node counts.
    #[arg(long, value_delimiter = ',', required = true)]
    pub sizes: Vec<usize>,
    #[arg(long, default_value_t = 1e-4)]
    pub eps: f64,
    #[arg(long, default_value_t = 1)]
    pub rhop: usize,
    #[arg(long, value_enum, default_value_t = KappaChoice::Estimate)]
    pub kappa: KappaChoice,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Also run SDDM Newton on a diametral flow over each graph.
    #[arg(long)]
    pub newton: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}
