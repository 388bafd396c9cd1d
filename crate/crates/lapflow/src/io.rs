//! Plain-text graph and problem files.
//!
//! A graph file is an `n m` header followed by `m` lines `i j w`. A problem
//! file is the same edge list read as arcs `i -> j` (weights optional and
//! ignored), plus one `b v_0 ... v_{n-1}` line and one `cost exp|quadratic`
//! line. `#` starts a comment.

use std::fmt::Write as _;
use std::path::Path;

use lapflow_core::flow::{EdgeCost, FlowProblem};
use lapflow_core::graph::{DirectedFlowGraph, WeightedGraph};

use crate::error::{CliError, CliResult};

struct Lines<'a> {
    path: &'a str,
    inner: std::vec::IntoIter<(usize, Vec<&'a str>)>,
}

impl<'a> Lines<'a> {
    fn new(path: &'a str, text: &'a str) -> Self {
        let lines: Vec<_> = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").split_whitespace().collect::<Vec<_>>()))
            .filter(|(_, tokens)| !tokens.is_empty())
            .collect();
        Self { path, inner: lines.into_iter() }
    }

    fn err(&self, line: usize, message: impl Into<String>) -> CliError {
        CliError::Parse { path: self.path.to_string(), line, message: message.into() }
    }

    fn next(&mut self) -> Option<(usize, Vec<&'a str>)> {
        self.inner.next()
    }

    fn number<T: std::str::FromStr>(&self, line: usize, token: &str, what: &str) -> CliResult<T> {
        token.parse().map_err(|_| self.err(line, format!("cannot read {what} from `{token}`")))
    }

    fn header(&mut self) -> CliResult<(usize, usize)> {
        let (line, tokens) = self.next().ok_or_else(|| self.err(1, "missing `n m` header"))?;
        if tokens.len() != 2 {
            return Err(self.err(line, "header must be `n m`"));
        }
        Ok((self.number(line, tokens[0], "node count")?, self.number(line, tokens[1], "edge count")?))
    }

    /// `m` lines of `i j [w]`; `w` is required when `weighted`.
    fn edges(&mut self, n: usize, m: usize, weighted: bool) -> CliResult<Vec<(usize, usize, f64)>> {
        let mut edges = Vec::with_capacity(m);
        for _ in 0..m {
            let (line, tokens) = self.next().ok_or_else(|| self.err(0, format!("expected {m} edges")))?;
            let arity_ok = if weighted { tokens.len() == 3 } else { tokens.len() == 2 || tokens.len() == 3 };
            if !arity_ok {
                return Err(self.err(line, if weighted { "edge lines are `i j w`" } else { "arc lines are `i j [w]`" }));
            }
            let i: usize = self.number(line, tokens[0], "node id")?;
            let j: usize = self.number(line, tokens[1], "node id")?;
            if i >= n || j >= n {
                return Err(self.err(line, format!("node id out of range for n = {n}")));
            }
            let w = match tokens.get(2) {
                Some(t) => self.number(line, t, "weight")?,
                None => 1.0,
            };
            edges.push((i, j, w));
        }
        Ok(edges)
    }
}

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))
}

pub fn parse_graph(name: &str, text: &str) -> CliResult<WeightedGraph> {
    let mut lines = Lines::new(name, text);
    let (n, m) = lines.header()?;
    let edges = lines.edges(n, m, true)?;
    if let Some((line, _)) = lines.next() {
        return Err(lines.err(line, "trailing content after the edge list"));
    }
    Ok(WeightedGraph::new(n, edges)?)
}

pub fn read_graph(path: &Path) -> CliResult<WeightedGraph> {
    parse_graph(&path.display().to_string(), &read(path)?)
}

pub fn parse_problem(name: &str, text: &str) -> CliResult<FlowProblem> {
    let mut lines = Lines::new(name, text);
    let (n, m) = lines.header()?;
    let arcs = lines.edges(n, m, false)?;
    let (mut b, mut cost) = (None, None);
    while let Some((line, tokens)) = lines.next() {
        match tokens[0] {
            "b" => {
                if tokens.len() != n + 1 {
                    return Err(lines.err(line, format!("`b` needs {n} values")));
                }
                b = Some(
                    tokens[1..].iter().map(|t| lines.number(line, t, "source value")).collect::<CliResult<Vec<f64>>>()?,
                );
            }
            "cost" => {
                let name = tokens.get(1).ok_or_else(|| lines.err(line, "`cost` needs a name"))?;
                cost = Some(name.parse::<EdgeCost>().map_err(|e| lines.err(line, e.to_string()))?);
            }
            other => return Err(lines.err(line, format!("unexpected `{other}`"))),
        }
    }
    let b = b.ok_or_else(|| lines.err(0, "missing `b` line"))?;
    let cost = cost.ok_or_else(|| lines.err(0, "missing `cost` line"))?;
    let graph = DirectedFlowGraph::new(n, arcs.into_iter().map(|(i, j, _)| (i, j)).collect())?;
    Ok(FlowProblem::uniform(graph, b, cost)?)
}

pub fn read_problem(path: &Path) -> CliResult<FlowProblem> {
    parse_problem(&path.display().to_string(), &read(path)?)
}

pub fn format_graph(g: &WeightedGraph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.edge_count());
    for &(i, j, w) in g.edges() {
        let _ = writeln!(out, "{i} {j} {w}");
    }
    out
}
