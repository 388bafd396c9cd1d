use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn lapflow(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lapflow")).args(args).env("LF_LOG", "warn").output().unwrap()
}

fn header_value(csv: &str, key: &str) -> Option<String> {
    csv.lines().find_map(|l| l.strip_prefix(&format!("# {key}=")).map(str::to_string))
}

fn body(csv: &str) -> Vec<&str> {
    csv.lines().filter(|l| !l.starts_with('#')).collect()
}

fn path_arg(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn eps_out_of_range_is_a_usage_error() {
    let out = lapflow(&["solve", "--eps", "0.6"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--eps"));
}

#[test]
fn empty_size_list_is_a_usage_error() {
    assert_eq!(lapflow(&["scale", "--sizes", ""]).status.code(), Some(2));
    assert_eq!(lapflow(&["scale"]).status.code(), Some(2));
}

#[test]
fn bad_ground_node_is_a_usage_error() {
    assert_eq!(lapflow(&["solve", "--n", "5", "--ground", "5"]).status.code(), Some(2));
}

#[test]
fn solve_path_meets_tolerance() {
    let out = lapflow(&["solve", "--graph", "path", "--n", "10", "--ground", "0", "--eps", "1e-4", "--rhop", "1"]);
    assert!(out.status.success());
    let csv = String::from_utf8(out.stdout).unwrap();
    let err: f64 = header_value(&csv, "m_norm_error").unwrap().parse().unwrap();
    assert!(err <= 1e-4, "relative M-norm error {err}");
    assert_eq!(header_value(&csv, "max_hop_used").as_deref(), Some("1"));
    let rows = body(&csv);
    assert_eq!(rows[0], "node,x0,xtilde");
    assert_eq!(rows.len(), 10);
    assert!(rows[1].starts_with("1,"));
}

#[test]
fn grid_runs_are_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let out = dir.path().join(name);
        let trans = dir.path().join(format!("t-{name}"));
        let status = lapflow(&[
            "solve", "--graph", "grid", "--rows", "3", "--cols", "4", "--seed", "7",
            "--weight-range", "0.5,2", "--kappa", "estimate", "--out", path_arg(&out),
            "--transcript", path_arg(&trans),
        ])
        .status;
        assert!(status.success());
        (fs::read(out).unwrap(), fs::read(trans).unwrap())
    };
    assert_eq!(run("a.csv"), run("b.csv"));
}

#[test]
fn solver_choices_agree() {
    let xs: Vec<Vec<f64>> = ["rhop", "full", "sequential"]
        .iter()
        .map(|solver| {
            let out = lapflow(&["solve", "--graph", "barbell", "--clique", "4", "--path-len", "3", "--solver", solver]);
            assert!(out.status.success());
            let csv = String::from_utf8(out.stdout).unwrap();
            body(&csv)[1..].iter().map(|r| r.split(',').nth(2).unwrap().parse().unwrap()).collect()
        })
        .collect();
    for x in &xs[1..] {
        for (a, b) in x.iter().zip(&xs[0]) {
            assert!((a - b).abs() <= 1e-9 * b.abs().max(1.0), "{a} vs {b}");
        }
    }
}

#[test]
fn non_power_of_two_radius_warns_and_rounds_down() {
    let out = lapflow(&["solve", "--n", "8", "--rhop", "3"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("not a power of two"));
    assert_eq!(header_value(&String::from_utf8(out.stdout).unwrap(), "rhop").as_deref(), Some("2"));
}

#[test]
fn flow_on_random_graph_converges() {
    let out = lapflow(&["flow", "--graph", "random", "--n", "20", "--edges", "60", "--seed", "1"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = String::from_utf8(out.stdout).unwrap();
    assert_eq!(header_value(&csv, "converged").as_deref(), Some("true"));
    let rows = body(&csv);
    let last: Vec<&str> = rows.last().unwrap().split(',').collect();
    assert!(last[3].parse::<f64>().unwrap() <= 1e-5);
}

#[test]
fn flow_reads_problem_files() {
    let dir = tempfile::tempdir().unwrap();
    let problem = dir.path().join("square.txt");
    fs::write(&problem, "# four-cycle\n4 4\n0 1\n1 2\n2 3\n3 0\nb 1 0 -1 0\ncost quadratic\n").unwrap();
    let out = lapflow(&["flow", "--problem", path_arg(&problem), "--method", "exact-newton"]);
    assert!(out.status.success());
    let csv = String::from_utf8(out.stdout).unwrap();
    // Quadratic costs: one full Newton step lands on the optimum, two half-unit paths.
    let rows = body(&csv);
    assert_eq!(rows.len(), 3);
    let objective: f64 = rows[2].split(',').nth(1).unwrap().parse().unwrap();
    assert!((objective - 0.5).abs() < 1e-12);

    fs::write(&problem, "4 4\n0 1\n1 2\n2 3\n3 9\nb 1 0 -1 0\ncost quadratic\n").unwrap();
    let out = lapflow(&["flow", "--problem", path_arg(&problem)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains(":5:"));
}

#[test]
fn fixed_step_needs_alpha() {
    assert_eq!(lapflow(&["flow", "--step", "fixed"]).status.code(), Some(2));
}

#[test]
fn scale_reports_slopes() {
    let out = lapflow(&["scale", "--family", "path", "--sizes", "4,8,16"]);
    assert!(out.status.success());
    let csv = String::from_utf8(out.stdout).unwrap();
    assert!(header_value(&csv, "messages_loglog_slope").is_some());
    assert_eq!(body(&csv).len(), 4);
}

#[test]
fn bench_orders_methods() {
    let dir = tempfile::tempdir().unwrap();
    let out = lapflow(&["bench", "--experiment", "random-small", "--traces", path_arg(dir.path())]);
    assert!(out.status.success());
    let csv = String::from_utf8(out.stdout).unwrap();
    let iters: Vec<usize> = body(&csv)[1..].iter().map(|r| r.split(',').nth(4).unwrap().parse().unwrap()).collect();
    assert_eq!(iters.len(), 4);
    assert!(iters[0] <= iters[1] && iters[1] < iters[2] && iters[2] < iters[3], "{iters:?}");
    assert!(dir.path().join("random-small-subgradient.csv").exists());
}

fn flow_iterations(args: &[&str]) -> (bool, usize) {
    let out = lapflow(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = String::from_utf8(out.stdout).unwrap();
    (header_value(&csv, "converged").as_deref() == Some("true"), body(&csv).len() - 2)
}

#[test]
fn barbell_newton_beats_subgradient() {
    let base = ["flow", "--graph", "barbell", "--clique", "20", "--path-len", "20", "--seed", "1"];
    let (newton_ok, newton) = flow_iterations(&[&base[..], &["--solver", "full"]].concat());
    let (sub_ok, sub) = flow_iterations(&[&base[..], &["--method", "subgradient", "--max-iters", "200000"]].concat());
    assert!(newton_ok && sub_ok);
    assert!(newton < sub, "{newton} vs {sub}");
}

#[test]
fn large_barbell_converges() {
    let args = ["flow", "--graph", "barbell", "--clique", "40", "--path-len", "40", "--seed", "1", "--solver", "full"];
    assert!(flow_iterations(&args).0);
}
