mod common;

use common::*;
use lapflow_core::graph::{generate, ground, laplacian, GraphKind};
use lapflow_core::spectral::{approx_order_check, chain_length, estimate_condition, ChainSpec, KappaSource};
use nalgebra::{DMatrix, DVector};
use proptest::prelude::*;

/// Spectrum of `D⁻¹A` via the similar symmetric matrix `D^{−½} A D^{−½}`.
fn walk_spectrum(s: &lapflow_core::graph::StandardSplitting) -> Vec<f64> {
    let a = to_na(&s.off().to_dense());
    let half = DMatrix::from_diagonal(&DVector::from_iterator(s.n(), s.diag().iter().map(|d| 1.0 / d.sqrt())));
    let sym = &half * a * &half;
    let mut eig: Vec<f64> = sym.symmetric_eigen().eigenvalues.iter().copied().collect();
    eig.sort_by(f64::total_cmp);
    eig
}

#[test]
fn grounded_path_condition_matches_dense() {
    let g = generate(&GraphKind::Path { n: 5 }, 0).unwrap();
    let (s, _) = ground(&laplacian(&g).unwrap(), 0).unwrap();
    let eig = matrix(&s).symmetric_eigen().eigenvalues;
    let oracle = eig.max() / eig.min();
    let est = estimate_condition(&s, 1e-12, 100_000).unwrap();
    assert!((est.kappa - oracle).abs() <= 1e-6 * oracle, "{} vs {oracle}", est.kappa);
}

#[test]
fn laplacian_condition_is_taken_on_ones_complement() {
    let s = laplacian(&generate(&GraphKind::Path { n: 6 }, 0).unwrap()).unwrap();
    let mut eig: Vec<f64> = matrix(&s).symmetric_eigen().eigenvalues.iter().copied().collect();
    eig.sort_by(f64::total_cmp);
    let oracle = eig[5] / eig[1];
    let est = estimate_condition(&s, 1e-12, 100_000).unwrap();
    assert!((est.kappa - oracle).abs() <= 1e-6 * oracle);
}

#[test]
fn crude_bound_is_attained_by_the_budget() {
    for kappa in [1.0, 3.7, 1000.0, 1e9] {
        let spec = chain_length(kappa, KappaSource::Estimated).unwrap();
        assert!(spec.eps_d < 2f64.ln() / 3.0);
        assert!(2f64.powi(spec.d as i32) >= 4.0 * kappa);
        assert!(spec.d == 0 || 2f64.powi(spec.d as i32 - 1) < 4.0 * kappa);
    }
    assert!(chain_length(0.5, KappaSource::Estimated).is_err());
    assert!(chain_length(f64::NAN, KappaSource::Estimated).is_err());
}

#[test]
fn scaled_operator_breaks_the_sandwich() {
    let s = random_grounded(12, 9);
    let m = matrix(&s);
    let scaled = &m * 0.2f64.exp();
    assert!(approx_order_check(s.n(), |v| apply(&m, v), |v| apply(&scaled, v), 0.1, 20, 1, false).is_err());
    assert!(approx_order_check(s.n(), |v| apply(&m, v), |v| apply(&m, v), 0.1, 20, 1, false).is_ok());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn walk_spectrum_is_inside_the_condition_band(n in 3usize..20, seed in any::<u64>()) {
        let s = random_grounded(n, seed);
        let kappa = ChainSpec::from_estimate(&s).unwrap().kappa;
        let eig = walk_spectrum(&s);
        let limit = 1.0 - 1.0 / kappa;
        for l in eig {
            prop_assert!(l.abs() <= limit + 1e-9, "|{l}| > {limit}");
        }
    }

    #[test]
    fn splitting_is_sandwiched_by_its_diagonal(n in 3usize..20, seed in any::<u64>()) {
        let s = random_grounded(n, seed);
        let eig = walk_spectrum(&s);
        let (alpha, beta) = (-eig[0], eig[eig.len() - 1]);
        let m = matrix(&s);
        let mut r = rng(seed);
        for _ in 0..50 {
            let v = random_vector(&mut r, s.n());
            let mv: f64 = v.iter().zip(apply(&m, &v)).map(|(a, b)| a * b).sum();
            let dv: f64 = v.iter().zip(s.diag()).map(|(a, d)| a * a * d).sum();
            prop_assert!((1.0 - beta) * dv <= mv * (1.0 + 1e-12));
            prop_assert!(mv <= (1.0 + alpha) * dv * (1.0 + 1e-12));
        }
    }

    #[test]
    fn chain_length_is_monotone(a in 1.0f64..1e12, b in 1.0f64..1e12) {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        let dl = chain_length(lo, KappaSource::AnalyticBound).unwrap().d;
        let dh = chain_length(hi, KappaSource::AnalyticBound).unwrap().d;
        prop_assert!(dl <= dh);
    }
}
