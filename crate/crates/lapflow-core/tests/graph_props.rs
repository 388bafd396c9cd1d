use lapflow_core::graph::{generate, ground, hop_distances, laplacian, with_random_weights, GraphKind, UNREACHABLE};
use lapflow_core::spectral::validate_sddm;
use proptest::prelude::*;

fn floyd_warshall(n: usize, edges: &[(usize, usize, f64)]) -> Vec<Vec<usize>> {
    let mut dist = vec![vec![UNREACHABLE; n]; n];
    for (i, row) in dist.iter_mut().enumerate() {
        row[i] = 0;
    }
    for &(i, j, _) in edges {
        dist[i][j] = 1;
        dist[j][i] = 1;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if dist[i][k] != UNREACHABLE && dist[k][j] != UNREACHABLE && dist[i][k] + dist[k][j] < dist[i][j] {
                    dist[i][j] = dist[i][k] + dist[k][j];
                }
            }
        }
    }
    dist
}

/// Uniform samples with fewer than about `0.6·n·ln n` edges are rarely connected.
fn sparsest_connected(n: usize) -> usize {
    ((0.6 * n as f64 * (n as f64).ln()).ceil() as usize).clamp(n - 1, n * (n - 1) / 2)
}

fn random_kind() -> impl Strategy<Value = GraphKind> {
    (2usize..40).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        (sparsest_connected(n)..=pairs.min(3 * n)).prop_map(move |m| GraphKind::Random { n, m })
    })
}

fn any_kind() -> impl Strategy<Value = GraphKind> {
    prop_oneof![
        random_kind(),
        (2usize..40).prop_map(|n| GraphKind::Path { n }),
        (1usize..7, 2usize..7).prop_map(|(rows, cols)| GraphKind::Grid { rows, cols }),
        (2usize..8, 0usize..6).prop_map(|(clique, path_len)| GraphKind::Barbell { clique, path_len }),
        (2usize..40).prop_map(|n| GraphKind::ScaleFree { n }),
        (2usize..12).prop_map(|n| GraphKind::Complete { n }),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn generation_is_reproducible(kind in any_kind(), seed in any::<u64>()) {
        let a = generate(&kind, seed).unwrap();
        let b = generate(&kind, seed).unwrap();
        prop_assert_eq!(a.edges(), b.edges());
        prop_assert!(a.is_connected());
        prop_assert_eq!(a.n(), kind.node_count());
        if let GraphKind::Random { m, .. } = kind {
            prop_assert_eq!(a.edge_count(), m);
        }
    }

    #[test]
    fn hop_distances_match_floyd_warshall(kind in any_kind(), seed in any::<u64>()) {
        let g = generate(&kind, seed).unwrap();
        let oracle = floyd_warshall(g.n(), g.edges());
        for (k, row) in oracle.iter().enumerate() {
            prop_assert_eq!(&hop_distances(&g, k), row);
        }
        let diameter = oracle.iter().flatten().copied().max().unwrap();
        prop_assert_eq!(g.diameter(), Some(diameter));
    }

    #[test]
    fn unit_laplacian_rows_sum_to_zero_exactly(kind in any_kind(), seed in any::<u64>()) {
        let s = laplacian(&generate(&kind, seed).unwrap()).unwrap();
        let m = s.to_dense();
        for i in 0..s.n() {
            prop_assert_eq!(m.row(i).iter().sum::<f64>(), 0.0);
        }
        prop_assert!(s.apply(&vec![1.0; s.n()]).iter().all(|v| *v == 0.0));
    }

    #[test]
    fn weighted_laplacian_rows_sum_to_zero(kind in random_kind(), seed in any::<u64>()) {
        let g = with_random_weights(&generate(&kind, seed).unwrap(), 1.0, 10.0, seed).unwrap();
        let s = laplacian(&g).unwrap();
        let worst = s.apply(&vec![1.0; s.n()]).iter().fold(0.0f64, |m, v| m.max(v.abs()));
        prop_assert!(worst <= 1e-12, "row sum {worst:e}");
    }

    #[test]
    fn grounding_keeps_dominance(kind in any_kind(), seed in any::<u64>(), pick in any::<prop::sample::Index>()) {
        let s = laplacian(&generate(&kind, seed).unwrap()).unwrap();
        let reference = pick.index(s.n());
        let (grounded, _) = ground(&s, reference).unwrap();
        let slack = grounded.dominance_slack();
        prop_assert!(slack.iter().all(|v| *v >= 0.0));
        prop_assert!(slack.iter().any(|v| *v > 0.0));
        prop_assert!(validate_sddm(&grounded).is_sddm());
    }
}

#[test]
fn experiment_topologies() {
    let barbell = generate(&GraphKind::Barbell { clique: 20, path_len: 20 }, 0).unwrap();
    assert_eq!(barbell.n(), 60);
    assert_eq!(barbell.edge_count(), 2 * (20 * 19 / 2) + 21);

    let path = generate(&GraphKind::Path { n: 5 }, 0).unwrap();
    assert_eq!(path.edge_count(), 4);
    assert_eq!(path.diameter(), Some(4));

    let random = generate(&GraphKind::Random { n: 20, m: 60 }, 7).unwrap();
    assert!(random.is_connected());
    assert_eq!(random.edge_count(), 60);
    let s = laplacian(&random).unwrap();
    assert!(s.apply(&[1.0; 20]).iter().all(|v| *v == 0.0));
}

#[test]
fn grid_corner_distance() {
    let g = generate(&GraphKind::Grid { rows: 3, cols: 3 }, 0).unwrap();
    assert_eq!(hop_distances(&g, 0).into_iter().max(), Some(4));
    let k4 = generate(&GraphKind::Complete { n: 4 }, 0).unwrap();
    assert_eq!(hop_distances(&k4, 2), vec![1, 1, 0, 1]);
}

#[test]
fn grounded_barbell_is_sddm() {
    let s = laplacian(&generate(&GraphKind::Barbell { clique: 20, path_len: 20 }, 0).unwrap()).unwrap();
    let (grounded, _) = ground(&s, 0).unwrap();
    assert!(validate_sddm(&grounded).is_sddm());
    assert!(!validate_sddm(&s).is_sddm());
    assert!(validate_sddm(&s).is_sdd());
}

#[test]
fn infeasible_edge_count_is_rejected() {
    assert!(generate(&GraphKind::Random { n: 5, m: 11 }, 0).is_err());
    assert!(generate(&GraphKind::Random { n: 5, m: 3 }, 0).is_err());
}
