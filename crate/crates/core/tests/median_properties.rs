use nlem::median::{
    admm_euclidean_median, admm_euclidean_median_with, brute_force_median_2d, em_cost,
    irls_euclidean_median, optimality_residual, AdmmConfig, BoxConstraint, IrlsConfig, PointSet,
};
use proptest::prelude::*;

fn point_set(dim: usize, max_n: usize) -> impl Strategy<Value = PointSet> {
    (1..=max_n).prop_flat_map(move |n| {
        (
            prop::collection::vec(-5.0f64..5.0, n * dim),
            prop::collection::vec(0.1f64..1.0, n),
        )
            .prop_map(move |(c, w)| PointSet::from_flat(dim, c, w).unwrap())
    })
}

fn converged() -> AdmmConfig {
    AdmmConfig {
        mu: 1.0,
        max_iter: 5000,
        ..Default::default()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn minimizer_stays_in_bounding_box(ps in point_set(3, 12)) {
        let z = admm_euclidean_median(&ps, &BoxConstraint::Unconstrained, &converged()).unwrap().minimizer;
        for i in 0..3 {
            let lo = ps.iter().map(|(a, _)| a[i]).fold(f64::INFINITY, f64::min);
            let hi = ps.iter().map(|(a, _)| a[i]).fold(f64::NEG_INFINITY, f64::max);
            prop_assert!(z[i] >= lo - 1e-9 && z[i] <= hi + 1e-9);
        }
    }

    #[test]
    fn boxed_output_is_feasible(ps in point_set(2, 10), l in -3.0f64..0.0, width in 0.1f64..3.0) {
        let bx = BoxConstraint::interval(l, l + width).unwrap();
        let res = admm_euclidean_median(&ps, &bx, &AdmmConfig::default()).unwrap();
        prop_assert!(bx.contains(&res.minimizer));
    }

    #[test]
    fn one_dimensional_reduces_to_weighted_median(ps in point_set(1, 15)) {
        let res = admm_euclidean_median(&ps, &BoxConstraint::Unconstrained, &converged()).unwrap();
        let best = (0..ps.len())
            .map(|k| em_cost(&ps, ps.point(k)).unwrap())
            .fold(f64::INFINITY, f64::min);
        prop_assert!((res.objective - best).abs() <= 1e-9 * (1.0 + best));
    }

    #[test]
    fn converged_admm_passes_certificate(ps in point_set(4, 10)) {
        let bx = BoxConstraint::interval(-1.0, 1.0).unwrap();
        let res = admm_euclidean_median(&ps, &bx, &converged()).unwrap();
        prop_assert!(optimality_residual(&ps, &bx, &res.minimizer) <= 1e-6 * ps.total_weight());
    }

    #[test]
    fn translation_equivariance(ps in point_set(2, 8), dx in -10.0f64..10.0, dy in -10.0f64..10.0) {
        let shifted: Vec<f64> = ps.coords().chunks(2).flat_map(|p| [p[0] + dx, p[1] + dy]).collect();
        let qs = PointSet::from_flat(2, shifted, ps.weights().to_vec()).unwrap();
        let a = admm_euclidean_median(&ps, &BoxConstraint::Unconstrained, &converged()).unwrap();
        let b = admm_euclidean_median(&qs, &BoxConstraint::Unconstrained, &converged()).unwrap();
        prop_assert!((a.objective - b.objective).abs() <= 1e-8 * (1.0 + a.objective));
    }
}

#[test]
fn primal_residual_shrinks() {
    let ps = PointSet::unweighted(vec![
        vec![0.1, 0.9],
        vec![0.4, 0.2],
        vec![0.8, 0.7],
        vec![0.3, 0.5],
        vec![0.95, 0.05],
    ])
    .unwrap();
    let cfg = AdmmConfig {
        mu: 1.0,
        max_iter: 50,
        record_trace: true,
        ..Default::default()
    };
    let res = admm_euclidean_median(&ps, &BoxConstraint::Unconstrained, &cfg).unwrap();
    let r: Vec<f64> = res
        .trace
        .iter()
        .map(|t| t.primal_residual.unwrap())
        .collect();
    assert_eq!(r.len(), 50);
    assert!(r[49] < r[0], "{} vs {}", r[49], r[0]);
}

#[test]
fn observer_sees_every_iterate() {
    let ps = PointSet::unweighted(vec![vec![0.0], vec![1.0], vec![5.0]]).unwrap();
    let mut seen = Vec::new();
    let res = admm_euclidean_median_with(
        &ps,
        &BoxConstraint::Unconstrained,
        &AdmmConfig {
            max_iter: 7,
            ..Default::default()
        },
        |t, z| seen.push((t, z[0])),
    )
    .unwrap();
    assert_eq!(seen.len(), 7);
    assert_eq!(seen.last().unwrap().1, res.minimizer[0]);
}

#[test]
fn matches_grid_oracle_with_tight_box() {
    let ps = PointSet::new(
        vec![
            vec![0.0, 0.0],
            vec![1.0, 0.0],
            vec![0.0, 1.0],
            vec![1.0, 1.0],
            vec![0.2, 0.3],
        ],
        vec![1.0, 0.3, 0.7, 0.2, 2.0],
    )
    .unwrap();
    let bx = BoxConstraint::interval(0.5, 0.9).unwrap();
    let res = admm_euclidean_median(
        &ps,
        &bx,
        &AdmmConfig {
            mu: 1.0,
            max_iter: 20_000,
            ..Default::default()
        },
    )
    .unwrap();
    let (_, oracle) = brute_force_median_2d(&ps, &bx, 201).unwrap();
    assert!(res.objective <= oracle + 1e-9);
    assert!(res.objective >= oracle - 1e-4);
}

#[test]
fn irls_and_admm_agree_off_vertices() {
    // Points in general position so the optimum is not at a data point.
    let ps = PointSet::unweighted(vec![
        vec![0.0, 0.0, 0.0],
        vec![2.0, 0.1, 0.0],
        vec![0.3, 1.9, 0.2],
        vec![0.1, 0.2, 2.1],
        vec![1.5, 1.4, 1.6],
    ])
    .unwrap();
    let a = admm_euclidean_median(
        &ps,
        &BoxConstraint::Unconstrained,
        &AdmmConfig {
            mu: 1.0,
            max_iter: 20_000,
            ..Default::default()
        },
    )
    .unwrap();
    let b = irls_euclidean_median(
        &ps,
        &IrlsConfig {
            max_iter: 2000,
            ..Default::default()
        },
    )
    .unwrap();
    assert!((a.objective - b.objective).abs() <= 1e-8 * a.objective);
}
