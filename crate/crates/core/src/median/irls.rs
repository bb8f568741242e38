use super::cost::{dist_sq, final_cost, surrogate_cost_unchecked, weighted_mean};
use super::{BoxConstraint, IrlsConfig, PointSet, SolverResult, TraceRecord};
use crate::error::{Error, Result};

/// Unconstrained IRLS on the smoothed surrogate.
///
/// Every step is the weighted average `x <- sum beta_k a_k / sum beta_k` with
/// `beta_k = w_k / sqrt(||x - a_k||^2 + eps)`, a majorize-minimize step, so the
/// surrogate never increases. Trace objectives are surrogate costs.
pub fn irls_euclidean_median(ps: &PointSet, cfg: &IrlsConfig) -> Result<SolverResult> {
    irls_euclidean_median_with(ps, cfg, |_, _| {})
}

/// Runs unconstrained IRLS and clips the final iterate onto `bx`.
pub fn irls_euclidean_median_boxed(
    ps: &PointSet,
    bx: &BoxConstraint,
    cfg: &IrlsConfig,
) -> Result<SolverResult> {
    let mut res = irls_euclidean_median(ps, cfg)?;
    if let BoxConstraint::Interval { .. } = bx {
        bx.project_in_place(&mut res.minimizer);
        res.objective = final_cost(ps, &res.minimizer, res.iterations_run)?;
    }
    Ok(res)
}

/// [`irls_euclidean_median`] that hands every iterate to `observe`.
pub fn irls_euclidean_median_with<F>(
    ps: &PointSet,
    cfg: &IrlsConfig,
    mut observe: F,
) -> Result<SolverResult>
where
    F: FnMut(usize, &[f64]),
{
    cfg.validate()?;
    let d = ps.dim();
    let eps = cfg.epsilon;
    let mut x = match &cfg.x_init {
        Some(x0) => {
            ps.check_dim(x0, "x_init")?;
            x0.clone()
        }
        None => weighted_mean(ps),
    };
    if x.iter().any(|v| !v.is_finite()) {
        return Err(Error::usage("x_init must be finite"));
    }

    let mut num = vec![0.0; d];
    let mut trace = Vec::new();
    let mut iterations_run = 0;

    for iter in 1..=cfg.max_iter {
        num.iter_mut().for_each(|s| *s = 0.0);
        let mut den = 0.0;
        let mut prev_surrogate = 0.0;
        for (a, w) in ps.iter() {
            let s = (dist_sq(&x, a) + eps).sqrt();
            prev_surrogate += w * s;
            let beta = w / s;
            den += beta;
            for (acc, ai) in num.iter_mut().zip(a) {
                *acc += beta * ai;
            }
        }
        for (xi, acc) in x.iter_mut().zip(&num) {
            *xi = acc / den;
        }
        if x.iter().any(|v| !v.is_finite()) {
            return Err(Error::Numeric {
                iteration: iter,
                detail: "non-finite IRLS iterate".into(),
            });
        }
        iterations_run = iter;

        let check_tol = cfg.tol > 0.0;
        if cfg.record_trace || check_tol {
            let surrogate = surrogate_cost_unchecked(ps, &x, eps);
            if cfg.record_trace {
                trace.push(TraceRecord {
                    iter,
                    objective: surrogate,
                    primal_residual: None,
                });
            }
            observe(iter, &x);
            if check_tol && (prev_surrogate - surrogate) <= cfg.tol * prev_surrogate {
                break;
            }
        } else {
            observe(iter, &x);
        }
    }

    let objective = final_cost(ps, &x, iterations_run)?;
    Ok(SolverResult {
        minimizer: x,
        objective,
        iterations_run,
        trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::median::{admm_euclidean_median, AdmmConfig};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn single_point_in_one_step() {
        let ps = PointSet::unweighted(vec![vec![4.0, 5.0]]).unwrap();
        let cfg = IrlsConfig {
            max_iter: 1,
            x_init: Some(vec![0.0, 0.0]),
            ..Default::default()
        };
        let res = irls_euclidean_median(&ps, &cfg).unwrap();
        assert_eq!(res.minimizer, vec![4.0, 5.0]);
        assert_eq!(res.iterations_run, 1);
    }

    #[test]
    fn equilateral_triangle() {
        let h = 3f64.sqrt() / 2.0;
        let ps = PointSet::unweighted(vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![0.5, h]]).unwrap();
        let cfg = IrlsConfig {
            max_iter: 500,
            x_init: Some(vec![0.1, 0.7]),
            ..Default::default()
        };
        let res = irls_euclidean_median(&ps, &cfg).unwrap();
        assert!((res.minimizer[0] - 0.5).abs() < 1e-5);
        assert!((res.minimizer[1] - 3f64.sqrt() / 6.0).abs() < 1e-5);
    }

    #[test]
    fn surrogate_trace_is_monotone() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let n = rng.random_range(2..30);
            let d = rng.random_range(1..6);
            let pts: Vec<Vec<f64>> = (0..n)
                .map(|_| (0..d).map(|_| rng.random_range(-3.0..3.0)).collect())
                .collect();
            let w: Vec<f64> = (0..n).map(|_| rng.random_range(0.0..1.0)).collect();
            let ps = PointSet::new(pts, w).unwrap();
            let cfg = IrlsConfig {
                max_iter: 100,
                record_trace: true,
                ..Default::default()
            };
            let res = irls_euclidean_median(&ps, &cfg).unwrap();
            for pair in res.trace.windows(2) {
                assert!(pair[1].objective <= pair[0].objective + 1e-12);
            }
        }
    }

    #[test]
    fn agrees_with_admm_on_random_instance() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let pts: Vec<Vec<f64>> = (0..12)
            .map(|_| vec![rng.random::<f64>(), rng.random::<f64>()])
            .collect();
        let ps = PointSet::unweighted(pts).unwrap();
        let irls = irls_euclidean_median(
            &ps,
            &IrlsConfig {
                max_iter: 200,
                ..Default::default()
            },
        )
        .unwrap();
        let admm = admm_euclidean_median(
            &ps,
            &BoxConstraint::Unconstrained,
            &AdmmConfig {
                mu: 1.0,
                max_iter: 20_000,
                ..Default::default()
            },
        )
        .unwrap();
        assert!((irls.objective - admm.objective).abs() <= 1e-6 * admm.objective);
    }

    #[test]
    fn relative_tolerance_stops() {
        let ps = PointSet::unweighted(vec![vec![0.0], vec![1.0], vec![5.0]]).unwrap();
        let cfg = IrlsConfig {
            max_iter: 10_000,
            tol: 1e-10,
            ..Default::default()
        };
        let res = irls_euclidean_median(&ps, &cfg).unwrap();
        assert!(res.iterations_run < 10_000);
    }

    #[test]
    fn boxed_variant_clips() {
        let ps = PointSet::unweighted(vec![vec![10.0, 10.0], vec![12.0, 10.0]]).unwrap();
        let bx = BoxConstraint::interval(0.0, 5.0).unwrap();
        let res = irls_euclidean_median_boxed(&ps, &bx, &IrlsConfig::default()).unwrap();
        assert_eq!(res.minimizer, vec![5.0, 5.0]);
        assert_eq!(
            res.objective,
            crate::median::em_cost(&ps, &[5.0, 5.0]).unwrap()
        );
    }
}
