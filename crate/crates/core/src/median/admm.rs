use super::cost::{dist_sq, em_cost_unchecked, final_cost, weighted_mean};
use super::prox::prox_into;
use super::{AdmmConfig, BoxConstraint, PointSet, SolverResult, TraceRecord};
use crate::error::{Error, Result};

/// Box-constrained weighted Euclidean median by ADMM on the split problem
/// `min iota_C(z) + sum_k w_k ||x_k - a_k||  s.t.  x_k = z`.
///
/// Each sweep updates every local copy through the closed-form prox, projects
/// the multiplier-corrected average onto the box to get the consensus `z`,
/// then takes a dual-ascent step on every multiplier. Multipliers start at
/// zero.
pub fn admm_euclidean_median(
    ps: &PointSet,
    bx: &BoxConstraint,
    cfg: &AdmmConfig,
) -> Result<SolverResult> {
    admm_euclidean_median_with(ps, bx, cfg, |_, _| {})
}

/// [`admm_euclidean_median`] that hands the consensus iterate to `observe`
/// after every sweep (1-based iteration index).
pub fn admm_euclidean_median_with<F>(
    ps: &PointSet,
    bx: &BoxConstraint,
    cfg: &AdmmConfig,
    mut observe: F,
) -> Result<SolverResult>
where
    F: FnMut(usize, &[f64]),
{
    cfg.validate()?;
    let d = ps.dim();
    let n = ps.len();
    let mut z = match &cfg.z_init {
        Some(z0) => {
            ps.check_dim(z0, "z_init")?;
            z0.clone()
        }
        None => weighted_mean(ps),
    };
    if z.iter().any(|v| !v.is_finite()) {
        return Err(Error::usage("z_init must be finite"));
    }

    let mu = cfg.mu;
    let inv_mu = 1.0 / mu;
    let inv_n = 1.0 / n as f64;
    let mut y = vec![0.0; n * d];
    let mut x = vec![0.0; n * d];
    let mut v = vec![0.0; d];
    let mut r = vec![0.0; d];
    let mut trace = Vec::new();
    let mut iterations_run = 0;

    for iter in 1..=cfg.max_iter {
        r.iter_mut().for_each(|s| *s = 0.0);
        for k in 0..n {
            let yk = &y[k * d..(k + 1) * d];
            for ((vi, zi), yi) in v.iter_mut().zip(&z).zip(yk) {
                *vi = zi - inv_mu * yi;
            }
            let xk = &mut x[k * d..(k + 1) * d];
            prox_into(&v, ps.point(k), ps.weight(k) * inv_mu, xk);
            for ((ri, xi), yi) in r.iter_mut().zip(xk.iter()).zip(yk) {
                *ri += inv_n * (xi + inv_mu * yi);
            }
        }
        for (zi, ri) in z.iter_mut().zip(&r) {
            *zi = bx.clamp(*ri);
        }
        if z.iter().any(|v| !v.is_finite()) {
            return Err(Error::Numeric {
                iteration: iter,
                detail: "non-finite consensus iterate".into(),
            });
        }

        let mut residual: f64 = 0.0;
        for k in 0..n {
            let xk = &x[k * d..(k + 1) * d];
            let yk = &mut y[k * d..(k + 1) * d];
            for ((yi, xi), zi) in yk.iter_mut().zip(xk).zip(&z) {
                *yi += mu * (xi - zi);
            }
            residual = residual.max(dist_sq(xk, &z));
        }
        let residual = residual.sqrt();
        iterations_run = iter;

        if cfg.record_trace {
            trace.push(TraceRecord {
                iter,
                objective: em_cost_unchecked(ps, &z),
                primal_residual: Some(residual),
            });
        }
        observe(iter, &z);
        if cfg.tol_primal > 0.0 && residual <= cfg.tol_primal {
            break;
        }
    }

    let objective = final_cost(ps, &z, iterations_run)?;
    Ok(SolverResult {
        minimizer: z,
        objective,
        iterations_run,
        trace,
    })
}
