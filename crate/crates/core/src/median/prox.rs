use super::cost::dist_sq;
use super::BoxConstraint;
use crate::error::{Error, Result};

/// Writes `argmin_x lambda*||x - u|| + 0.5*||x - v||^2` into `out`.
///
/// The minimizer is `v` moved toward `u` by `min(lambda, ||v - u||)`; it equals
/// `u` exactly once `||v - u|| <= lambda`, and `v` exactly when `lambda == 0`.
#[inline]
pub(crate) fn prox_into(v: &[f64], u: &[f64], lambda: f64, out: &mut [f64]) {
    let dist = dist_sq(v, u).sqrt();
    if dist <= lambda {
        out.copy_from_slice(u);
    } else {
        let t = lambda / dist;
        for ((o, vi), ui) in out.iter_mut().zip(v).zip(u) {
            *o = vi - t * (vi - ui);
        }
    }
}

/// Closed-form proximal map of `x -> lambda * ||x - u||_2`, evaluated at `v`.
///
/// Obtained from the Moreau decomposition: the prox of the conjugate is the
/// projection of `v - u` onto the ball of radius `lambda`, and the prox itself
/// is `v` minus that projection. When `v == u` the result is `u`.
pub fn prox_weighted_norm(v: &[f64], u: &[f64], lambda: f64) -> Result<Vec<f64>> {
    if v.len() != u.len() {
        return Err(Error::usage(format!(
            "prox arguments differ in dimension ({} vs {})",
            v.len(),
            u.len()
        )));
    }
    if !(lambda >= 0.0) {
        return Err(Error::usage(format!(
            "lambda must be nonnegative, got {lambda}"
        )));
    }
    let mut out = vec![0.0; v.len()];
    prox_into(v, u, lambda, &mut out);
    Ok(out)
}

/// Euclidean projection of `x` onto the closed ball of the given radius
/// centred at the origin.
pub fn project_ball(x: &[f64], radius: f64) -> Vec<f64> {
    let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    if norm <= radius {
        x.to_vec()
    } else {
        let t = radius / norm;
        x.iter().map(|v| v * t).collect()
    }
}

/// Coordinate-wise clamp onto the box; identity when unconstrained.
pub fn project_box(x: &[f64], bx: &BoxConstraint) -> Vec<f64> {
    let mut out = x.to_vec();
    bx.project_in_place(&mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn prox_objective(x: &[f64], v: &[f64], u: &[f64], lambda: f64) -> f64 {
        lambda * dist_sq(x, u).sqrt() + 0.5 * dist_sq(x, v)
    }

    #[test]
    fn coincident_v_and_u() {
        assert_eq!(
            prox_weighted_norm(&[1.0, 2.0], &[1.0, 2.0], 0.5).unwrap(),
            vec![1.0, 2.0]
        );
    }

    #[test]
    fn infinite_lambda_returns_u() {
        assert_eq!(
            prox_weighted_norm(&[3.0, 4.0], &[0.0, 0.0], f64::INFINITY).unwrap(),
            vec![0.0, 0.0]
        );
        assert_eq!(
            prox_weighted_norm(&[3.0, 4.0], &[0.0, 0.0], 5.0).unwrap(),
            vec![0.0, 0.0]
        );
    }

    #[test]
    fn unit_lambda_step() {
        let v = [3.0, 4.0];
        let u = [0.0, 0.0];
        let x = prox_weighted_norm(&v, &u, 1.0).unwrap();
        assert!((x[0] - 2.4).abs() < 1e-15 && (x[1] - 3.2).abs() < 1e-15);

        // Line-search oracle: the minimizer lies on the segment [u, v].
        let steps = 1_000_000;
        let (mut best_t, mut best) = (0.0, f64::INFINITY);
        for i in 0..=steps {
            let t = i as f64 / steps as f64;
            let p = [v[0] * t, v[1] * t];
            let f = prox_objective(&p, &v, &u, 1.0);
            if f < best {
                best = f;
                best_t = t;
            }
        }
        assert!((best_t * 3.0 - 2.4).abs() < 1e-5 && (best_t * 4.0 - 3.2).abs() < 1e-5);
    }

    #[test]
    fn dimension_and_sign_errors() {
        assert!(prox_weighted_norm(&[1.0], &[1.0, 2.0], 1.0).is_err());
        assert!(prox_weighted_norm(&[1.0], &[1.0], -1.0).is_err());
    }

    #[test]
    fn box_projection_three_cases() {
        let b = BoxConstraint::interval(0.0, 255.0).unwrap();
        assert_eq!(
            project_box(&[-5.0, 100.0, 300.0], &b),
            vec![0.0, 100.0, 255.0]
        );
        assert_eq!(project_box(&[1.0, 2.0], &b), vec![1.0, 2.0]);
        assert_eq!(
            project_box(&[-1e9], &BoxConstraint::Unconstrained),
            vec![-1e9]
        );
    }

    #[test]
    fn box_projection_matches_grid_oracle() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let l = rng.random_range(-5.0..0.0);
            let u = rng.random_range(0.0..5.0);
            let b = BoxConstraint::interval(l, u).unwrap();
            let x: Vec<f64> = (0..4).map(|_| rng.random_range(-8.0..8.0)).collect();
            let p = project_box(&x, &b);
            // The squared distance is separable, so a per-coordinate grid
            // search over [l, u] finds the projection.
            let grid = 20_000;
            for (xi, pi) in x.iter().zip(&p) {
                let mut best = (f64::INFINITY, 0.0);
                for g in 0..=grid {
                    let c = l + (u - l) * g as f64 / grid as f64;
                    let e = (c - xi).powi(2);
                    if e < best.0 {
                        best = (e, c);
                    }
                }
                assert!((best.1 - pi).abs() <= (u - l) / grid as f64);
            }
        }
    }

    fn vec_pair(max_d: usize) -> impl Strategy<Value = (Vec<f64>, Vec<f64>)> {
        (1..=max_d).prop_flat_map(|d| {
            (
                prop::collection::vec(-10.0f64..10.0, d),
                prop::collection::vec(-10.0f64..10.0, d),
            )
        })
    }

    proptest! {
        #[test]
        fn moreau_identity((v, u) in vec_pair(16), lambda in 0.0f64..20.0) {
            let p = prox_weighted_norm(&v, &u, lambda).unwrap();
            let diff: Vec<f64> = v.iter().zip(&u).map(|(a, b)| a - b).collect();
            let q = project_ball(&diff, lambda);
            for i in 0..v.len() {
                prop_assert!((p[i] + q[i] - v[i]).abs() <= 1e-12);
            }
        }

        #[test]
        fn prox_endpoints((v, u) in vec_pair(8), scale in 1.0f64..3.0) {
            prop_assert_eq!(prox_weighted_norm(&v, &u, 0.0).unwrap(), v.clone());
            let r = dist_sq(&v, &u).sqrt();
            prop_assert_eq!(prox_weighted_norm(&v, &u, r * scale).unwrap(), u.clone());
        }

        #[test]
        fn prox_beats_perturbations(
            (v, u) in vec_pair(8),
            lambda in 0.0f64..10.0,
            dirs in prop::collection::vec(prop::collection::vec(-1.0f64..1.0, 8), 50),
        ) {
            let p = prox_weighted_norm(&v, &u, lambda).unwrap();
            let f = prox_objective(&p, &v, &u, lambda);
            for (j, dir) in dirs.iter().enumerate() {
                let step = 10f64.powi(-(j as i32 % 6));
                let q: Vec<f64> = p.iter().zip(dir).map(|(a, b)| a + step * b).collect();
                prop_assert!(f <= prox_objective(&q, &v, &u, lambda) + 1e-12);
            }
        }
    }
}
