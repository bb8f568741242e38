use super::cost::dist_sq;
use super::{BoxConstraint, PointSet};

/// Points closer than this to `z` are treated as coinciding with it.
pub const COINCIDENCE_TOL: f64 = 1e-12;

/// First-order optimality gap of `z` for the box-constrained median problem.
///
/// With `g` the gradient of the terms whose point is away from `z` and `w0`
/// the total weight of points sitting on `z`, `z` is optimal iff `-g` lies in
/// `w0 * Ball + N_C(z)`. The returned value is the distance from `-g` to that
/// set: `g` with the components of active box coordinates that point out of
/// the box removed, minus `w0`, floored at zero.
pub fn optimality_residual(ps: &PointSet, bx: &BoxConstraint, z: &[f64]) -> f64 {
    let mut g = vec![0.0; z.len()];
    let mut w0 = 0.0;
    for (a, w) in ps.iter() {
        let dist = dist_sq(z, a).sqrt();
        if dist <= COINCIDENCE_TOL {
            w0 += w;
        } else {
            for ((gi, zi), ai) in g.iter_mut().zip(z).zip(a) {
                *gi += w * (zi - ai) / dist;
            }
        }
    }
    if let BoxConstraint::Interval { lower, upper } = *bx {
        let scale = COINCIDENCE_TOL * lower.abs().max(upper.abs()).max(1.0);
        for (gi, zi) in g.iter_mut().zip(z) {
            let at_lower = (zi - lower).abs() <= scale;
            let at_upper = (upper - zi).abs() <= scale;
            // A descent direction -g leaving the box is blocked by the bound.
            if (at_lower && *gi > 0.0) || (at_upper && *gi < 0.0) {
                *gi = 0.0;
            }
        }
    }
    let norm = g.iter().map(|v| v * v).sum::<f64>().sqrt();
    (norm - w0).max(0.0)
}
