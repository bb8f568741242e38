use super::PointSet;
use crate::error::{Error, Result};

#[inline]
pub(crate) fn dist_sq(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

pub(crate) fn em_cost_unchecked(ps: &PointSet, x: &[f64]) -> f64 {
    ps.iter().map(|(a, w)| w * dist_sq(x, a).sqrt()).sum()
}

/// `sum_k w_k * ||x - a_k||_2`.
pub fn em_cost(ps: &PointSet, x: &[f64]) -> Result<f64> {
    ps.check_dim(x, "x")?;
    Ok(em_cost_unchecked(ps, x))
}

pub(crate) fn surrogate_cost_unchecked(ps: &PointSet, x: &[f64], epsilon: f64) -> f64 {
    ps.iter()
        .map(|(a, w)| w * (dist_sq(x, a) + epsilon).sqrt())
        .sum()
}

/// `sum_k w_k * sqrt(||x - a_k||^2 + epsilon)`, the smooth surrogate
/// minimized by IRLS.
pub fn surrogate_cost(ps: &PointSet, x: &[f64], epsilon: f64) -> Result<f64> {
    if !(epsilon > 0.0) {
        return Err(Error::usage(format!(
            "epsilon must be positive, got {epsilon}"
        )));
    }
    ps.check_dim(x, "x")?;
    Ok(surrogate_cost_unchecked(ps, x, epsilon))
}

/// `sum_k w_k a_k / sum_k w_k`.
pub fn weighted_mean(ps: &PointSet) -> Vec<f64> {
    // Normalizing first keeps every partial sum inside the data's range.
    let total = ps.total_weight();
    let mut acc = vec![0.0; ps.dim()];
    for (a, w) in ps.iter() {
        let share = w / total;
        for (s, v) in acc.iter_mut().zip(a) {
            *s += share * v;
        }
    }
    acc
}

/// Final cost at `z`, or a numeric error if it overflowed.
pub(crate) fn final_cost(ps: &PointSet, z: &[f64], iteration: usize) -> Result<f64> {
    let cost = em_cost_unchecked(ps, z);
    if !cost.is_finite() {
        return Err(Error::Numeric {
            iteration,
            detail: format!("objective overflowed ({cost})"),
        });
    }
    Ok(cost)
}
