use super::cost::em_cost_unchecked;
use super::{BoxConstraint, PointSet};
use crate::error::{Error, Result};

/// Grid-search minimizer for 2-D instances, used as a test oracle.
///
/// Evaluates the cost on a `resolution x resolution` grid over the points'
/// bounding box clamped into `bx` (the constrained minimizer always lies
/// there), then twice refines a grid of the same resolution over the cells
/// adjacent to the best node.
pub fn brute_force_median_2d(
    ps: &PointSet,
    bx: &BoxConstraint,
    resolution: usize,
) -> Result<(Vec<f64>, f64)> {
    if ps.dim() != 2 {
        return Err(Error::usage(format!(
            "grid oracle needs 2-D points, got dimension {}",
            ps.dim()
        )));
    }
    if resolution < 2 {
        return Err(Error::usage("grid resolution must be at least 2"));
    }
    let mut lo = [f64::INFINITY; 2];
    let mut hi = [f64::NEG_INFINITY; 2];
    for (a, _) in ps.iter() {
        for i in 0..2 {
            lo[i] = lo[i].min(a[i]);
            hi[i] = hi[i].max(a[i]);
        }
    }
    for i in 0..2 {
        lo[i] = bx.clamp(lo[i]);
        hi[i] = bx.clamp(hi[i]);
    }
    let region = (lo, hi);

    let mut best = (vec![lo[0], lo[1]], f64::INFINITY);
    for _pass in 0..3 {
        let step = [
            (hi[0] - lo[0]) / (resolution - 1) as f64,
            (hi[1] - lo[1]) / (resolution - 1) as f64,
        ];
        for i in 0..resolution {
            let x = lo[0] + step[0] * i as f64;
            for j in 0..resolution {
                let p = [x, lo[1] + step[1] * j as f64];
                let c = em_cost_unchecked(ps, &p);
                if c < best.1 {
                    best = (p.to_vec(), c);
                }
            }
        }
        for i in 0..2 {
            lo[i] = (best.0[i] - step[i]).max(region.0[i]);
            hi[i] = (best.0[i] + step[i]).min(region.1[i]);
        }
    }
    Ok(best)
}
