//! Weighted Euclidean median: minimize `sum_k w_k * ||x - a_k||_2` over a box
//! (or all of R^d).
//!
//! Two solvers are provided. [`admm_euclidean_median`] works directly on the
//! non-smooth objective by splitting it into one local copy per point; every
//! subproblem is a closed-form projection. [`irls_euclidean_median`] is the
//! reweighted least-squares baseline operating on the smoothed surrogate
//! `sum_k w_k * sqrt(||x - a_k||^2 + eps)`.

mod admm;
mod certificate;
mod cost;
mod irls;
mod oracle;
mod points_file;
mod prox;

pub use admm::{admm_euclidean_median, admm_euclidean_median_with};
pub use certificate::{optimality_residual, COINCIDENCE_TOL};
pub use cost::{em_cost, surrogate_cost, weighted_mean};
pub use irls::{irls_euclidean_median, irls_euclidean_median_boxed, irls_euclidean_median_with};
pub use oracle::brute_force_median_2d;
pub use points_file::{format_points, parse_points, read_points};
pub use prox::{project_ball, project_box, prox_weighted_norm};

use crate::error::{Error, Result};

/// Default ADMM penalty, tuned for intensities on a 0..255 scale.
pub const DEFAULT_MU: f64 = 1e-3;
/// Default smoothing of the IRLS surrogate.
pub const DEFAULT_EPSILON: f64 = 1e-6;

/// `n` weighted points in `d` dimensions, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSet {
    dim: usize,
    coords: Vec<f64>,
    weights: Vec<f64>,
}

impl PointSet {
    pub fn new(points: Vec<Vec<f64>>, weights: Vec<f64>) -> Result<Self> {
        let dim = points.first().map(Vec::len).unwrap_or(0);
        if let Some(k) = points.iter().position(|p| p.len() != dim) {
            return Err(Error::usage(format!(
                "point {k} has {} coordinates, expected {dim}",
                points[k].len()
            )));
        }
        Self::from_flat(dim, points.concat(), weights)
    }

    /// Builds a point set from `n * dim` row-major coordinates.
    pub fn from_flat(dim: usize, coords: Vec<f64>, weights: Vec<f64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::usage("point dimension must be at least 1"));
        }
        if weights.is_empty() {
            return Err(Error::usage("point set must contain at least one point"));
        }
        if coords.len() != dim * weights.len() {
            return Err(Error::usage(format!(
                "{} coordinates do not form {} points of dimension {dim}",
                coords.len(),
                weights.len()
            )));
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::usage("point coordinates must be finite"));
        }
        if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(Error::usage("weights must be finite and nonnegative"));
        }
        if !weights.iter().any(|w| *w > 0.0) {
            return Err(Error::usage("at least one weight must be positive"));
        }
        Ok(PointSet {
            dim,
            coords,
            weights,
        })
    }

    /// Same as [`PointSet::new`] with every weight equal to one.
    pub fn unweighted(points: Vec<Vec<f64>>) -> Result<Self> {
        let n = points.len();
        Self::new(points, vec![1.0; n])
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn point(&self, k: usize) -> &[f64] {
        &self.coords[k * self.dim..(k + 1) * self.dim]
    }

    pub fn weight(&self, k: usize) -> f64 {
        self.weights[k]
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn total_weight(&self) -> f64 {
        self.weights.iter().sum()
    }

    /// Iterates over `(point, weight)` pairs in index order.
    pub fn iter(&self) -> impl Iterator<Item = (&[f64], f64)> + '_ {
        self.coords
            .chunks_exact(self.dim)
            .zip(self.weights.iter().copied())
    }

    pub(crate) fn check_dim(&self, x: &[f64], what: &str) -> Result<()> {
        if x.len() != self.dim {
            return Err(Error::usage(format!(
                "{what} has dimension {}, point set has dimension {}",
                x.len(),
                self.dim
            )));
        }
        Ok(())
    }
}

/// The convex set the median is constrained to: a cube `[lower, upper]^d`
/// or the whole space.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum BoxConstraint {
    #[default]
    Unconstrained,
    Interval {
        lower: f64,
        upper: f64,
    },
}

impl BoxConstraint {
    pub fn interval(lower: f64, upper: f64) -> Result<Self> {
        if lower.is_nan() || upper.is_nan() || lower > upper {
            return Err(Error::usage(format!(
                "invalid box [{lower}, {upper}]: need lower <= upper"
            )));
        }
        Ok(BoxConstraint::Interval { lower, upper })
    }

    /// Projects a single coordinate.
    #[inline]
    pub fn clamp(&self, v: f64) -> f64 {
        match *self {
            BoxConstraint::Unconstrained => v,
            BoxConstraint::Interval { lower, upper } => {
                if v < lower {
                    lower
                } else if v > upper {
                    upper
                } else {
                    v
                }
            }
        }
    }

    pub fn project_in_place(&self, x: &mut [f64]) {
        if let BoxConstraint::Interval { .. } = self {
            for v in x.iter_mut() {
                *v = self.clamp(*v);
            }
        }
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        match *self {
            BoxConstraint::Unconstrained => true,
            BoxConstraint::Interval { lower, upper } => {
                x.iter().all(|v| (lower..=upper).contains(v))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AdmmConfig {
    /// Augmented-Lagrangian penalty.
    pub mu: f64,
    pub max_iter: usize,
    /// Stop once `max_k ||x_k - z|| <= tol_primal`. Zero disables the test.
    pub tol_primal: f64,
    /// Starting consensus point; the weighted mean of the points when `None`.
    pub z_init: Option<Vec<f64>>,
    pub record_trace: bool,
}

impl Default for AdmmConfig {
    fn default() -> Self {
        AdmmConfig {
            mu: DEFAULT_MU,
            max_iter: 100,
            tol_primal: 0.0,
            z_init: None,
            record_trace: false,
        }
    }
}

impl AdmmConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.mu > 0.0 && self.mu.is_finite()) {
            return Err(Error::usage(format!(
                "mu must be positive, got {}",
                self.mu
            )));
        }
        if self.max_iter == 0 {
            return Err(Error::usage("max_iter must be at least 1"));
        }
        if !(self.tol_primal >= 0.0) {
            return Err(Error::usage("tol_primal must be nonnegative"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IrlsConfig {
    /// Smoothing of the surrogate objective.
    pub epsilon: f64,
    pub max_iter: usize,
    /// Stop once the relative surrogate decrease of one step is `<= tol`.
    /// Zero disables the test.
    pub tol: f64,
    /// Starting point; the weighted mean of the points when `None`.
    pub x_init: Option<Vec<f64>>,
    pub record_trace: bool,
}

impl Default for IrlsConfig {
    fn default() -> Self {
        IrlsConfig {
            epsilon: DEFAULT_EPSILON,
            max_iter: 100,
            tol: 0.0,
            x_init: None,
            record_trace: false,
        }
    }
}

impl IrlsConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.epsilon > 0.0 && self.epsilon.is_finite()) {
            return Err(Error::usage(format!(
                "epsilon must be positive, got {}",
                self.epsilon
            )));
        }
        if self.max_iter == 0 {
            return Err(Error::usage("max_iter must be at least 1"));
        }
        if !(self.tol >= 0.0) {
            return Err(Error::usage("tol must be nonnegative"));
        }
        Ok(())
    }
}

/// One row of a solver trace.
///
/// For ADMM `objective` is the weighted Euclidean-median cost of the
/// consensus iterate and `primal_residual` is `max_k ||x_k - z||`. For IRLS
/// `objective` is the smoothed surrogate cost and there is no primal residual.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceRecord {
    pub iter: usize,
    pub objective: f64,
    pub primal_residual: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverResult {
    pub minimizer: Vec<f64>,
    /// Weighted Euclidean-median cost at `minimizer`.
    pub objective: f64,
    pub iterations_run: usize,
    pub trace: Vec<TraceRecord>,
}
