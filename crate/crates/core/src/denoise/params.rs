use crate::error::{Error, Result};
use crate::median::{BoxConstraint, DEFAULT_EPSILON, DEFAULT_MU};

/// How each patch is estimated from its neighbours.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Solver {
    /// Euclidean median by ADMM.
    Admm,
    /// Euclidean median by IRLS on the smoothed surrogate, clipped to range.
    Irls,
    /// Plain Non-Local Means, no median.
    Nlm,
}

/// Starting patch for the per-pixel median solve.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InitMode {
    NoisyPatch,
    /// Similarity-weighted mean of the neighbour patches, clipped to range.
    NlmPatch,
}

/// Noise level above which [`NlemParams::for_sigma`] seeds from the NLM patch.
pub const NLM_INIT_SIGMA_THRESHOLD: f64 = 60.0;
pub const DEFAULT_SEARCH: usize = 21;
pub const DEFAULT_PATCH: usize = 7;
pub const DEFAULT_H_MULT: f64 = 10.0;
pub const DEFAULT_SOLVER_ITERS: usize = 4;

/// `h = h_mult * sigma`, with sigma floored at one intensity level so that
/// noiseless inputs still get a usable smoothing parameter.
pub fn smoothing_for(sigma: f64, h_mult: f64) -> f64 {
    h_mult * sigma.max(1.0)
}

#[derive(Debug, Clone, PartialEq)]
pub struct NlemParams {
    /// Side of the square search window `S`.
    pub search: usize,
    /// Side of the square patch `k`.
    pub patch: usize,
    /// Weight smoothing `h`.
    pub h: f64,
    pub sigma: f64,
    pub solver: Solver,
    pub solver_iters: usize,
    pub mu: f64,
    pub epsilon: f64,
    pub init: InitMode,
    /// Dynamic range of the clean image.
    pub range: BoxConstraint,
}

impl NlemParams {
    /// Standard settings for noise level `sigma`: `S = 21`, `k = 7`,
    /// `h = 10 sigma`, four ADMM iterations, range `[0, 255]`, and noisy-patch
    /// seeding unless `sigma > 60`.
    pub fn for_sigma(sigma: f64) -> Self {
        NlemParams {
            search: DEFAULT_SEARCH,
            patch: DEFAULT_PATCH,
            h: smoothing_for(sigma, DEFAULT_H_MULT),
            sigma,
            solver: Solver::Admm,
            solver_iters: DEFAULT_SOLVER_ITERS,
            mu: DEFAULT_MU,
            epsilon: DEFAULT_EPSILON,
            init: default_init(sigma),
            range: BoxConstraint::Interval {
                lower: 0.0,
                upper: 255.0,
            },
        }
    }

    pub fn with_solver(mut self, solver: Solver) -> Self {
        self.solver = solver;
        self
    }

    pub fn validate(&self) -> Result<()> {
        for (v, what) in [(self.search, "search window"), (self.patch, "patch size")] {
            if v == 0 || v % 2 == 0 {
                return Err(Error::usage(format!(
                    "{what} must be odd and positive, got {v}"
                )));
            }
        }
        if self.patch > self.search {
            return Err(Error::usage(format!(
                "patch size {} exceeds search window {}",
                self.patch, self.search
            )));
        }
        if !(self.h > 0.0 && self.h.is_finite()) {
            return Err(Error::usage(format!("h must be positive, got {}", self.h)));
        }
        if !(self.sigma >= 0.0 && self.sigma.is_finite()) {
            return Err(Error::usage(format!(
                "sigma must be nonnegative, got {}",
                self.sigma
            )));
        }
        if self.solver_iters == 0 {
            return Err(Error::usage("solver iterations must be at least 1"));
        }
        if !(self.mu > 0.0 && self.mu.is_finite()) {
            return Err(Error::usage(format!(
                "mu must be positive, got {}",
                self.mu
            )));
        }
        if !(self.epsilon > 0.0 && self.epsilon.is_finite()) {
            return Err(Error::usage(format!(
                "epsilon must be positive, got {}",
                self.epsilon
            )));
        }
        Ok(())
    }
}

pub fn default_init(sigma: f64) -> InitMode {
    if sigma > NLM_INIT_SIGMA_THRESHOLD {
        InitMode::NlmPatch
    } else {
        InitMode::NoisyPatch
    }
}
