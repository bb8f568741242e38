//! Patch-based denoising: noise synthesis, patch extraction, Non-Local Means
//! and Non-Local Euclidean Medians.
//!
//! Search windows are clipped at the image border while patches are read with
//! mirror reflection, so every median candidate is a real pixel neighbourhood.
//! Per-pixel work runs on the rayon pool; results are independent of the
//! number of threads.

mod image;
mod metrics;
mod nlem;
mod nlm;
mod noise;
mod parallel;
mod params;
mod patch;

pub use image::Image;
pub use metrics::{psnr, PSNR_PEAK};
pub use nlem::{
    convergence_survey, initial_patch, nlem_denoise, nlem_denoise_iterates, solve_stack,
    solve_stack_with, stride_pixels, PixelConvergence,
};
pub use nlm::nlm_denoise;
pub use noise::add_gaussian_noise;
pub use params::{
    default_init, smoothing_for, InitMode, NlemParams, Solver, DEFAULT_H_MULT, DEFAULT_PATCH,
    DEFAULT_SEARCH, DEFAULT_SOLVER_ITERS, NLM_INIT_SIGMA_THRESHOLD,
};
pub use patch::{patch_at, patch_weights, PatchSource, PatchStack};
