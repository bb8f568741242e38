use std::path::{Path, PathBuf};

use clap::Args;
use nlem::denoise::{
    InitMode, Solver, DEFAULT_H_MULT, DEFAULT_PATCH, DEFAULT_SEARCH, DEFAULT_SOLVER_ITERS,
};
use nlem::experiment::ParamTemplate;
use nlem::median::{BoxConstraint, DEFAULT_EPSILON, DEFAULT_MU};
use nlem::Error;

/// Parses `l:u`.
pub fn parse_range(s: &str) -> Result<BoxConstraint, String> {
    let (l, u) = s
        .split_once(':')
        .ok_or_else(|| format!("expected l:u, got {s:?}"))?;
    let l: f64 = l
        .trim()
        .parse()
        .map_err(|e| format!("lower bound {l:?}: {e}"))?;
    let u: f64 = u
        .trim()
        .parse()
        .map_err(|e| format!("upper bound {u:?}: {e}"))?;
    BoxConstraint::interval(l, u).map_err(|e| e.to_string())
}

/// Denoising model flags shared by `denoise`, `trace` and `bench`.
#[derive(Args, Debug, Clone)]
pub struct ModelArgs {
    /// Search window side S (odd).
    #[arg(long, default_value_t = DEFAULT_SEARCH, value_name = "S")]
    pub search: usize,
    /// Patch side k (odd).
    #[arg(long, default_value_t = DEFAULT_PATCH, value_name = "K")]
    pub patch: usize,
    /// Smoothing parameter as a multiple of sigma.
    #[arg(long, default_value_t = DEFAULT_H_MULT)]
    pub h_mult: f64,
    /// Solver iterations per pixel.
    #[arg(long, default_value_t = DEFAULT_SOLVER_ITERS)]
    pub iters: usize,
    /// ADMM penalty.
    #[arg(long, default_value_t = DEFAULT_MU)]
    pub mu: f64,
    /// IRLS smoothing.
    #[arg(long, default_value_t = DEFAULT_EPSILON)]
    pub eps: f64,
    /// Starting patch; default is `noisy` up to sigma 60 and `nlm` above.
    #[arg(long)]
    pub init: Option<InitMode>,
    /// Intensity range the output patches are constrained to.
    #[arg(long, default_value = "0:255", value_parser = parse_range, value_name = "L:U")]
    pub range: BoxConstraint,
}

impl ModelArgs {
    pub fn template(&self, solver: Solver) -> ParamTemplate {
        ParamTemplate {
            search: self.search,
            patch: self.patch,
            h_mult: self.h_mult,
            solver,
            iters: self.iters,
            mu: self.mu,
            epsilon: self.eps,
            init: self.init,
            range: self.range,
        }
    }
}

pub fn check_sigma(sigma: f64) -> nlem::Result<()> {
    if !(sigma.is_finite() && sigma >= 0.0) {
        return Err(Error::Usage(format!(
            "--sigma must be finite and non-negative, got {sigma}"
        )));
    }
    Ok(())
}

/// `dir/stem{suffix}.ext` for `path = dir/stem.ext`.
pub fn with_suffix(path: &Path, suffix: &str) -> PathBuf {
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let name = match path.extension() {
        Some(ext) => format!("{stem}{suffix}.{}", ext.to_string_lossy()),
        None => format!("{stem}{suffix}"),
    };
    path.with_file_name(name)
}

/// Image label used in tables: the file stem.
pub fn image_label(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}
