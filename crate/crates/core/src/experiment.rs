//! Experiment protocol shared by the CLI and the acceptance tests: parameter
//! templates keyed by noise level, single noise/denoise realizations, and
//! multi-seed benchmark tables.

use std::fmt;
use std::str::FromStr;

use crate::denoise::{
    add_gaussian_noise, default_init, nlem_denoise, psnr, smoothing_for, Image, InitMode,
    NlemParams, Solver, DEFAULT_H_MULT, DEFAULT_PATCH, DEFAULT_SEARCH, DEFAULT_SOLVER_ITERS,
};
use crate::error::{Error, Result};
use crate::imgio::BenchRow;
use crate::median::{BoxConstraint, DEFAULT_EPSILON, DEFAULT_MU};

impl Solver {
    pub fn name(self) -> &'static str {
        match self {
            Solver::Admm => "admm",
            Solver::Irls => "irls",
            Solver::Nlm => "nlm",
        }
    }
}

impl fmt::Display for Solver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Solver {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "admm" => Ok(Solver::Admm),
            "irls" => Ok(Solver::Irls),
            "nlm" => Ok(Solver::Nlm),
            other => Err(Error::Usage(format!(
                "unknown solver {other:?} (admm, irls, nlm)"
            ))),
        }
    }
}

impl FromStr for InitMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "noisy" => Ok(InitMode::NoisyPatch),
            "nlm" => Ok(InitMode::NlmPatch),
            other => Err(Error::Usage(format!(
                "unknown init mode {other:?} (noisy, nlm)"
            ))),
        }
    }
}

/// Denoising settings with `h` expressed relative to the noise level.
#[derive(Debug, Clone, PartialEq)]
pub struct ParamTemplate {
    pub search: usize,
    pub patch: usize,
    pub h_mult: f64,
    pub solver: Solver,
    pub iters: usize,
    pub mu: f64,
    pub epsilon: f64,
    /// Fixed initialization; chosen from sigma when `None`.
    pub init: Option<InitMode>,
    pub range: BoxConstraint,
}

impl Default for ParamTemplate {
    fn default() -> Self {
        ParamTemplate {
            search: DEFAULT_SEARCH,
            patch: DEFAULT_PATCH,
            h_mult: DEFAULT_H_MULT,
            solver: Solver::Admm,
            iters: DEFAULT_SOLVER_ITERS,
            mu: DEFAULT_MU,
            epsilon: DEFAULT_EPSILON,
            init: None,
            range: BoxConstraint::Interval {
                lower: 0.0,
                upper: 255.0,
            },
        }
    }
}

impl ParamTemplate {
    pub fn params(&self, sigma: f64) -> NlemParams {
        NlemParams {
            search: self.search,
            patch: self.patch,
            h: smoothing_for(sigma, self.h_mult),
            sigma,
            solver: self.solver,
            solver_iters: self.iters,
            mu: self.mu,
            epsilon: self.epsilon,
            init: self.init.unwrap_or_else(|| default_init(sigma)),
            range: self.range,
        }
    }

    pub fn validate(&self, sigma: f64) -> Result<()> {
        if !(self.h_mult > 0.0) {
            return Err(Error::Usage(format!(
                "h multiplier must be positive, got {}",
                self.h_mult
            )));
        }
        self.params(sigma).validate()
    }
}

/// One noise draw and its denoised estimate.
#[derive(Debug, Clone, PartialEq)]
pub struct Realization {
    pub seed: u64,
    pub noisy: Image,
    pub denoised: Image,
    pub psnr_noisy: f64,
    pub psnr_denoised: f64,
}

pub fn run_realization(clean: &Image, params: &NlemParams, seed: u64) -> Result<Realization> {
    params.validate()?;
    let noisy = add_gaussian_noise(clean, params.sigma, seed)?;
    let denoised = nlem_denoise(&noisy, params)?;
    Ok(Realization {
        seed,
        psnr_noisy: psnr(clean, &noisy)?,
        psnr_denoised: psnr(clean, &denoised)?,
        noisy,
        denoised,
    })
}

/// Sample mean and standard deviation (zero for a single value).
pub fn mean_std(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchPlan {
    pub sigmas: Vec<f64>,
    pub methods: Vec<Solver>,
    pub repeats: usize,
    pub seed_base: u64,
    pub template: ParamTemplate,
}

impl BenchPlan {
    pub fn validate(&self) -> Result<()> {
        if self.sigmas.is_empty() || self.methods.is_empty() {
            return Err(Error::Usage(
                "bench needs at least one sigma and one method".into(),
            ));
        }
        if self.repeats == 0 {
            return Err(Error::Usage("repeat count must be at least 1".into()));
        }
        for &sigma in &self.sigmas {
            for &solver in &self.methods {
                ParamTemplate {
                    solver,
                    ..self.template.clone()
                }
                .validate(sigma)?;
            }
        }
        Ok(())
    }
}

/// Mean PSNR table over `repeats` noise realizations per (image, sigma,
/// method) cell; realization `r` uses seed `seed_base + r`. Rows come out in
/// image, sigma, method order.
pub fn run_bench(images: &[(String, Image)], plan: &BenchPlan) -> Result<Vec<BenchRow>> {
    plan.validate()?;
    let mut rows = Vec::with_capacity(images.len() * plan.sigmas.len() * plan.methods.len());
    for (name, clean) in images {
        for &sigma in &plan.sigmas {
            for &solver in &plan.methods {
                let params = ParamTemplate {
                    solver,
                    ..plan.template.clone()
                }
                .params(sigma);
                let psnrs = (0..plan.repeats as u64)
                    .map(|r| Ok(run_realization(clean, &params, plan.seed_base + r)?.psnr_denoised))
                    .collect::<Result<Vec<f64>>>()?;
                let (mean_psnr, std_psnr) = mean_std(&psnrs);
                rows.push(BenchRow {
                    image: name.clone(),
                    sigma,
                    method: solver.name().to_string(),
                    mean_psnr,
                    std_psnr,
                    repeats: plan.repeats,
                });
            }
        }
    }
    Ok(rows)
}
