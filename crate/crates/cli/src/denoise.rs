use std::path::PathBuf;

use clap::Args;
use nlem::denoise::Solver;
use nlem::experiment::{mean_std, run_realization};
use nlem::imgio::{read_pgm, write_pgm, PgmMode};
use nlem::Error;
use serde::Serialize;

use crate::args::{check_sigma, with_suffix, ModelArgs};
use crate::output::emit;

#[derive(Args, Debug)]
pub struct DenoiseArgs {
    /// Clean PGM image.
    pub image: PathBuf,
    #[arg(long)]
    pub sigma: f64,
    #[arg(long, default_value = "admm")]
    pub solver: Solver,
    /// Seed of the first noise realization; realization r uses seed + r.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Number of noise realizations.
    #[arg(long, default_value_t = 1)]
    pub repeat: usize,
    /// Denoised PGM. With --repeat > 1 each realization gets a `_s<seed>` suffix.
    #[arg(long, value_name = "PATH")]
    pub out: PathBuf,
    /// Noisy PGM; defaults to the --out path with a `_noisy` suffix.
    #[arg(long, value_name = "PATH")]
    pub noisy_out: Option<PathBuf>,
    #[command(flatten)]
    pub model: ModelArgs,
}

#[derive(Serialize)]
struct RealizationLine<'a> {
    seed: u64,
    psnr_noisy: f64,
    psnr_denoised: f64,
    noisy: &'a str,
    denoised: &'a str,
}

#[derive(Serialize)]
struct MeanLine {
    repeats: usize,
    mean_psnr_noisy: f64,
    mean_psnr_denoised: f64,
    std_psnr_denoised: f64,
}

pub fn run(a: DenoiseArgs) -> anyhow::Result<()> {
    check_sigma(a.sigma)?;
    if a.repeat == 0 {
        return Err(Error::Usage("--repeat must be at least 1".into()).into());
    }
    let template = a.model.template(a.solver);
    template.validate(a.sigma)?;
    let params = template.params(a.sigma);

    let clean = read_pgm(&a.image)?;
    let noisy_base = a
        .noisy_out
        .clone()
        .unwrap_or_else(|| with_suffix(&a.out, "_noisy"));
    let mut noisy_psnrs = Vec::with_capacity(a.repeat);
    let mut denoised_psnrs = Vec::with_capacity(a.repeat);
    for r in 0..a.repeat as u64 {
        let seed = a.seed + r;
        let real = run_realization(&clean, &params, seed)?;
        let (noisy_path, out_path) = if a.repeat > 1 {
            let suffix = format!("_s{seed}");
            (
                with_suffix(&noisy_base, &suffix),
                with_suffix(&a.out, &suffix),
            )
        } else {
            (noisy_base.clone(), a.out.clone())
        };
        write_pgm(&real.noisy, &noisy_path, PgmMode::P5)?;
        write_pgm(&real.denoised, &out_path, PgmMode::P5)?;
        emit(&RealizationLine {
            seed,
            psnr_noisy: real.psnr_noisy,
            psnr_denoised: real.psnr_denoised,
            noisy: &noisy_path.to_string_lossy(),
            denoised: &out_path.to_string_lossy(),
        })?;
        noisy_psnrs.push(real.psnr_noisy);
        denoised_psnrs.push(real.psnr_denoised);
    }
    if a.repeat > 1 {
        let (mean_denoised, std_denoised) = mean_std(&denoised_psnrs);
        emit(&MeanLine {
            repeats: a.repeat,
            mean_psnr_noisy: mean_std(&noisy_psnrs).0,
            mean_psnr_denoised: mean_denoised,
            std_psnr_denoised: std_denoised,
        })?;
    }
    Ok(())
}
