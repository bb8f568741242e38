use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Subcommand};
use nlem::denoise::{
    add_gaussian_noise, convergence_survey, nlem_denoise_iterates, psnr, solve_stack_with,
    stride_pixels, Image, NlemParams, PatchSource, PatchStack, Solver,
};
use nlem::imgio::{read_pgm, write_psnr_trace_csv, write_trace_csv};
use nlem::Error;
use serde::Serialize;

use crate::args::{check_sigma, ModelArgs};
use crate::output::emit;

#[derive(Args, Debug)]
pub struct TraceArgs {
    #[command(subcommand)]
    pub mode: Mode,
}

/// Flags common to every trace mode.
#[derive(Args, Debug)]
pub struct Common {
    /// Clean PGM image.
    pub image: PathBuf,
    #[arg(long)]
    pub sigma: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// CSV output.
    #[arg(long, value_name = "PATH")]
    pub out: PathBuf,
    #[command(flatten)]
    pub model: ModelArgs,
}

#[derive(Subcommand, Debug)]
pub enum Mode {
    /// Objective after each solver iteration at one pixel.
    Pixel {
        #[arg(long)]
        row: usize,
        #[arg(long)]
        col: usize,
        #[arg(long, default_value = "admm")]
        solver: Solver,
        #[command(flatten)]
        common: Common,
    },
    /// PSNR of the full denoised image after 1..=iters iterations.
    Psnr {
        #[arg(long, default_value = "admm")]
        solver: Solver,
        #[command(flatten)]
        common: Common,
    },
    /// ADMM objective histories on a pixel grid against a long IRLS run.
    Survey {
        /// Grid spacing in both axes.
        #[arg(long, default_value_t = 16)]
        stride: usize,
        /// IRLS iterations for the reference optimum.
        #[arg(long, default_value_t = 200)]
        reference_iters: usize,
        /// Relative gap to the reference that counts as converged.
        #[arg(long, default_value_t = 1e-3)]
        tol: f64,
        #[command(flatten)]
        common: Common,
    },
}

fn prepare(c: &Common, solver: Solver) -> anyhow::Result<(NlemParams, Image, Image)> {
    check_sigma(c.sigma)?;
    let template = c.model.template(solver);
    template.validate(c.sigma)?;
    if c.model.iters == 0 {
        return Err(Error::Usage("--iters must be at least 1".into()).into());
    }
    let params = template.params(c.sigma);
    let clean = read_pgm(&c.image)?;
    let noisy = add_gaussian_noise(&clean, c.sigma, c.seed)?;
    Ok((params, clean, noisy))
}

#[derive(Serialize)]
struct PixelLine<'a> {
    row: usize,
    col: usize,
    solver: &'a str,
    iterations: usize,
    final_objective: f64,
}

#[derive(Serialize)]
struct PsnrLine<'a> {
    solver: &'a str,
    iterations: usize,
    psnr_noisy: f64,
    final_psnr: f64,
}

#[derive(Serialize)]
struct SurveyLine {
    pixels: usize,
    iterations: usize,
    tol: f64,
    reached: usize,
    fraction: f64,
}

pub fn run(a: TraceArgs) -> anyhow::Result<()> {
    match a.mode {
        Mode::Pixel {
            row,
            col,
            solver,
            common,
        } => {
            if solver == Solver::Nlm {
                return Err(Error::Usage("pixel traces need --solver admm or irls".into()).into());
            }
            let (params, _, noisy) = prepare(&common, solver)?;
            if row >= noisy.height() || col >= noisy.width() {
                return Err(Error::Usage(format!(
                    "pixel ({row}, {col}) outside {}x{} image",
                    noisy.height(),
                    noisy.width()
                ))
                .into());
            }
            let src = PatchSource::new(&noisy, params.patch)?;
            let stack = PatchStack::build(&src, row, col, params.search, params.h)?;
            let res = solve_stack_with(stack, &params, params.solver_iters, true, |_, _| {})?;
            write_trace_csv(&res.trace, &common.out)?;
            emit(&PixelLine {
                row,
                col,
                solver: solver.name(),
                iterations: res.trace.len(),
                final_objective: res.trace.last().map_or(f64::NAN, |t| t.objective),
            })
        }
        Mode::Psnr { solver, common } => {
            if solver == Solver::Nlm {
                return Err(Error::Usage("PSNR traces need --solver admm or irls".into()).into());
            }
            let (params, clean, noisy) = prepare(&common, solver)?;
            let iterates = nlem_denoise_iterates(&noisy, &params, params.solver_iters)?;
            let psnrs = iterates
                .iter()
                .map(|img| psnr(&clean, img))
                .collect::<nlem::Result<Vec<f64>>>()?;
            write_psnr_trace_csv(&psnrs, &common.out)?;
            emit(&PsnrLine {
                solver: solver.name(),
                iterations: psnrs.len(),
                psnr_noisy: psnr(&clean, &noisy)?,
                final_psnr: *psnrs.last().unwrap(),
            })
        }
        Mode::Survey {
            stride,
            reference_iters,
            tol,
            common,
        } => {
            if stride == 0 || reference_iters == 0 || !(tol >= 0.0) {
                return Err(Error::Usage(
                    "--stride and --reference-iters must be positive and --tol non-negative".into(),
                )
                .into());
            }
            let (params, _, noisy) = prepare(&common, Solver::Admm)?;
            let pixels = stride_pixels(noisy.height(), noisy.width(), stride);
            let iters = params.solver_iters;
            let survey = convergence_survey(&noisy, &params, &pixels, iters, reference_iters)?;

            let mut csv = String::from("row,col,reference_objective,reached_at");
            for t in 1..=iters {
                write!(csv, ",admm_{t}")?;
            }
            csv.push('\n');
            let mut reached = 0;
            for p in &survey {
                let at = p.admm_iterations_to(tol);
                reached += at.is_some() as usize;
                write!(
                    csv,
                    "{},{},{:?},{}",
                    p.row,
                    p.col,
                    p.reference_objective,
                    at.map(|t| t.to_string()).unwrap_or_default()
                )?;
                for obj in &p.admm_objectives {
                    write!(csv, ",{obj:?}")?;
                }
                csv.push('\n');
            }
            std::fs::write(&common.out, csv)
                .map_err(|e| anyhow::Error::new(e).context(common.out.display().to_string()))?;
            emit(&SurveyLine {
                pixels: survey.len(),
                iterations: iters,
                tol,
                reached,
                fraction: reached as f64 / survey.len() as f64,
            })
        }
    }
}
