use std::path::PathBuf;

use clap::Args;
use nlem::denoise::Solver;
use nlem::imgio::write_trace_csv;
use nlem::median::{
    admm_euclidean_median, irls_euclidean_median, irls_euclidean_median_boxed, optimality_residual,
    read_points, AdmmConfig, BoxConstraint, IrlsConfig, DEFAULT_EPSILON,
};
use nlem::Error;
use serde::Serialize;

use crate::args::parse_range;
use crate::output::emit;

#[derive(Args, Debug)]
pub struct MedianArgs {
    /// Points file: `n d` header, then one point per line followed by its weight.
    pub points: PathBuf,
    #[arg(long, default_value = "admm")]
    pub solver: Solver,
    /// ADMM penalty. The default suits unit-scale coordinates.
    #[arg(long, default_value_t = 1.0)]
    pub mu: f64,
    #[arg(long, default_value_t = DEFAULT_EPSILON)]
    pub eps: f64,
    #[arg(long, default_value_t = 10_000)]
    pub iters: usize,
    /// Box applied to every coordinate; unconstrained when absent.
    #[arg(long, value_parser = parse_range, value_name = "L:U")]
    pub range: Option<BoxConstraint>,
    /// Per-iteration CSV (`iter,objective,primal_residual`).
    #[arg(long, value_name = "PATH")]
    pub trace: Option<PathBuf>,
}

#[derive(Serialize)]
struct Summary<'a> {
    solver: &'a str,
    n: usize,
    dim: usize,
    minimizer: &'a [f64],
    objective: f64,
    iterations: usize,
    residual: f64,
}

pub fn run(a: MedianArgs) -> anyhow::Result<()> {
    let bx = a.range.unwrap_or_default();
    let record_trace = a.trace.is_some();
    let admm_cfg = AdmmConfig {
        mu: a.mu,
        max_iter: a.iters,
        record_trace,
        ..Default::default()
    };
    let irls_cfg = IrlsConfig {
        epsilon: a.eps,
        max_iter: a.iters,
        record_trace,
        ..Default::default()
    };
    match a.solver {
        Solver::Admm => admm_cfg.validate()?,
        Solver::Irls => irls_cfg.validate()?,
        Solver::Nlm => {
            return Err(Error::Usage("median supports --solver admm or irls".into()).into())
        }
    }

    let ps = read_points(&a.points)?;
    let res = match (a.solver, &bx) {
        (Solver::Admm, _) => admm_euclidean_median(&ps, &bx, &admm_cfg)?,
        (_, BoxConstraint::Unconstrained) => irls_euclidean_median(&ps, &irls_cfg)?,
        _ => irls_euclidean_median_boxed(&ps, &bx, &irls_cfg)?,
    };
    if let Some(path) = &a.trace {
        write_trace_csv(&res.trace, path)?;
    }
    emit(&Summary {
        solver: a.solver.name(),
        n: ps.len(),
        dim: ps.dim(),
        minimizer: &res.minimizer,
        objective: res.objective,
        iterations: res.iterations_run,
        residual: optimality_residual(&ps, &bx, &res.minimizer),
    })
}
