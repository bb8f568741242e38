use std::path::PathBuf;

use clap::Args;
use nlem::denoise::Solver;
use nlem::experiment::{run_bench, BenchPlan};
use nlem::imgio::{read_pgm, write_bench_csv, BENCH_HEADER};
use serde::Serialize;

use crate::args::{check_sigma, image_label, ModelArgs};
use crate::output::emit;

#[derive(Args, Debug)]
pub struct BenchArgs {
    /// Clean PGM images; rows are labelled by file stem.
    #[arg(required = true)]
    pub images: Vec<PathBuf>,
    #[arg(long, value_delimiter = ',', required = true)]
    pub sigmas: Vec<f64>,
    #[arg(long, value_delimiter = ',', default_value = "nlm,admm,irls")]
    pub methods: Vec<Solver>,
    /// Noise realizations per cell.
    #[arg(long, default_value_t = 1)]
    pub repeat: usize,
    /// Seed base; realization r uses seed + r.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// CSV output; the table goes to stdout when absent.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub model: ModelArgs,
}

#[derive(Serialize)]
struct Done<'a> {
    rows: usize,
    out: &'a str,
}

pub fn run(a: BenchArgs) -> anyhow::Result<()> {
    for &s in &a.sigmas {
        check_sigma(s)?;
    }
    let plan = BenchPlan {
        sigmas: a.sigmas.clone(),
        methods: a.methods.clone(),
        repeats: a.repeat,
        seed_base: a.seed,
        template: a.model.template(Solver::Admm),
    };
    plan.validate()?;

    let images = a
        .images
        .iter()
        .map(|p| Ok((image_label(p), read_pgm(p)?)))
        .collect::<nlem::Result<Vec<_>>>()?;
    let rows = run_bench(&images, &plan)?;
    match &a.out {
        Some(path) => {
            write_bench_csv(&rows, path)?;
            emit(&Done {
                rows: rows.len(),
                out: &path.to_string_lossy(),
            })?;
        }
        None => {
            println!("{BENCH_HEADER}");
            for row in &rows {
                println!("{}", row.to_csv_line());
            }
        }
    }
    Ok(())
}
