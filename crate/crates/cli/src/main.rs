//! `nlem`: Euclidean-median solves, NLEM denoising runs, convergence traces
//! and PSNR tables.
//!
//! Exit status: 0 on success, 2 for bad flags or unreadable/malformed input,
//! 3 when a solver produces a non-finite value, 1 for anything else.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod args;
mod bench;
mod denoise;
mod median;
mod output;
mod trace;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(
    name = "nlem",
    version,
    about = "Euclidean-median solvers and NLEM denoising"
)]
struct Cli {
    /// Worker threads for per-pixel work (default: all cores). Output does
    /// not depend on this.
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Solve one weighted Euclidean median from a points file.
    Median(median::MedianArgs),
    /// Add noise to a clean image, denoise it and report PSNRs.
    Denoise(denoise::DenoiseArgs),
    /// Per-iteration traces: objective at a pixel, PSNR, or a pixel survey.
    Trace(trace::TraceArgs),
    /// Mean PSNR table over images, noise levels and methods.
    Bench(bench::BenchArgs),
}

fn run(cli: Cli) -> anyhow::Result<()> {
    if let Some(n) = cli.threads {
        if n == 0 {
            return Err(nlem::Error::Usage("--threads must be at least 1".into()).into());
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()?;
    }
    match cli.command {
        Command::Median(a) => median::run(a),
        Command::Denoise(a) => denoise::run(a),
        Command::Trace(a) => trace::run(a),
        Command::Bench(a) => bench::run(a),
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.chain().find_map(|e| e.downcast_ref::<nlem::Error>()) {
        Some(e) if e.is_input_error() => 2,
        Some(_) => 3,
        None => 1,
    }
}

/// The error chain joined by `: `, skipping causes already spelled out by
/// the message above them.
fn describe(err: &anyhow::Error) -> String {
    let mut msg = String::new();
    for cause in err.chain() {
        let text = cause.to_string();
        if !msg.ends_with(&text) {
            if !msg.is_empty() {
                msg.push_str(": ");
            }
            msg.push_str(&text);
        }
    }
    msg
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("nlem: {}", describe(&err));
            ExitCode::from(exit_code(&err))
        }
    }
}
