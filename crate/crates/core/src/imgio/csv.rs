//! CSV emission. Floats use Rust's shortest round-trip formatting, so parsing
//! a written file recovers every value bit for bit.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::median::TraceRecord;

pub const TRACE_HEADER: &str = "iter,objective,primal_residual";
pub const PSNR_TRACE_HEADER: &str = "iter,psnr";
pub const BENCH_HEADER: &str = "image,sigma,method,mean_psnr,std_psnr,repeats";

/// Solver trace as CSV; the residual column is empty for solvers without one.
pub fn format_trace_csv(trace: &[TraceRecord]) -> String {
    let mut out = format!("{TRACE_HEADER}\n");
    for rec in trace {
        match rec.primal_residual {
            Some(r) => writeln!(out, "{},{},{}", rec.iter, rec.objective, r),
            None => writeln!(out, "{},{},", rec.iter, rec.objective),
        }
        .unwrap();
    }
    out
}

pub fn write_trace_csv(trace: &[TraceRecord], path: impl AsRef<Path>) -> Result<()> {
    write(path.as_ref(), &format_trace_csv(trace))
}

pub fn parse_trace_csv(text: &str) -> Result<Vec<TraceRecord>> {
    let mut lines = text.lines();
    match lines.next() {
        Some(TRACE_HEADER) => {}
        _ => return Err(Error::parse(0, format!("expected header {TRACE_HEADER:?}"))),
    }
    let mut offset = TRACE_HEADER.len() + 1;
    let mut out = Vec::new();
    for line in lines {
        let bad = || Error::parse(offset, format!("malformed trace row {line:?}"));
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 3 {
            return Err(bad());
        }
        out.push(TraceRecord {
            iter: fields[0].parse().map_err(|_| bad())?,
            objective: fields[1].parse().map_err(|_| bad())?,
            primal_residual: match fields[2] {
                "" => None,
                r => Some(r.parse().map_err(|_| bad())?),
            },
        });
        offset += line.len() + 1;
    }
    Ok(out)
}

/// PSNR after each iteration, 1-based.
pub fn write_psnr_trace_csv(psnrs: &[f64], path: impl AsRef<Path>) -> Result<()> {
    let mut out = format!("{PSNR_TRACE_HEADER}\n");
    for (i, p) in psnrs.iter().enumerate() {
        writeln!(out, "{},{}", i + 1, p).unwrap();
    }
    write(path.as_ref(), &out)
}

/// One cell of a benchmark table.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub image: String,
    pub sigma: f64,
    pub method: String,
    pub mean_psnr: f64,
    pub std_psnr: f64,
    pub repeats: usize,
}

impl BenchRow {
    pub fn to_csv_line(&self) -> String {
        format!(
            "{},{},{},{},{},{}",
            self.image, self.sigma, self.method, self.mean_psnr, self.std_psnr, self.repeats
        )
    }
}

pub fn write_bench_csv(rows: &[BenchRow], path: impl AsRef<Path>) -> Result<()> {
    let mut out = format!("{BENCH_HEADER}\n");
    for row in rows {
        out.push_str(&row.to_csv_line());
        out.push('\n');
    }
    write(path.as_ref(), &out)
}

fn write(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|e| Error::io(path, e))
}
