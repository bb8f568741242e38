//! File formats: PGM images and CSV traces/tables.

mod csv;
mod pgm;

pub use self::csv::{
    format_trace_csv, parse_trace_csv, write_bench_csv, write_psnr_trace_csv, write_trace_csv,
    BenchRow, BENCH_HEADER, PSNR_TRACE_HEADER, TRACE_HEADER,
};
pub use pgm::{decode_pgm, encode_pgm, quantize, read_pgm, write_pgm, PgmFile, PgmMode};
