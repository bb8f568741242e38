//! Weighted Euclidean medians and robust patch-based denoising.
//!
//! The crate is split into three layers:
//!
//! - [`median`]: the (box-constrained) weighted Euclidean median problem, its
//!   closed-form proximal map, an ADMM solver, an IRLS baseline, a first-order
//!   optimality certificate and a brute-force 2-D oracle.
//! - [`denoise`]: Gaussian noise synthesis, patch extraction, Non-Local Means
//!   and Non-Local Euclidean Medians (NLEM), PSNR.
//! - [`imgio`]: PGM (P2/P5) reading and writing plus CSV emission for solver
//!   traces and benchmark tables.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod denoise;
pub mod error;
pub mod experiment;
pub mod imgio;
pub mod median;

pub use error::{Error, Result};
