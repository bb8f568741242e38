use super::Image;
use crate::error::{Error, Result};

/// Peak intensity used by [`psnr`].
pub const PSNR_PEAK: f64 = 255.0;

/// `10 log10(255^2 / MSE)` in dB; `f64::INFINITY` for identical images.
pub fn psnr(reference: &Image, test: &Image) -> Result<f64> {
    if !reference.same_shape(test) {
        return Err(Error::usage(format!(
            "PSNR of {}x{} and {}x{} images",
            reference.width(),
            reference.height(),
            test.width(),
            test.height()
        )));
    }
    let n = reference.data().len() as f64;
    let mse = reference
        .data()
        .iter()
        .zip(test.data())
        .map(|(a, b)| (a - b) * (a - b))
        .sum::<f64>()
        / n;
    if mse == 0.0 {
        return Ok(f64::INFINITY);
    }
    Ok(10.0 * (PSNR_PEAK * PSNR_PEAK / mse).log10())
}
