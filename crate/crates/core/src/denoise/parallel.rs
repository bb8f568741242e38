use rayon::prelude::*;

use crate::error::{Error, Result};

/// Evaluates `f` at every pixel in parallel over rows and returns the values
/// row-major. Each pixel is computed independently, so the output does not
/// depend on the thread count. The first failing pixel in raster order is
/// reported.
pub(crate) fn map_pixels<T, F>(height: usize, width: usize, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(usize, usize) -> Result<T> + Sync,
{
    let rows: Vec<Vec<Result<T>>> = (0..height)
        .into_par_iter()
        .map(|row| (0..width).map(|col| f(row, col)).collect())
        .collect();
    let mut out = Vec::with_capacity(height * width);
    for (row, values) in rows.into_iter().enumerate() {
        for (col, v) in values.into_iter().enumerate() {
            match v {
                Ok(v) => out.push(v),
                Err(e @ (Error::Usage(_) | Error::Pixel { .. })) => return Err(e),
                Err(e) => {
                    return Err(Error::Pixel {
                        row,
                        col,
                        source: Box::new(e),
                    })
                }
            }
        }
    }
    Ok(out)
}
