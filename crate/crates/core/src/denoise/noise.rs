use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use super::Image;
use crate::error::{Error, Result};

/// `g = f + sigma * xi` with `xi` iid standard normal, drawn in row-major order
/// from a ChaCha8 stream seeded by `seed`. The result is not clipped.
pub fn add_gaussian_noise(clean: &Image, sigma: f64, seed: u64) -> Result<Image> {
    if !(sigma >= 0.0 && sigma.is_finite()) {
        return Err(Error::usage(format!(
            "sigma must be nonnegative, got {sigma}"
        )));
    }
    if sigma == 0.0 {
        return Ok(clean.clone());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let data = clean
        .data()
        .iter()
        .map(|f| {
            let xi: f64 = StandardNormal.sample(&mut rng);
            f + sigma * xi
        })
        .collect();
    Image::new(clean.width(), clean.height(), data)
}
