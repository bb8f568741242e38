use super::parallel::map_pixels;
use super::{Image, NlemParams, PatchSource, PatchStack};
use crate::error::Result;

/// Non-Local Means: each pixel becomes the similarity-weighted mean of the
/// centre pixels of its search window, clipped to the dynamic range.
pub fn nlm_denoise(noisy: &Image, params: &NlemParams) -> Result<Image> {
    params.validate()?;
    let src = PatchSource::new(noisy, params.patch)?;
    let data = map_pixels(noisy.height(), noisy.width(), |row, col| {
        let stack = PatchStack::build(&src, row, col, params.search, params.h)?;
        let (mut num, mut den) = (0.0, 0.0);
        for (&(r, c), w) in stack.positions.iter().zip(&stack.weights) {
            num += w * noisy.get(r, c);
            den += w;
        }
        Ok(params.range.clamp(num / den))
    })?;
    Image::new(noisy.width(), noisy.height(), data)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_image_is_preserved() {
        let img = Image::filled(12, 9, 77.0).unwrap();
        let out = nlm_denoise(&img, &NlemParams::for_sigma(10.0)).unwrap();
        assert_eq!(out, img);
    }

    #[test]
    fn huge_h_gives_window_mean() {
        let img = Image::from_fn(8, 8, |r, c| if (r + c) % 2 == 0 { 50.0 } else { 150.0 }).unwrap();
        let params = NlemParams {
            search: 3,
            patch: 3,
            h: 1e12,
            ..NlemParams::for_sigma(10.0)
        };
        let out = nlm_denoise(&img, &params).unwrap();
        for r in 0..8usize {
            for c in 0..8usize {
                let (mut s, mut n) = (0.0, 0.0);
                for rr in r.saturating_sub(1)..=(r + 1).min(7) {
                    for cc in c.saturating_sub(1)..=(c + 1).min(7) {
                        s += img.get(rr, cc);
                        n += 1.0;
                    }
                }
                assert!((out.get(r, c) - s / n).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn output_is_clipped() {
        let img = Image::filled(6, 6, 300.0).unwrap();
        let params = NlemParams {
            search: 3,
            patch: 3,
            ..NlemParams::for_sigma(10.0)
        };
        assert!(nlm_denoise(&img, &params)
            .unwrap()
            .data()
            .iter()
            .all(|v| *v == 255.0));
    }
}
