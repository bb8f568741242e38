use crate::error::{Error, Result};

/// Grayscale raster of real intensities, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Image {
    width: usize,
    height: usize,
    data: Vec<f64>,
}

impl Image {
    pub fn new(width: usize, height: usize, data: Vec<f64>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::usage("image dimensions must be positive"));
        }
        if data.len() != width * height {
            return Err(Error::usage(format!(
                "{} samples do not fill a {width}x{height} image",
                data.len()
            )));
        }
        if data.iter().any(|v| !v.is_finite()) {
            return Err(Error::usage("image intensities must be finite"));
        }
        Ok(Image {
            width,
            height,
            data,
        })
    }

    pub fn filled(width: usize, height: usize, value: f64) -> Result<Self> {
        Self::new(width, height, vec![value; width * height])
    }

    pub fn from_fn(
        width: usize,
        height: usize,
        mut f: impl FnMut(usize, usize) -> f64,
    ) -> Result<Self> {
        let mut data = Vec::with_capacity(width * height);
        for r in 0..height {
            for c in 0..width {
                data.push(f(r, c));
            }
        }
        Self::new(width, height, data)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn into_data(self) -> Vec<f64> {
        self.data
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.data[row * self.width + col]
    }

    pub fn row(&self, row: usize) -> &[f64] {
        &self.data[row * self.width..(row + 1) * self.width]
    }

    pub fn crop(&self, top: usize, left: usize, height: usize, width: usize) -> Result<Image> {
        if top + height > self.height || left + width > self.width {
            return Err(Error::usage(format!(
                "crop {height}x{width} at ({top}, {left}) exceeds {}x{} image",
                self.height, self.width
            )));
        }
        Image::from_fn(width, height, |r, c| self.get(top + r, left + c))
    }

    /// Averages non-overlapping `factor x factor` blocks.
    pub fn downsample(&self, factor: usize) -> Result<Image> {
        if factor == 0 || self.width / factor == 0 || self.height / factor == 0 {
            return Err(Error::usage(format!("cannot downsample by {factor}")));
        }
        let area = (factor * factor) as f64;
        Image::from_fn(self.width / factor, self.height / factor, |r, c| {
            let mut s = 0.0;
            for i in 0..factor {
                for j in 0..factor {
                    s += self.get(r * factor + i, c * factor + j);
                }
            }
            s / area
        })
    }

    pub fn same_shape(&self, other: &Image) -> bool {
        self.width == other.width && self.height == other.height
    }
}
