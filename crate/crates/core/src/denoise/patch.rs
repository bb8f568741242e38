use super::Image;
use crate::error::{Error, Result};

/// Maps a possibly out-of-range index into `0..len` by half-sample symmetric
/// reflection: `-1 -> 0`, `-2 -> 1`, `len -> len - 1`.
#[inline]
pub(crate) fn reflect_index(i: isize, len: usize) -> usize {
    let period = 2 * len as isize;
    let m = i.rem_euclid(period) as usize;
    if m < len {
        m
    } else {
        2 * len - 1 - m
    }
}

fn check_odd(k: usize, what: &str) -> Result<()> {
    if k == 0 || k.is_multiple_of(2) {
        return Err(Error::usage(format!(
            "{what} must be odd and positive, got {k}"
        )));
    }
    Ok(())
}

/// The `k x k` window centred at `(row, col)`, flattened row-major. Pixels
/// outside the image are mirrored back in.
pub fn patch_at(img: &Image, center: (usize, usize), k: usize) -> Result<Vec<f64>> {
    check_odd(k, "patch size")?;
    let half = (k / 2) as isize;
    let (r0, c0) = (center.0 as isize, center.1 as isize);
    let mut out = Vec::with_capacity(k * k);
    for dr in -half..=half {
        let r = reflect_index(r0 + dr, img.height());
        for dc in -half..=half {
            out.push(img.get(r, reflect_index(c0 + dc, img.width())));
        }
    }
    Ok(out)
}

/// `w_j = exp(-||P_center - P_j||^2 / h^2)` for every neighbour patch in the
/// flat, row-major `neighbors` buffer.
pub fn patch_weights(center: &[f64], neighbors: &[f64], h: f64) -> Result<Vec<f64>> {
    if !(h > 0.0) {
        return Err(Error::usage(format!(
            "smoothing h must be positive, got {h}"
        )));
    }
    let d = center.len();
    if d == 0 || !neighbors.len().is_multiple_of(d) {
        return Err(Error::usage(
            "neighbour buffer is not a whole number of patches",
        ));
    }
    Ok(weights_unchecked(center, neighbors, h))
}

fn weights_unchecked(center: &[f64], neighbors: &[f64], h: f64) -> Vec<f64> {
    let inv_h2 = 1.0 / (h * h);
    neighbors
        .chunks_exact(center.len())
        .map(|p| {
            let d2: f64 = p.iter().zip(center).map(|(a, b)| (a - b) * (a - b)).sum();
            (-d2 * inv_h2).exp()
        })
        .collect()
}

/// Reflect-padded copy of an image from which `k x k` patches are read
/// without bounds logic.
#[derive(Debug, Clone)]
pub struct PatchSource {
    k: usize,
    width: usize,
    height: usize,
    stride: usize,
    padded: Vec<f64>,
}

impl PatchSource {
    pub fn new(img: &Image, k: usize) -> Result<Self> {
        check_odd(k, "patch size")?;
        let half = (k / 2) as isize;
        let stride = img.width() + k - 1;
        let rows = img.height() + k - 1;
        let mut padded = Vec::with_capacity(stride * rows);
        for pr in 0..rows as isize {
            let r = reflect_index(pr - half, img.height());
            for pc in 0..stride as isize {
                padded.push(img.get(r, reflect_index(pc - half, img.width())));
            }
        }
        Ok(PatchSource {
            k,
            width: img.width(),
            height: img.height(),
            stride,
            padded,
        })
    }

    pub fn patch_size(&self) -> usize {
        self.k
    }

    pub fn dim(&self) -> usize {
        self.k * self.k
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    /// Appends the patch centred at `(row, col)` to `out`.
    #[inline]
    pub fn push_patch(&self, row: usize, col: usize, out: &mut Vec<f64>) {
        for dr in 0..self.k {
            let start = (row + dr) * self.stride + col;
            out.extend_from_slice(&self.padded[start..start + self.k]);
        }
    }

    pub fn patch(&self, row: usize, col: usize) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.dim());
        self.push_patch(row, col, &mut out);
        out
    }
}

/// All patches of the search window around one pixel with their similarity
/// weights. The window is clipped at the image border; the pixel's own patch
/// is always present with weight one.
#[derive(Debug, Clone, PartialEq)]
pub struct PatchStack {
    pub center_pixel: (usize, usize),
    pub dim: usize,
    /// `len() * dim` values, row-major over the window.
    pub patches: Vec<f64>,
    /// Image coordinates of each neighbour, parallel to `weights`.
    pub positions: Vec<(usize, usize)>,
    pub weights: Vec<f64>,
    /// Index of the centre pixel's own patch.
    pub self_index: usize,
}

impl PatchStack {
    pub fn build(src: &PatchSource, row: usize, col: usize, search: usize, h: f64) -> Result<Self> {
        check_odd(search, "search window")?;
        if !(h > 0.0) {
            return Err(Error::usage(format!(
                "smoothing h must be positive, got {h}"
            )));
        }
        if row >= src.height || col >= src.width {
            return Err(Error::usage(format!(
                "pixel ({row}, {col}) is outside the image"
            )));
        }
        let half = search / 2;
        let rows = row.saturating_sub(half)..=(row + half).min(src.height - 1);
        let cols = col.saturating_sub(half)..=(col + half).min(src.width - 1);
        let count = rows.clone().count() * cols.clone().count();
        let dim = src.dim();
        let mut patches = Vec::with_capacity(count * dim);
        let mut positions = Vec::with_capacity(count);
        let mut self_index = 0;
        for r in rows {
            for c in cols.clone() {
                if (r, c) == (row, col) {
                    self_index = positions.len();
                }
                positions.push((r, c));
                src.push_patch(r, c, &mut patches);
            }
        }
        let center = &patches[self_index * dim..(self_index + 1) * dim];
        let weights = weights_unchecked(center, &patches, h);
        Ok(PatchStack {
            center_pixel: (row, col),
            dim,
            patches,
            positions,
            weights,
            self_index,
        })
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn patch(&self, j: usize) -> &[f64] {
        &self.patches[j * self.dim..(j + 1) * self.dim]
    }

    pub fn center_patch(&self) -> &[f64] {
        self.patch(self.self_index)
    }

    /// Offset of the centre pixel inside a flattened patch.
    pub fn center_offset(&self) -> usize {
        self.dim / 2
    }

    /// Weighted mean of the neighbour patches (the NLM estimate of the patch).
    pub fn weighted_mean_patch(&self) -> Vec<f64> {
        let mut acc = vec![0.0; self.dim];
        let mut total = 0.0;
        for (p, w) in self.patches.chunks_exact(self.dim).zip(&self.weights) {
            total += w;
            for (a, v) in acc.iter_mut().zip(p) {
                *a += w * v;
            }
        }
        acc.iter_mut().for_each(|a| *a /= total);
        acc
    }
}
