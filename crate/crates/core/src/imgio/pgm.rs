//! Netpbm graymaps: ASCII `P2` and binary `P5` (8-bit, or 16-bit big-endian
//! when `maxval > 255`), with `#` comments allowed in the header.

use std::path::Path;

use crate::denoise::Image;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PgmMode {
    /// ASCII samples.
    P2,
    /// Binary samples.
    P5,
}

/// Decoded PGM contents before conversion to an [`Image`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PgmFile {
    pub mode: PgmMode,
    pub width: usize,
    pub height: usize,
    pub maxval: u16,
    pub pixels: Vec<u16>,
}

impl PgmFile {
    pub fn to_image(&self) -> Result<Image> {
        Image::new(
            self.width,
            self.height,
            self.pixels.iter().map(|&p| f64::from(p)).collect(),
        )
    }
}

struct Cursor<'a> {
    buf: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_space_and_comments(&mut self) {
        while self.pos < self.buf.len() {
            match self.buf[self.pos] {
                b'#' => {
                    while self.pos < self.buf.len() && self.buf[self.pos] != b'\n' {
                        self.pos += 1;
                    }
                }
                c if c.is_ascii_whitespace() => self.pos += 1,
                _ => break,
            }
        }
    }

    fn number(&mut self, what: &str) -> Result<u32> {
        self.skip_space_and_comments();
        let start = self.pos;
        while self.pos < self.buf.len() && self.buf[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(if start >= self.buf.len() {
                Error::parse(start, format!("unexpected end of file, expected {what}"))
            } else {
                Error::parse(start, format!("expected {what}"))
            });
        }
        if self.pos < self.buf.len()
            && !self.buf[self.pos].is_ascii_whitespace()
            && self.buf[self.pos] != b'#'
        {
            return Err(Error::parse(self.pos, format!("junk after {what}")));
        }
        std::str::from_utf8(&self.buf[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| Error::parse(start, format!("{what} out of range")))
    }
}

/// Parses a P2 or P5 graymap from memory.
pub fn decode_pgm(buf: &[u8]) -> Result<PgmFile> {
    let mode = match buf.get(..2) {
        Some(b"P2") => PgmMode::P2,
        Some(b"P5") => PgmMode::P5,
        _ => return Err(Error::parse(0, "bad magic, expected P2 or P5")),
    };
    let mut cur = Cursor { buf, pos: 2 };
    if cur.pos < buf.len() && !buf[cur.pos].is_ascii_whitespace() && buf[cur.pos] != b'#' {
        return Err(Error::parse(2, "bad magic, expected P2 or P5"));
    }
    let width = cur.number("width")? as usize;
    let height = cur.number("height")? as usize;
    let maxval_at = cur.pos;
    let maxval = cur.number("maxval")?;
    if width == 0 || height == 0 {
        return Err(Error::parse(maxval_at, "image dimensions must be positive"));
    }
    if maxval == 0 || maxval > 65535 {
        return Err(Error::parse(
            maxval_at,
            format!("maxval {maxval} outside 1..=65535"),
        ));
    }
    let maxval = maxval as u16;
    let count = width
        .checked_mul(height)
        .ok_or_else(|| Error::parse(0, "image dimensions overflow"))?;

    let pixels = match mode {
        PgmMode::P2 => {
            let mut px = Vec::with_capacity(count);
            for _ in 0..count {
                cur.skip_space_and_comments();
                let at = cur.pos;
                let v = cur.number("sample")?;
                if v > u32::from(maxval) {
                    return Err(Error::parse(
                        at,
                        format!("sample {v} exceeds maxval {maxval}"),
                    ));
                }
                px.push(v as u16);
            }
            cur.skip_space_and_comments();
            if cur.pos != buf.len() {
                return Err(Error::parse(cur.pos, "trailing data after samples"));
            }
            px
        }
        PgmMode::P5 => {
            // Exactly one whitespace byte separates maxval from the raster.
            if cur.pos >= buf.len() || !buf[cur.pos].is_ascii_whitespace() {
                return Err(Error::parse(cur.pos, "missing whitespace before raster"));
            }
            let start = cur.pos + 1;
            let bytes_per = if maxval > 255 { 2 } else { 1 };
            let need = count * bytes_per;
            if buf.len() - start < need {
                return Err(Error::parse(
                    buf.len(),
                    format!("truncated raster: {} of {need} bytes", buf.len() - start),
                ));
            }
            let raster = &buf[start..start + need];
            let px: Vec<u16> = if bytes_per == 1 {
                raster.iter().map(|&b| u16::from(b)).collect()
            } else {
                raster
                    .chunks_exact(2)
                    .map(|b| u16::from_be_bytes([b[0], b[1]]))
                    .collect()
            };
            if let Some(i) = px.iter().position(|&v| v > maxval) {
                return Err(Error::parse(
                    start + i * bytes_per,
                    format!("sample {} exceeds maxval {maxval}", px[i]),
                ));
            }
            px
        }
    };
    Ok(PgmFile {
        mode,
        width,
        height,
        maxval,
        pixels,
    })
}

pub fn read_pgm(path: impl AsRef<Path>) -> Result<Image> {
    let path = path.as_ref();
    let buf = std::fs::read(path).map_err(|e| Error::io(path, e))?;
    decode_pgm(&buf)?.to_image()
}

/// Rounds to the nearest integer (ties away from zero) and clamps to
/// `[0, 255]`.
pub fn quantize(v: f64) -> u8 {
    v.round().clamp(0.0, 255.0) as u8
}

/// 8-bit encoding of an image after [`quantize`].
pub fn encode_pgm(img: &Image, mode: PgmMode) -> Vec<u8> {
    let (w, h) = (img.width(), img.height());
    match mode {
        PgmMode::P5 => {
            let mut out = format!("P5\n{w} {h}\n255\n").into_bytes();
            out.extend(img.data().iter().map(|&v| quantize(v)));
            out
        }
        PgmMode::P2 => {
            let mut out = format!("P2\n{w} {h}\n255\n");
            for r in 0..h {
                let line: Vec<String> = img
                    .row(r)
                    .iter()
                    .map(|&v| quantize(v).to_string())
                    .collect();
                out.push_str(&line.join(" "));
                out.push('\n');
            }
            out.into_bytes()
        }
    }
}

pub fn write_pgm(img: &Image, path: impl AsRef<Path>, mode: PgmMode) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, encode_pgm(img, mode)).map_err(|e| Error::io(path, e))
}
