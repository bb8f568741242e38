//! Plain-text point sets: a header line `n d`, then `n` lines each holding `d`
//! coordinates followed by the weight, whitespace separated.

use std::fmt::Write as _;
use std::path::Path;

use super::PointSet;
use crate::error::{Error, Result};

fn tokens(text: &str) -> impl Iterator<Item = (usize, &str)> {
    let mut rest = text;
    let mut offset = 0;
    std::iter::from_fn(move || {
        let skip = rest.len() - rest.trim_start().len();
        offset += skip;
        rest = &rest[skip..];
        if rest.is_empty() {
            return None;
        }
        let end = rest.find(char::is_whitespace).unwrap_or(rest.len());
        let tok = (offset, &rest[..end]);
        offset += end;
        rest = &rest[end..];
        Some(tok)
    })
}

pub fn parse_points(text: &str) -> Result<PointSet> {
    let mut toks = tokens(text);
    let mut next = |what: &str| {
        toks.next().ok_or_else(|| {
            Error::parse(
                text.len(),
                format!("unexpected end of input, expected {what}"),
            )
        })
    };
    let header_int = |(off, tok): (usize, &str), what: &str| {
        tok.parse::<usize>()
            .map_err(|_| Error::parse(off, format!("expected {what}, found {tok:?}")))
    };
    let n = header_int(next("point count")?, "point count")?;
    let d = header_int(next("dimension")?, "dimension")?;
    if n == 0 || d == 0 {
        return Err(Error::parse(
            0,
            "point count and dimension must be positive",
        ));
    }
    let mut coords = Vec::with_capacity(n * d);
    let mut weights = Vec::with_capacity(n);
    for k in 0..n {
        for i in 0..=d {
            let (off, tok) = next("a number")?;
            let v: f64 = tok
                .parse()
                .map_err(|_| Error::parse(off, format!("point {k}: bad number {tok:?}")))?;
            if !v.is_finite() {
                return Err(Error::parse(off, format!("point {k}: non-finite value")));
            }
            if i < d {
                coords.push(v);
            } else {
                if v < 0.0 {
                    return Err(Error::parse(off, format!("point {k}: negative weight")));
                }
                weights.push(v);
            }
        }
    }
    if let Some((off, tok)) = toks.next() {
        return Err(Error::parse(off, format!("trailing data {tok:?}")));
    }
    PointSet::from_flat(d, coords, weights)
}

pub fn read_points(path: impl AsRef<Path>) -> Result<PointSet> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_points(&text)
}

/// Renders a point set in the text format; `parse_points` reads it back
/// exactly.
pub fn format_points(ps: &PointSet) -> String {
    let mut out = format!("{} {}\n", ps.len(), ps.dim());
    for (a, w) in ps.iter() {
        for c in a {
            write!(out, "{c} ").unwrap();
        }
        writeln!(out, "{w}").unwrap();
    }
    out
}
