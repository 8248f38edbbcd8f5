//! Direct summation along rounded ideal lines.
//!
//! Row `x` of line `(t, s)` is `s + ⌊t x / (w - 1) + 1/2⌋`, the nearest row to
//! the ideal line, so the orthotropic error never exceeds `1/2`. Every entry
//! costs `w - 1` additions, `w h (w - 1)` in total.

use rayon::prelude::*;

use crate::dyadic::OpCount;
use crate::error::{invalid, Result};
use crate::image::{check_accumulator, Algorithm, GrayImage, HoughImage};
use crate::pattern::Pattern;
use crate::rational::round_half_up;

/// Rows of the rounded line with rise `t` over `w` columns starting at `s`.
/// `wrap_height` is left at 1; callers that need the wrapped view use
/// [`ref_pattern_in`].
pub fn ref_pattern(w: usize, t: usize, s: i64) -> Result<Pattern> {
    ref_pattern_in(w, 1, t, s)
}

pub fn ref_pattern_in(w: usize, h: usize, t: usize, s: i64) -> Result<Pattern> {
    if w == 0 || h == 0 || t >= w {
        return Err(invalid(format!("rise {t} outside a {w}-column grid")));
    }
    Ok(Pattern {
        intercept: s,
        rows: rounded_rows(w, t, s),
        wrap_height: h,
    })
}

fn rounded_rows(w: usize, t: usize, s: i64) -> Vec<i64> {
    if w == 1 {
        return vec![s];
    }
    let den = (w - 1) as i64;
    (0..w as i64)
        .map(|x| s + round_half_up(t as i64 * x, den))
        .collect()
}

pub fn ref_transform(img: &GrayImage) -> Result<(HoughImage, OpCount)> {
    let (w, h) = (img.width(), img.height());
    check_accumulator(img.max_value(), w)?;
    if w == 1 {
        return Ok((
            HoughImage::identity(img, Algorithm::Reference),
            OpCount::default(),
        ));
    }
    let cols = img.to_columns();
    let mut values = vec![0u64; w * h];
    let additions: u64 = values
        .par_chunks_mut(w)
        .enumerate()
        .map(|(s, row)| {
            let mut adds = 0;
            for (t, v) in row.iter_mut().enumerate() {
                let rows = rounded_rows(w, t, s as i64);
                let mut acc = cols[rows[0] as usize % h];
                for (x, &y) in rows.iter().enumerate().skip(1) {
                    acc += cols[x * h + y as usize % h];
                    adds += 1;
                }
                *v = acc;
            }
            adds
        })
        .sum();
    Ok((
        HoughImage::from_vec(w, h, values, Algorithm::Reference),
        OpCount::new(additions),
    ))
}
