//! The superpixel fast Hough transform.
//!
//! Every input pixel becomes a `ŵ x ĥ` block whose column `n̂` carries the
//! pixel value and whose other columns are zero. The dyadic transform of the
//! expanded `wŵ x hĥ` image is then subsampled: line `(t, s)` of the input is
//! mapped into the expanded grid, its endpoints are rounded to the nearest
//! rows, and the expanded Hough entry `(t̂, ŝ)` of the rounded line becomes
//! `J(t, s)`.
//!
//! With `ŵ = ĥ = 1` this is exactly the dyadic transform.

use rayon::prelude::*;

use crate::dyadic::{dyadic_rows, gdt_opcount_with, transform_columns, OpCount, Split};
use crate::error::{invalid, Error, Result};
use crate::image::{check_accumulator, Algorithm, GrayImage, HoughImage};
use crate::pattern::Pattern;
use crate::rational::{round_half_up, Rational};

/// Default ceiling on expanded-image pixels.
pub const DEFAULT_MEM_CAP: usize = 1 << 31;

/// Superpixel shape and the index of its non-zero column.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SuperpixelSpec {
    sp_width: usize,
    sp_height: usize,
    column: usize,
}

impl SuperpixelSpec {
    pub fn new(sp_width: usize, sp_height: usize, column: usize) -> Result<Self> {
        if sp_width == 0 || sp_height == 0 {
            return Err(invalid(format!(
                "superpixel {sp_width}x{sp_height} must have positive dimensions"
            )));
        }
        if column >= sp_width {
            return Err(invalid(format!(
                "non-zero column {column} outside superpixel width {sp_width}"
            )));
        }
        Ok(Self {
            sp_width,
            sp_height,
            column,
        })
    }

    /// Square odd superpixel with the middle column set.
    pub fn centered(size: usize) -> Result<Self> {
        if size.is_multiple_of(2) {
            return Err(invalid(format!(
                "centered superpixel size {size} must be odd"
            )));
        }
        Self::new(size, size, (size - 1) / 2)
    }

    /// `1 x 1`, which reduces the transform to the plain dyadic one.
    pub const fn unit() -> Self {
        Self {
            sp_width: 1,
            sp_height: 1,
            column: 0,
        }
    }

    pub fn sp_width(&self) -> usize {
        self.sp_width
    }

    pub fn sp_height(&self) -> usize {
        self.sp_height
    }

    pub fn column(&self) -> usize {
        self.column
    }

    /// Odd width and height with the middle column set: the configuration
    /// for which the accuracy guarantee holds.
    pub fn is_centered(&self) -> bool {
        self.sp_width % 2 == 1 && self.sp_height % 2 == 1 && self.column == (self.sp_width - 1) / 2
    }
}

/// Transform settings beyond the superpixel itself.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SpOptions {
    pub split: Split,
    /// Largest expanded image, in pixels, that will be allocated.
    pub mem_cap: usize,
}

impl Default for SpOptions {
    fn default() -> Self {
        Self {
            split: Split::default(),
            mem_cap: DEFAULT_MEM_CAP,
        }
    }
}

fn expanded_shape(
    w: usize,
    h: usize,
    spec: SuperpixelSpec,
    mem_cap: usize,
) -> Result<(usize, usize)> {
    let ew = w.checked_mul(spec.sp_width);
    let eh = h.checked_mul(spec.sp_height);
    match (ew, eh) {
        (Some(ew), Some(eh)) => match ew.checked_mul(eh) {
            Some(n) if n <= mem_cap => Ok((ew, eh)),
            _ => Err(Error::Capacity(format!(
                "expanded image {ew}x{eh} exceeds the cap of {mem_cap} pixels"
            ))),
        },
        _ => Err(Error::Capacity(format!(
            "expanded size of {w}x{h} by {}x{} overflows",
            spec.sp_width, spec.sp_height
        ))),
    }
}

/// Replaces every pixel by its superpixel.
pub fn expand(img: &GrayImage, spec: SuperpixelSpec) -> Result<GrayImage> {
    expand_with_cap(img, spec, DEFAULT_MEM_CAP)
}

pub fn expand_with_cap(img: &GrayImage, spec: SuperpixelSpec, mem_cap: usize) -> Result<GrayImage> {
    let (ew, eh) = expanded_shape(img.width(), img.height(), spec, mem_cap)?;
    GrayImage::from_fn(ew, eh, |x, y| {
        if x % spec.sp_width == spec.column {
            img.get(x / spec.sp_width, y / spec.sp_height)
        } else {
            0
        }
    })
}

// Column-major expanded image, built without the intermediate GrayImage.
fn expanded_columns(
    img: &GrayImage,
    spec: SuperpixelSpec,
    mem_cap: usize,
) -> Result<(Vec<u64>, usize, usize)> {
    let (ew, eh) = expanded_shape(img.width(), img.height(), spec, mem_cap)?;
    let mut cols = vec![0u64; ew * eh];
    let hh = spec.sp_height;
    for k in 0..img.width() {
        let x = k * spec.sp_width + spec.column;
        let col = &mut cols[x * eh..(x + 1) * eh];
        for (m, block) in col.chunks_exact_mut(hh).enumerate() {
            block.fill(u64::from(img.get(k, m)));
        }
    }
    Ok((cols, ew, eh))
}

/// Endpoints of an input line mapped into the expanded grid, and the
/// parameters of the rounded line there.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RemappedParams {
    pub y_left: Rational,
    pub y_right: Rational,
    pub t_hat: usize,
    pub s_hat: usize,
    /// `s_hat` before reduction modulo the expanded height.
    pub s_hat_unwrapped: i64,
}

/// Maps line `(t, s)` of a `w x h` image onto the expanded grid.
///
/// With the origin at the center of the bottom-left expanded pixel the line
/// becomes
///
/// ```text
/// ŷ(x) = (ĥ/ŵ) · t/(w-1) · (x - ŵ/2 + 1/2) + ĥ (s + 1/2) - 1/2
/// ```
///
/// evaluated exactly at `x = 0` and `x = wŵ - 1`. Both endpoints are rounded
/// half up; `t̂` is the rounded rise modulo `wŵ` and `ŝ` the rounded left
/// ordinate modulo `hĥ`.
pub fn remap_params(
    w: usize,
    h: usize,
    spec: SuperpixelSpec,
    t: usize,
    s: usize,
) -> Result<RemappedParams> {
    if w < 2 {
        return Err(invalid(
            "line remapping needs an image at least 2 columns wide",
        ));
    }
    if t >= w || s >= h {
        return Err(invalid(format!(
            "line ({t}, {s}) outside the {w}x{h} parameter grid"
        )));
    }
    let (ww, hh) = (spec.sp_width as i64, spec.sp_height as i64);
    let (w, h, t, s) = (w as i64, h as i64, t as i64, s as i64);

    // both ordinates over the common denominator 2ŵ(w-1)
    let den = 2 * ww * (w - 1);
    let offset = hh * (2 * s + 1) * ww * (w - 1) - ww * (w - 1);
    let left_num = hh * t * (1 - ww) + offset;
    let right_num = hh * t * (2 * w * ww - ww - 1) + offset;

    let y_left = round_half_up(left_num, den);
    let y_right = round_half_up(right_num, den);
    Ok(RemappedParams {
        y_left: Rational::new(left_num, den),
        y_right: Rational::new(right_num, den),
        t_hat: (y_right - y_left).rem_euclid(w * ww) as usize,
        s_hat: y_left.rem_euclid(h * hh) as usize,
        s_hat_unwrapped: y_left,
    })
}

pub fn sp_transform(img: &GrayImage, spec: SuperpixelSpec) -> Result<(HoughImage, OpCount)> {
    sp_transform_with(img, spec, &SpOptions::default())
}

pub fn sp_transform_with(
    img: &GrayImage,
    spec: SuperpixelSpec,
    opts: &SpOptions,
) -> Result<(HoughImage, OpCount)> {
    let (w, h) = (img.width(), img.height());
    if w == 1 {
        return Ok((
            HoughImage::identity(img, Algorithm::Superpixel),
            OpCount::default(),
        ));
    }
    let (cols, ew, eh) = expanded_columns(img, spec, opts.mem_cap)?;
    check_accumulator(img.max_value(), ew)?;
    let (expanded, additions) = transform_columns(&cols, ew, eh, opts.split);
    drop(cols);

    let mut values = vec![0u64; w * h];
    values
        .par_chunks_mut(w)
        .enumerate()
        .try_for_each(|(s, row)| -> Result<()> {
            for (t, v) in row.iter_mut().enumerate() {
                let p = remap_params(w, h, spec, t, s)?;
                *v = expanded[p.t_hat * eh + p.s_hat];
            }
            Ok(())
        })?;
    Ok((
        HoughImage::from_vec(w, h, values, Algorithm::Superpixel),
        OpCount::new(additions),
    ))
}

/// The discrete line of the input image summed by [`sp_transform`] at
/// `(t, s)`: the expanded dyadic pattern of `(t̂, ŝ)` read at the non-zero
/// column of every superpixel and divided down to input rows.
pub fn sp_pattern(w: usize, h: usize, spec: SuperpixelSpec, t: usize, s: usize) -> Result<Pattern> {
    sp_pattern_with(w, h, spec, t, s, Split::default())
}

pub fn sp_pattern_with(
    w: usize,
    h: usize,
    spec: SuperpixelSpec,
    t: usize,
    s: usize,
    split: Split,
) -> Result<Pattern> {
    if w == 0 || h == 0 || t >= w || s >= h {
        return Err(invalid(format!(
            "line ({t}, {s}) outside the {w}x{h} parameter grid"
        )));
    }
    if w == 1 {
        return Ok(Pattern {
            intercept: s as i64,
            rows: vec![s as i64],
            wrap_height: h,
        });
    }
    let p = remap_params(w, h, spec, t, s)?;
    let fine = dyadic_rows(w * spec.sp_width, p.t_hat, p.s_hat_unwrapped, split);
    let hh = spec.sp_height as i64;
    let rows = (0..w)
        .map(|x| fine[x * spec.sp_width + spec.column].div_euclid(hh))
        .collect();
    Ok(Pattern {
        intercept: s as i64,
        rows,
        wrap_height: h,
    })
}

/// Additions performed by [`sp_transform`]: those of the dyadic transform of
/// the expanded image. Zero for single-column images, which are returned
/// unchanged.
pub fn sp_opcount(w: usize, h: usize, spec: SuperpixelSpec) -> OpCount {
    sp_opcount_with(w, h, spec, Split::default())
}

pub fn sp_opcount_with(w: usize, h: usize, spec: SuperpixelSpec, split: Split) -> OpCount {
    if w == 1 {
        return OpCount::default();
    }
    gdt_opcount_with(w * spec.sp_width, h * spec.sp_height, split)
}
