//! Generalized Brady–Yong transform for arbitrary image widths.
//!
//! A strip of width `w > 1` is split into a left part of width `w_l` and a
//! right part of width `w_r = w - w_l`. Both parts are transformed
//! recursively and line `(t, s)` of the strip is assembled from line
//! `(t_l, s)` of the left part and line `(t_r, s + t - t_r)` of the right
//! part, with
//!
//! ```text
//! t_l = ⌊t (w_l - 1) / (w - 1) + 1/2⌋,   t_r = ⌊t (w_r - 1) / (w - 1) + 1/2⌋.
//! ```
//!
//! The residual rise `t - t_l - t_r` is always 0 or 1, so the implied
//! patterns are discretely continuous and end exactly at `s + t`. Intercepts
//! wrap modulo the image height.
//!
//! The default [`Split::PowerOfTwo`] puts the largest power of two below `w`
//! on the left. On power-of-two widths either split halves the strip and the
//! rule reduces to `t_l = t_r = ⌊t/2⌋`, so the transform coincides with
//! Brady–Yong there. Its addition count attains the sharp constant
//! `81 log₁₇2 / 17` at `w = 17`, and its orthotropic error stays within
//! `log₂(w)/6 + 7/12`.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::error::{invalid, Result};
use crate::image::{check_accumulator, Algorithm, GrayImage, HoughImage};
use crate::pattern::Pattern;
use crate::rational::round_half_up;

/// Below this many accumulator entries a merge runs on the calling thread.
const PARALLEL_THRESHOLD: usize = 1 << 15;

/// Number of pixel-value additions, excluding index arithmetic.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OpCount {
    pub additions: u64,
}

impl OpCount {
    pub const fn new(additions: u64) -> Self {
        Self { additions }
    }
}

/// The sharp constant `81 log₁₇2 / 17 ≈ 1.16569` of the published bound
/// `T ≤ c · w h log₂ w` for the dyadic transform of a `w x h` image.
pub fn count_bound_constant() -> f64 {
    81.0 * 2f64.ln() / (17.0 * 17f64.ln())
}

/// How a strip of width `w` is divided into left and right parts.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Split {
    /// `w_l` is the largest power of two below `w`, leaving the remainder on
    /// the right.
    #[default]
    PowerOfTwo,
    /// `w_l = ⌈w/2⌉`. Cheaper on some widths, but the error exceeds
    /// `log₂(w)/6 + 7/12` for some of them (w = 363 is the worst below 512).
    Balanced,
}

impl Split {
    pub fn left_width(self, w: usize) -> usize {
        debug_assert!(w >= 2);
        match self {
            Split::Balanced => w.div_ceil(2),
            Split::PowerOfTwo => 1 << (usize::BITS - 1 - (w - 1).leading_zeros()),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Split::Balanced => "balanced",
            Split::PowerOfTwo => "pow2",
        }
    }
}

/// Slope parameters `(t_l, t_r)` of the two parts for total rise `t`.
#[inline]
fn part_slopes(w: usize, left: usize, t: usize) -> (usize, usize) {
    let den = (w - 1) as i64;
    let right = w - left;
    let t_l = round_half_up(t as i64 * (left as i64 - 1), den);
    let t_r = round_half_up(t as i64 * (right as i64 - 1), den);
    (t_l as usize, t_r as usize)
}

/// Transforms `img` with the default power-of-two split.
pub fn gdt_transform(img: &GrayImage) -> Result<(HoughImage, OpCount)> {
    gdt_transform_with(img, Split::default())
}

pub fn gdt_transform_with(img: &GrayImage, split: Split) -> Result<(HoughImage, OpCount)> {
    check_accumulator(img.max_value(), img.width())?;
    let (w, h) = (img.width(), img.height());
    let (cols, additions) = transform_columns(&img.to_columns(), w, h, split);
    Ok((
        HoughImage::from_columns(w, h, &cols, Algorithm::Dyadic),
        OpCount::new(additions),
    ))
}

/// Runs the recursion on column-major data (`x * h + y`) and returns the
/// column-major Hough image (`t * h + s`) with the executed addition count.
pub(crate) fn transform_columns(cols: &[u64], w: usize, h: usize, split: Split) -> (Vec<u64>, u64) {
    debug_assert_eq!(cols.len(), w * h);
    if w == 1 {
        return (cols.to_vec(), 0);
    }
    let left_w = split.left_width(w);
    let (left_cols, right_cols) = cols.split_at(left_w * h);
    let ((left, left_adds), (right, right_adds)) = if w * h >= PARALLEL_THRESHOLD {
        rayon::join(
            || transform_columns(left_cols, left_w, h, split),
            || transform_columns(right_cols, w - left_w, h, split),
        )
    } else {
        (
            transform_columns(left_cols, left_w, h, split),
            transform_columns(right_cols, w - left_w, h, split),
        )
    };

    let mut out = vec![0u64; w * h];
    let merge = |(t, dst): (usize, &mut [u64])| -> u64 {
        let (t_l, t_r) = part_slopes(w, left_w, t);
        let l = &left[t_l * h..(t_l + 1) * h];
        let r = &right[t_r * h..(t_r + 1) * h];
        // J(t, s) = L(t_l, s) + R(t_r, (s + t - t_r) mod h)
        let shift = (t - t_r) % h;
        let r_shifted = r[shift..].iter().chain(&r[..shift]);
        let mut adds = 0;
        for ((d, &a), &b) in dst.iter_mut().zip(l).zip(r_shifted) {
            *d = a + b;
            adds += 1;
        }
        adds
    };
    let merged = if w * h >= PARALLEL_THRESHOLD {
        out.par_chunks_mut(h).enumerate().map(merge).sum::<u64>()
    } else {
        out.chunks_mut(h).enumerate().map(merge).sum::<u64>()
    };
    (out, left_adds + right_adds + merged)
}

/// The discrete line summed by [`gdt_transform`] at `(t, s)`.
pub fn gdt_pattern(w: usize, h: usize, t: usize, s: usize) -> Result<Pattern> {
    gdt_pattern_with(w, h, t, s, Split::default())
}

pub fn gdt_pattern_with(w: usize, h: usize, t: usize, s: usize, split: Split) -> Result<Pattern> {
    if w == 0 || h == 0 {
        return Err(invalid(format!("pattern grid {w}x{h} is empty")));
    }
    if t >= w || s >= h {
        return Err(invalid(format!(
            "line ({t}, {s}) outside the {w}x{h} parameter grid"
        )));
    }
    Ok(Pattern {
        intercept: s as i64,
        rows: dyadic_rows(w, t, s as i64, split),
        wrap_height: h,
    })
}

/// Unwrapped rows of the dyadic pattern of width `w`, rise `t`, start `s`.
pub(crate) fn dyadic_rows(w: usize, t: usize, s: i64, split: Split) -> Vec<i64> {
    let mut rows = vec![0; w];
    fill_rows(&mut rows, t, s, split);
    rows
}

fn fill_rows(rows: &mut [i64], t: usize, s: i64, split: Split) {
    let w = rows.len();
    if w == 1 {
        rows[0] = s;
        return;
    }
    let left_w = split.left_width(w);
    let (t_l, t_r) = part_slopes(w, left_w, t);
    let (left, right) = rows.split_at_mut(left_w);
    fill_rows(left, t_l, s, split);
    fill_rows(right, t_r, s + t as i64 - t_r as i64, split);
}

/// Additions performed by [`gdt_transform`] on a `w x h` image, from the
/// recurrence `A(1) = 0`, `A(w) = A(w_l) + A(w_r) + w h`.
pub fn gdt_opcount(w: usize, h: usize) -> OpCount {
    gdt_opcount_with(w, h, Split::default())
}

pub fn gdt_opcount_with(w: usize, h: usize, split: Split) -> OpCount {
    let mut memo = HashMap::new();
    OpCount::new(h as u64 * per_row_additions(w, split, &mut memo))
}

// A(w) / h; each recursion level touches at most two distinct widths.
fn per_row_additions(w: usize, split: Split, memo: &mut HashMap<usize, u64>) -> u64 {
    if w <= 1 {
        return 0;
    }
    if let Some(&v) = memo.get(&w) {
        return v;
    }
    let left = split.left_width(w);
    let v =
        per_row_additions(left, split, memo) + per_row_additions(w - left, split, memo) + w as u64;
    memo.insert(w, v);
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rows(w: usize, h: usize, t: usize, s: usize) -> Vec<i64> {
        gdt_pattern(w, h, t, s).unwrap().rows
    }

    #[test]
    fn width_one_is_identity() {
        let img = GrayImage::from_vec(1, 3, vec![4, 5, 6]).unwrap();
        let (j, ops) = gdt_transform(&img).unwrap();
        assert_eq!(j.values(), &[4, 5, 6]);
        assert_eq!(ops.additions, 0);
    }

    #[test]
    fn two_by_two_by_hand() {
        // columns a = (a0, a1), b = (b0, b1)
        let (a0, a1, b0, b1) = (1, 10, 100, 1000);
        let img = GrayImage::from_vec(2, 2, vec![a0, b0, a1, b1]).unwrap();
        let (j, ops) = gdt_transform(&img).unwrap();
        assert_eq!(j.get(0, 0), u64::from(a0 + b0));
        assert_eq!(j.get(1, 0), u64::from(a0 + b1));
        assert_eq!(j.get(0, 1), u64::from(a1 + b1));
        assert_eq!(j.get(1, 1), u64::from(a1 + b0));
        assert_eq!(ops.additions, 4);
    }

    #[test]
    fn pattern_examples() {
        assert_eq!(rows(3, 4, 2, 0), vec![0, 1, 2]);
        assert_eq!(rows(4, 8, 1, 0), vec![0, 0, 1, 1]);
        // 5 = 4 + 1: t_l = ⌊9/4 + 1/2⌋ = 2, t_r = 0, joint step 1
        assert_eq!(rows(5, 8, 3, 0), vec![0, 1, 1, 2, 3]);
        // 5 = 3 + 2: t_l = ⌊3/2 + 1/2⌋ = 2, t_r = 1, s_r = 2
        let balanced = gdt_pattern_with(5, 8, 3, 0, Split::Balanced).unwrap();
        assert_eq!(balanced.rows, vec![0, 1, 2, 2, 3]);
        for w in 1..20 {
            assert_eq!(rows(w, 5, 0, 3), vec![3; w]);
        }
    }

    #[test]
    fn pattern_range_checked() {
        assert!(gdt_pattern(4, 4, 4, 0).is_err());
        assert!(gdt_pattern(4, 4, 0, 4).is_err());
        assert!(gdt_pattern(0, 4, 0, 0).is_err());
    }

    #[test]
    fn halved_strips_halve_the_slope() {
        for m in 1..40usize {
            let w = 2 * m;
            for t in 0..w {
                assert_eq!(part_slopes(w, m, t), (t / 2, t / 2), "w={w} t={t}");
            }
        }
        for q in 1..10 {
            let w = 1usize << q;
            assert_eq!(
                Split::PowerOfTwo.left_width(w),
                Split::Balanced.left_width(w)
            );
        }
    }

    #[test]
    fn residual_rise_is_zero_or_one() {
        for split in [Split::Balanced, Split::PowerOfTwo] {
            for w in 2..200 {
                let left = split.left_width(w);
                for t in 0..w {
                    let (t_l, t_r) = part_slopes(w, left, t);
                    assert!(t_l < left && t_r < w - left);
                    let joint = t as i64 - t_l as i64 - t_r as i64;
                    assert!(joint == 0 || joint == 1, "w={w} t={t}");
                }
            }
        }
    }

    #[test]
    fn split_widths() {
        assert_eq!(Split::Balanced.left_width(5), 3);
        assert_eq!(Split::Balanced.left_width(2), 1);
        let pow2: Vec<_> = [2, 3, 4, 5, 8, 9, 17, 34]
            .map(|w| Split::PowerOfTwo.left_width(w))
            .into();
        assert_eq!(pow2, vec![1, 2, 2, 4, 4, 8, 16, 32]);
    }

    #[test]
    fn opcount_examples() {
        assert_eq!(gdt_opcount(1, 7).additions, 0);
        assert_eq!(gdt_opcount(4, 4).additions, 32);
        assert_eq!(gdt_opcount(3, 1).additions, 5);
        // A(9) = A(8) + A(1) + 9
        assert_eq!(gdt_opcount(9, 1).additions, 33);
        // A(9) = A(5) + A(4) + 9 = 12 + 8 + 9
        assert_eq!(gdt_opcount_with(9, 1, Split::Balanced).additions, 29);
        assert_eq!(gdt_opcount(17, 1).additions, 81);
    }

    #[test]
    fn opcount_matches_execution() {
        for split in [Split::Balanced, Split::PowerOfTwo] {
            for w in 1..40 {
                let img = GrayImage::new(w, 3).unwrap();
                let (_, ops) = gdt_transform_with(&img, split).unwrap();
                assert_eq!(ops, gdt_opcount_with(w, 3, split), "w={w}");
            }
        }
    }

    #[test]
    fn pow2_constant_is_attained_at_seventeen() {
        let c = count_bound_constant();
        assert!((c - 1.165_69).abs() < 1e-5);
        let a17 = gdt_opcount_with(17, 1, Split::PowerOfTwo).additions as f64;
        assert!((a17 / (17.0 * 17f64.log2()) - c).abs() < 1e-12);
    }

    #[test]
    fn full_range_pixels_accumulate_exactly() {
        let img = GrayImage::from_vec(3, 1, vec![u32::MAX; 3]).unwrap();
        let (j, _) = gdt_transform(&img).unwrap();
        assert!(j.values().iter().all(|&v| v == 3 * u64::from(u32::MAX)));
    }
}
