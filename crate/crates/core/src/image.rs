//! Pixel grids and Hough accumulators.
//!
//! Both grids are stored row-major. Pixel `(x, y)` has `x` growing rightward
//! and `y` growing upward, so row 0 is the bottom row of the picture and the
//! origin sits at the center of the bottom-left pixel. Hough images use the
//! same layout with `t` in place of `x` and `s` in place of `y`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{invalid, Result};

/// Grayscale image with non-negative integer pixels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrayImage {
    width: usize,
    height: usize,
    values: Vec<u32>,
}

impl GrayImage {
    /// Zero-filled image.
    pub fn new(width: usize, height: usize) -> Result<Self> {
        check_shape(width, height)?;
        Ok(Self {
            width,
            height,
            values: vec![0; width * height],
        })
    }

    /// Wraps row-major `values`, bottom row first.
    pub fn from_vec(width: usize, height: usize, values: Vec<u32>) -> Result<Self> {
        check_shape(width, height)?;
        if values.len() != width * height {
            return Err(invalid(format!(
                "expected {} pixel values for a {width}x{height} image, got {}",
                width * height,
                values.len()
            )));
        }
        Ok(Self {
            width,
            height,
            values,
        })
    }

    pub fn from_fn(
        width: usize,
        height: usize,
        mut f: impl FnMut(usize, usize) -> u32,
    ) -> Result<Self> {
        check_shape(width, height)?;
        let mut values = Vec::with_capacity(width * height);
        for y in 0..height {
            for x in 0..width {
                values.push(f(x, y));
            }
        }
        Ok(Self {
            width,
            height,
            values,
        })
    }

    #[inline]
    pub fn width(&self) -> usize {
        self.width
    }

    #[inline]
    pub fn height(&self) -> usize {
        self.height
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> u32 {
        self.values[y * self.width + x]
    }

    #[inline]
    pub fn set(&mut self, x: usize, y: usize, value: u32) {
        self.values[y * self.width + x] = value;
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn max_value(&self) -> u32 {
        self.values.iter().copied().max().unwrap_or(0)
    }

    /// Sum of all pixels.
    pub fn total(&self) -> u64 {
        self.values.iter().map(|&v| u64::from(v)).sum()
    }

    /// Copies the pixels into column-major order, widened to accumulator
    /// precision: entry `x * height + y` holds pixel `(x, y)`.
    pub(crate) fn to_columns(&self) -> Vec<u64> {
        let mut cols = vec![0u64; self.values.len()];
        for (y, row) in self.values.chunks_exact(self.width).enumerate() {
            for (x, &v) in row.iter().enumerate() {
                cols[x * self.height + y] = u64::from(v);
            }
        }
        cols
    }
}

fn check_shape(width: usize, height: usize) -> Result<()> {
    if width == 0 || height == 0 {
        return Err(invalid(format!(
            "image dimensions must be positive, got {width}x{height}"
        )));
    }
    width
        .checked_mul(height)
        .map(|_| ())
        .ok_or_else(|| invalid(format!("image dimensions {width}x{height} overflow")))
}

/// Which transform produced a [`HoughImage`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Dyadic,
    Superpixel,
    Reference,
}

impl Algorithm {
    pub fn tag(self) -> &'static str {
        match self {
            Algorithm::Dyadic => "gdt",
            Algorithm::Superpixel => "sp",
            Algorithm::Reference => "ref",
        }
    }
}

/// Accumulator grid indexed by line parameters `(t, s)`.
///
/// Entry `(t, s)` is the sum of exactly one input pixel per column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HoughImage {
    width: usize,
    height: usize,
    values: Vec<u64>,
    algorithm: Algorithm,
}

impl HoughImage {
    pub(crate) fn from_vec(
        width: usize,
        height: usize,
        values: Vec<u64>,
        algorithm: Algorithm,
    ) -> Self {
        debug_assert_eq!(values.len(), width * height);
        Self {
            width,
            height,
            values,
            algorithm,
        }
    }

    /// Builds a Hough image from column-major data (`t * height + s`).
    pub(crate) fn from_columns(
        width: usize,
        height: usize,
        cols: &[u64],
        algorithm: Algorithm,
    ) -> Self {
        let mut values = vec![0u64; width * height];
        for (t, col) in cols.chunks_exact(height).enumerate() {
            for (s, &v) in col.iter().enumerate() {
                values[s * width + t] = v;
            }
        }
        Self::from_vec(width, height, values, algorithm)
    }

    pub(crate) fn identity(img: &GrayImage, algorithm: Algorithm) -> Self {
        let values = img.values().iter().map(|&v| u64::from(v)).collect();
        Self::from_vec(img.width(), img.height(), values, algorithm)
    }

    #[inline]
    pub fn width(&self) -> usize {
        self.width
    }

    #[inline]
    pub fn height(&self) -> usize {
        self.height
    }

    #[inline]
    pub fn get(&self, t: usize, s: usize) -> u64 {
        self.values[s * self.width + t]
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn algorithm(&self) -> Algorithm {
        self.algorithm
    }

    pub fn max_value(&self) -> u64 {
        self.values.iter().copied().max().unwrap_or(0)
    }

    /// Sum of column `t` over all intercepts.
    pub fn column_sum(&self, t: usize) -> u64 {
        (0..self.height).map(|s| self.get(t, s)).sum()
    }
}

/// Deterministic image with pixels drawn uniformly from `0..=max_value`.
pub fn random_image(width: usize, height: usize, max_value: u32, seed: u64) -> Result<GrayImage> {
    check_shape(width, height)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let values = (0..width * height)
        .map(|_| rng.gen_range(0..=max_value))
        .collect();
    GrayImage::from_vec(width, height, values)
}

/// Rejects images whose worst-case line sum (one pixel per column over
/// `columns` columns) would not fit the accumulator.
pub(crate) fn check_accumulator(max_value: u32, columns: usize) -> Result<()> {
    u64::from(max_value)
        .checked_mul(columns as u64)
        .map(|_| ())
        .ok_or_else(|| {
            crate::Error::Capacity(format!(
                "max pixel {max_value} times {columns} columns overflows a 64-bit accumulator"
            ))
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_dimensions_rejected() {
        assert!(GrayImage::new(0, 3).is_err());
        assert!(GrayImage::new(3, 0).is_err());
        assert!(GrayImage::from_vec(2, 2, vec![1, 2, 3]).is_err());
    }

    #[test]
    fn columns_are_transposed() {
        let img = GrayImage::from_vec(2, 3, vec![1, 2, 3, 4, 5, 6]).unwrap();
        assert_eq!(img.to_columns(), vec![1, 3, 5, 2, 4, 6]);
        let h = HoughImage::from_columns(2, 3, &img.to_columns(), Algorithm::Dyadic);
        assert_eq!(h.values(), &[1, 2, 3, 4, 5, 6]);
    }

    #[test]
    fn random_zero_max_is_blank() {
        let img = random_image(4, 4, 0, 1).unwrap();
        assert!(img.values().iter().all(|&v| v == 0));
    }

    #[test]
    fn random_is_deterministic() {
        assert_eq!(
            random_image(7, 5, 1000, 9).unwrap(),
            random_image(7, 5, 1000, 9).unwrap()
        );
        assert_ne!(
            random_image(7, 5, 1000, 9).unwrap(),
            random_image(7, 5, 1000, 10).unwrap()
        );
    }

    #[test]
    fn random_respects_range() {
        let img = random_image(8, 8, 255, 42).unwrap();
        assert!(img.values().iter().all(|&v| v <= 255));
        // 64 draws from 256 values should not all coincide
        assert!(img.max_value() > 0);
    }

    #[test]
    fn accumulator_capacity() {
        assert!(check_accumulator(u32::MAX, 1 << 20).is_ok());
        assert!(check_accumulator(u32::MAX, usize::MAX).is_err());
    }
}
