use crate::image::GrayImage;

/// A discrete line: one row per column, unwrapped.
///
/// `intercept` is the `s` parameter of the ideal line the pattern stands for;
/// for dyadic and reference patterns it equals `rows[0]`. Rows may leave
/// `0..wrap_height`; [`Pattern::wrapped`] folds them back cyclically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pattern {
    pub intercept: i64,
    pub rows: Vec<i64>,
    pub wrap_height: usize,
}

impl Pattern {
    pub fn width(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn wrapped(&self, x: usize) -> usize {
        self.rows[x].rem_euclid(self.wrap_height as i64) as usize
    }

    /// No two neighbouring rows differ by more than one.
    pub fn is_continuous(&self) -> bool {
        self.rows.windows(2).all(|p| (p[1] - p[0]).abs() <= 1)
    }

    /// Sum of `img` along the wrapped pattern.
    pub fn sum_over(&self, img: &GrayImage) -> u64 {
        debug_assert_eq!(img.width(), self.width());
        debug_assert_eq!(img.height(), self.wrap_height);
        (0..self.width())
            .map(|x| u64::from(img.get(x, self.wrapped(x))))
            .sum()
    }
}
