//! Exact rational helpers for line geometry.

use num_rational::Ratio;
use num_traits::ToPrimitive;

pub type Rational = Ratio<i64>;

/// `⌊num / den + 1/2⌋` for `den > 0`: nearest integer, ties upward.
#[inline]
pub fn round_half_up(num: i64, den: i64) -> i64 {
    debug_assert!(den > 0);
    (2 * num + den).div_euclid(2 * den)
}

/// Nearest integer to `r`, ties upward.
pub fn round_ratio(r: Rational) -> i64 {
    round_half_up(*r.numer(), *r.denom())
}

pub fn to_f64(r: Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ties_round_up() {
        assert_eq!(round_half_up(1, 2), 1);
        assert_eq!(round_half_up(3, 2), 2);
        assert_eq!(round_half_up(-1, 2), 0);
        assert_eq!(round_half_up(-3, 2), -1);
        assert_eq!(round_half_up(9, 2), 5);
    }

    #[test]
    fn non_ties_round_to_nearest() {
        assert_eq!(round_half_up(1, 3), 0);
        assert_eq!(round_half_up(2, 3), 1);
        assert_eq!(round_half_up(-2, 3), -1);
        assert_eq!(round_half_up(15, 7), 2);
        assert_eq!(round_ratio(Rational::new(-1, 3)), 0);
    }
}
