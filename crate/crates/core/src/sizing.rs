//! Choosing the superpixel size for a target accuracy.
//!
//! A centered odd `x̂ x x̂` superpixel keeps the orthotropic error of the
//! superpixel transform below `λ + 1/2` as soon as
//!
//! ```text
//! 2 log₂(w x̂) + 13 < 12 λ x̂.
//! ```
//!
//! The smallest odd solution grows like `O(ln w)`. The real equation has the
//! closed-form larger root `x* = -W₋₁(-3λ ln2 / (32√2 w)) / (6λ ln2)`, which
//! [`lambert_root`] evaluates as a cross-check of the bisection.

use crate::error::{invalid, Result};
use crate::superpixel::SuperpixelSpec;

const ROOT_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SizingResult {
    pub lambda: f64,
    /// Smallest odd `x` meeting the condition.
    pub chosen_size: usize,
    /// `2 log₂(w x̂) + 13`.
    pub condition_lhs: f64,
    /// `12 λ x̂`.
    pub condition_rhs: f64,
    /// Larger real solution of `2 log₂(w x) + 13 = 12 λ x`.
    pub real_root: f64,
}

fn check_args(w: usize, lambda: f64) -> Result<()> {
    if w < 2 {
        return Err(invalid(format!(
            "superpixel sizing needs width >= 2, got {w}"
        )));
    }
    if !(lambda > 0.0 && lambda <= 1.0) {
        return Err(invalid(format!("lambda must lie in (0, 1], got {lambda}")));
    }
    Ok(())
}

#[inline]
fn lhs(w: usize, x: f64) -> f64 {
    2.0 * (w as f64 * x).log2() + 13.0
}

/// `12 λ x - 2 log₂(w x) - 13`; positive exactly where the condition holds.
#[inline]
fn margin(w: usize, lambda: f64, x: f64) -> f64 {
    12.0 * lambda * x - lhs(w, x)
}

/// Whether an `x`-sized superpixel meets the accuracy condition for width `w`.
pub fn meets_condition(w: usize, lambda: f64, x: usize) -> bool {
    lhs(w, x as f64) < 12.0 * lambda * x as f64
}

pub fn superpixel_size(w: usize, lambda: f64) -> Result<SizingResult> {
    check_args(w, lambda)?;
    let mut x = 1;
    while !meets_condition(w, lambda, x) {
        x += 2;
    }
    Ok(SizingResult {
        lambda,
        chosen_size: x,
        condition_lhs: lhs(w, x as f64),
        condition_rhs: 12.0 * lambda * x as f64,
        real_root: larger_root(w, lambda, x),
    })
}

// The margin is convex in x and negative at x = 1 for w >= 2 and λ <= 1, so
// the condition fails on [1, x*] and holds beyond; doubling finds a bracket
// and the odd scan result tightens it to [x̂ - 2, x̂].
fn larger_root(w: usize, lambda: f64, chosen: usize) -> f64 {
    let f = |x: f64| margin(w, lambda, x);
    let (mut lo, mut hi) = (1.0, 2.0);
    while f(hi) <= 0.0 {
        lo = hi;
        hi *= 2.0;
    }
    if chosen >= 3 {
        lo = f64::max(lo, (chosen - 2) as f64);
    }
    hi = f64::min(hi, chosen as f64);
    while hi - lo > ROOT_TOLERANCE {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Square centered superpixel of the size chosen by [`superpixel_size`].
pub fn spec_from_lambda(w: usize, lambda: f64) -> Result<SuperpixelSpec> {
    SuperpixelSpec::centered(superpixel_size(w, lambda)?.chosen_size)
}

/// Lower real branch `W₋₁` of the Lambert W function on `[-1/e, 0)`.
pub fn lambert_w_m1(z: f64) -> Option<f64> {
    let branch_point = -(-1f64).exp();
    if !(z >= branch_point && z < 0.0) {
        return None;
    }
    if z == branch_point {
        return Some(-1.0);
    }
    let mut w = if z < -0.25 {
        // series about the branch point
        let p = -(2.0 * (1.0 + std::f64::consts::E * z)).sqrt();
        -1.0 + p - p * p / 3.0
    } else {
        let l1 = (-z).ln();
        let l2 = (-l1).ln();
        l1 - l2 + l2 / l1
    };
    for _ in 0..64 {
        let ew = w.exp();
        let f = w * ew - z;
        let step = f / (ew * (w + 1.0) - (w + 2.0) * f / (2.0 * w + 2.0));
        w -= step;
        if step.abs() <= 1e-15 * w.abs() {
            break;
        }
    }
    Some(w)
}

/// Closed-form larger root of `2 log₂(w x) + 13 = 12 λ x`.
pub fn lambert_root(w: usize, lambda: f64) -> Option<f64> {
    let c = 6.0 * lambda * std::f64::consts::LN_2;
    let z = -3.0 * lambda * std::f64::consts::LN_2 / (32.0 * std::f64::consts::SQRT_2 * w as f64);
    lambert_w_m1(z).map(|w| -w / c)
}
