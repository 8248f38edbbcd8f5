//! Accuracy and cost measurements.
//!
//! Errors are orthotropic: the largest vertical distance, over the columns of
//! the image, between a pattern and the ideal line `s + t x / (w - 1)` it
//! stands for. All errors are exact rationals. Sweeps fix `s = 0`, which
//! loses nothing because every pattern family here is translation
//! equivariant in `s`.

use rayon::prelude::*;

use crate::dyadic::{gdt_opcount_with, gdt_pattern_with, Split};
use crate::error::{invalid, Result};
use crate::pattern::Pattern;
use crate::rational::Rational;
use crate::reference::ref_pattern;
use crate::sizing::{spec_from_lambda, superpixel_size};
use crate::superpixel::{sp_opcount_with, sp_pattern_with, SuperpixelSpec};

/// `max_x |s + t x / (w - 1) - rows[x]|` with `s` the pattern intercept.
pub fn ortho_error(pattern: &Pattern, t: usize) -> Rational {
    let w = pattern.width();
    if w <= 1 {
        return Rational::from(0);
    }
    let den = (w - 1) as i64;
    let s = pattern.intercept;
    let worst = pattern
        .rows
        .iter()
        .enumerate()
        .map(|(x, &r)| (s * den + t as i64 * x as i64 - r * den).abs())
        .max()
        .unwrap_or(0);
    Rational::new(worst, den)
}

/// Pattern family measured by [`error_sweep`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SweepAlgorithm {
    Dyadic,
    /// Superpixel transform with the square centered size chosen for `λ`.
    SuperpixelLambda(f64),
    SuperpixelFixed(SuperpixelSpec),
    Reference,
}

impl SweepAlgorithm {
    pub fn tag(&self) -> &'static str {
        match self {
            SweepAlgorithm::Dyadic => "gdt",
            SweepAlgorithm::SuperpixelLambda(_) | SweepAlgorithm::SuperpixelFixed(_) => "sp",
            SweepAlgorithm::Reference => "ref",
        }
    }

    pub fn lambda(&self) -> Option<f64> {
        match *self {
            SweepAlgorithm::SuperpixelLambda(l) => Some(l),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ErrorReport {
    pub algorithm: SweepAlgorithm,
    pub width: usize,
    pub height: usize,
    /// Superpixel used, for the superpixel families.
    pub spec: Option<SuperpixelSpec>,
    /// Largest error over `x` for each `t`.
    pub per_t: Vec<Rational>,
    pub global_max: Rational,
}

pub fn error_sweep(algorithm: SweepAlgorithm, sizes: &[usize]) -> Result<Vec<ErrorReport>> {
    error_sweep_with(algorithm, sizes, Split::default())
}

/// Maximum orthotropic error of `algorithm` on `n x n` images for each `n`.
pub fn error_sweep_with(
    algorithm: SweepAlgorithm,
    sizes: &[usize],
    split: Split,
) -> Result<Vec<ErrorReport>> {
    sizes
        .iter()
        .map(|&n| error_report(algorithm, n, split))
        .collect()
}

fn error_report(algorithm: SweepAlgorithm, n: usize, split: Split) -> Result<ErrorReport> {
    if n == 0 {
        return Err(invalid("sweep sizes must be positive"));
    }
    let spec = match algorithm {
        SweepAlgorithm::SuperpixelLambda(_) if n == 1 => Some(SuperpixelSpec::unit()),
        SweepAlgorithm::SuperpixelLambda(lambda) => Some(spec_from_lambda(n, lambda)?),
        SweepAlgorithm::SuperpixelFixed(spec) => Some(spec),
        _ => None,
    };
    let per_t = (0..n)
        .into_par_iter()
        .map(|t| {
            let pattern = match spec {
                Some(spec) => sp_pattern_with(n, n, spec, t, 0, split)?,
                None if algorithm == SweepAlgorithm::Reference => ref_pattern(n, t, 0)?,
                None => gdt_pattern_with(n, n, t, 0, split)?,
            };
            Ok(ortho_error(&pattern, t))
        })
        .collect::<Result<Vec<_>>>()?;
    let global_max = per_t.iter().copied().max().unwrap_or_default();
    Ok(ErrorReport {
        algorithm,
        width: n,
        height: n,
        spec,
        per_t,
        global_max,
    })
}

/// Addition count of one configuration and its normalized value.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ComplexityPoint {
    pub n: usize,
    pub lambda: Option<f64>,
    /// Superpixel side, 1 for the plain dyadic transform.
    pub sp_size: usize,
    pub additions: u64,
    /// `T / (n² ln³ n)` for superpixel points, `T / (n² log₂ n)` for dyadic.
    pub normalized: f64,
}

impl ComplexityPoint {
    pub fn normalizer(&self) -> f64 {
        let n = self.n as f64;
        match self.lambda {
            Some(_) => n * n * n.ln().powi(3),
            None => n * n * n.log2(),
        }
    }
}

pub fn complexity_sweep(lambdas: &[f64], sizes: &[usize]) -> Result<Vec<ComplexityPoint>> {
    complexity_sweep_with(lambdas, sizes, Split::default())
}

/// Analytic addition counts of the superpixel transform on `n x n` images
/// with the size chosen for each `λ`. Nothing is executed, so large `n` is
/// cheap.
pub fn complexity_sweep_with(
    lambdas: &[f64],
    sizes: &[usize],
    split: Split,
) -> Result<Vec<ComplexityPoint>> {
    let mut out = Vec::with_capacity(lambdas.len() * sizes.len());
    for &lambda in lambdas {
        for &n in sizes {
            let spec = spec_from_lambda(n, lambda)?;
            let additions = sp_opcount_with(n, n, spec, split).additions;
            let mut point = ComplexityPoint {
                n,
                lambda: Some(lambda),
                sp_size: spec.sp_width(),
                additions,
                normalized: 0.0,
            };
            point.normalized = additions as f64 / point.normalizer();
            out.push(point);
        }
    }
    Ok(out)
}

/// Analytic addition counts of the plain dyadic transform on `n x n` images.
pub fn dyadic_complexity(sizes: &[usize], split: Split) -> Result<Vec<ComplexityPoint>> {
    sizes
        .iter()
        .map(|&n| {
            if n < 2 {
                return Err(invalid(format!("normalized counts need n >= 2, got {n}")));
            }
            let additions = gdt_opcount_with(n, n, split).additions;
            let mut point = ComplexityPoint {
                n,
                lambda: None,
                sp_size: 1,
                additions,
                normalized: 0.0,
            };
            point.normalized = additions as f64 / point.normalizer();
            Ok(point)
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SizePoint {
    pub n: usize,
    pub lambda: f64,
    pub sp_size: usize,
}

/// Superpixel size over a grid of widths and accuracy targets.
pub fn size_curve(lambdas: &[f64], sizes: &[usize]) -> Result<Vec<SizePoint>> {
    let mut out = Vec::with_capacity(lambdas.len() * sizes.len());
    for &lambda in lambdas {
        for &n in sizes {
            out.push(SizePoint {
                n,
                lambda,
                sp_size: superpixel_size(n, lambda)?.chosen_size,
            });
        }
    }
    Ok(out)
}

/// Largest `x̂(n, λ) / ln n` over `sizes`; bounded when the size grows
/// logarithmically.
pub fn log_growth_constant(lambda: f64, sizes: &[usize]) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for &n in sizes {
        let x = superpixel_size(n, lambda)?.chosen_size as f64;
        worst = worst.max(x / (n as f64).ln());
    }
    Ok(worst)
}
