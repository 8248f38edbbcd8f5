//! Shepp–Logan head phantom rasterized onto an integer grid.

use crate::image::GrayImage;

/// Axis-aligned-then-rotated ellipse in phantom coordinates, where the
/// phantom occupies `[-1, 1] x [-1, 1]` with `y` pointing up.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Ellipse {
    pub intensity: f64,
    /// Semi-axis along the ellipse's own x direction.
    pub semi_x: f64,
    pub semi_y: f64,
    pub center_x: f64,
    pub center_y: f64,
    /// Counter-clockwise rotation in degrees.
    pub angle_deg: f64,
}

impl Ellipse {
    const fn new(
        intensity: f64,
        semi_x: f64,
        semi_y: f64,
        center_x: f64,
        center_y: f64,
        angle_deg: f64,
    ) -> Self {
        Self {
            intensity,
            semi_x,
            semi_y,
            center_x,
            center_y,
            angle_deg,
        }
    }

    pub fn contains(&self, x: f64, y: f64) -> bool {
        let (sin, cos) = self.angle_deg.to_radians().sin_cos();
        let dx = x - self.center_x;
        let dy = y - self.center_y;
        let u = dx * cos + dy * sin;
        let v = -dx * sin + dy * cos;
        (u / self.semi_x).powi(2) + (v / self.semi_y).powi(2) <= 1.0
    }
}

/// The original ten-ellipse Shepp–Logan table (additive intensities).
pub const SHEPP_LOGAN: [Ellipse; 10] = [
    Ellipse::new(2.0, 0.69, 0.92, 0.0, 0.0, 0.0),
    Ellipse::new(-0.98, 0.6624, 0.874, 0.0, -0.0184, 0.0),
    Ellipse::new(-0.02, 0.11, 0.31, 0.22, 0.0, -18.0),
    Ellipse::new(-0.02, 0.16, 0.41, -0.22, 0.0, 18.0),
    Ellipse::new(0.01, 0.21, 0.25, 0.0, 0.35, 0.0),
    Ellipse::new(0.01, 0.046, 0.046, 0.0, 0.1, 0.0),
    Ellipse::new(0.01, 0.046, 0.046, 0.0, -0.1, 0.0),
    Ellipse::new(0.01, 0.046, 0.023, -0.08, -0.605, 0.0),
    Ellipse::new(0.01, 0.023, 0.023, 0.0, -0.606, 0.0),
    Ellipse::new(0.01, 0.023, 0.046, 0.06, -0.605, 0.0),
];

/// Peak phantom intensity (the skull ring), mapped to 255.
const PEAK_INTENSITY: f64 = 2.0;

/// Renders the Shepp–Logan phantom on an `n x n` grid with intensities
/// scaled to `0..=255`.
pub fn shepp_logan(n: usize) -> GrayImage {
    render_ellipses(n, &SHEPP_LOGAN)
}

/// Rasterizes a sum of ellipses by testing each pixel center.
///
/// Pixel `(x, y)` has its center at `((2x + 1 - n) / n, (2y + 1 - n) / n)`,
/// which makes the grid exactly mirror-symmetric about the vertical axis.
pub fn render_ellipses(n: usize, ellipses: &[Ellipse]) -> GrayImage {
    assert!(n >= 1, "phantom size must be positive");
    let coord = |i: usize| (2.0 * i as f64 + 1.0 - n as f64) / n as f64;
    GrayImage::from_fn(n, n, |x, y| {
        let (px, py) = (coord(x), coord(y));
        let density: f64 = ellipses
            .iter()
            .filter(|e| e.contains(px, py))
            .map(|e| e.intensity)
            .sum();
        scale(density)
    })
    .expect("n >= 1")
}

fn scale(density: f64) -> u32 {
    let v = (density * 255.0 / PEAK_INTENSITY + 0.5).floor();
    v.clamp(0.0, 255.0) as u32
}

#[cfg(test)]
mod tests {
    use super::*;

    // Evaluates the ellipse sum at a point without going through the grid.
    fn density_at(x: f64, y: f64) -> f64 {
        SHEPP_LOGAN
            .iter()
            .filter(|e| e.contains(x, y))
            .map(|e| e.intensity)
            .sum()
    }

    #[test]
    fn corners_are_empty() {
        // at n = 2 the pixel centers (±1/2, ±1/2) still fall inside the skull
        for n in [3usize, 4, 17, 64, 256] {
            let img = shepp_logan(n);
            for (x, y) in [(0, 0), (n - 1, 0), (0, n - 1), (n - 1, n - 1)] {
                assert_eq!(img.get(x, y), 0, "n={n}");
            }
        }
        assert_eq!(shepp_logan(2).get(0, 0), scale(density_at(-0.5, -0.5)));
        assert!(shepp_logan(2).get(0, 0) > 0);
    }

    #[test]
    fn center_matches_point_sum() {
        // 2 - 0.98 at the origin; no inner ellipse reaches it
        let expected = scale(density_at(0.0, 0.0));
        assert_eq!(expected, 130);
        assert_eq!(shepp_logan(1).get(0, 0), expected);
        let img = shepp_logan(256);
        assert_eq!(
            img.get(128, 128),
            scale(density_at(1.0 / 256.0, 1.0 / 256.0))
        );
        assert_eq!(img.get(128, 128), 130);
    }

    #[test]
    fn outer_ellipses_are_mirror_symmetric() {
        let n = 101;
        let img = render_ellipses(n, &SHEPP_LOGAN[..2]);
        for y in 0..n {
            for x in 0..n {
                assert_eq!(img.get(x, y), img.get(n - 1 - x, y), "({x}, {y})");
            }
        }
        let even = render_ellipses(64, &SHEPP_LOGAN[..2]);
        for y in 0..64 {
            for x in 0..64 {
                assert_eq!(even.get(x, y), even.get(63 - x, y));
            }
        }
    }

    #[test]
    fn skull_is_brightest() {
        let img = shepp_logan(128);
        assert_eq!(img.max_value(), 255);
    }

    #[test]
    fn deterministic() {
        assert_eq!(shepp_logan(40), shepp_logan(40));
    }
}
