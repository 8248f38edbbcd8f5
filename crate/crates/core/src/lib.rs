//! Fast Hough transforms over predominantly horizontal lines.
//!
//! The crate provides three transforms that share the `(t, s)` line
//! parametrization, where a line starts at row `s` in column 0 and rises by
//! `t` rows across the image width:
//!
//! * [`dyadic`]: a generalized Brady–Yong transform for arbitrary widths,
//!   linearithmic in the number of additions.
//! * [`superpixel`]: the superpixel transform, which expands every pixel into a
//!   block with a single non-zero column, runs the dyadic transform on the
//!   expanded grid and subsamples the result. With a suitably sized block the
//!   orthotropic error stays below `λ + 1/2` for any image size.
//! * [`reference`]: direct summation along rounded ideal lines, with error at
//!   most `1/2` and cubic cost. Used as the accuracy baseline.
//!
//! [`analysis`] measures pattern errors in exact rational arithmetic and
//! tabulates addition counts and superpixel sizes.

pub mod analysis;
pub mod dyadic;
mod error;
pub mod image;
pub mod pattern;
pub mod pgm;
pub mod phantom;
pub mod rational;
pub mod reference;
pub mod sizing;
pub mod superpixel;

pub use dyadic::{gdt_opcount, gdt_pattern, gdt_transform, OpCount, Split};
pub use error::{Error, Result};
pub use image::{random_image, Algorithm, GrayImage, HoughImage};
pub use pattern::Pattern;
pub use pgm::{load_graymap, save_graymap};
pub use phantom::shepp_logan;
pub use reference::{ref_pattern, ref_transform};
pub use sizing::{spec_from_lambda, superpixel_size, SizingResult};
pub use superpixel::{
    expand, remap_params, sp_opcount, sp_pattern, sp_transform, RemappedParams, SpOptions,
    SuperpixelSpec,
};
