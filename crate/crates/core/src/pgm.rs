//! Portable graymap (PGM) reading and writing.
//!
//! Reads ASCII (`P2`) and binary (`P5`) graymaps with `maxval` up to 65535 and
//! writes binary graymaps. The first scanline of a file is the top of the
//! picture, so it lands in row `height - 1` of a [`GrayImage`].

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::image::GrayImage;

pub const MAX_GRAYMAP_VALUE: u32 = 65535;

pub fn load_graymap(path: impl AsRef<Path>) -> Result<GrayImage> {
    let bytes = fs::read(path)?;
    decode_graymap(&bytes)
}

/// Writes `img` as a binary graymap with `maxval = max(1, max pixel)`.
pub fn save_graymap(img: &GrayImage, path: impl AsRef<Path>) -> Result<()> {
    let bytes = encode_graymap(img)?;
    fs::write(path, bytes)?;
    Ok(())
}

pub fn encode_graymap(img: &GrayImage) -> Result<Vec<u8>> {
    let (w, h) = (img.width(), img.height());
    let mut maxval = 1;
    for y in 0..h {
        for x in 0..w {
            let v = img.get(x, y);
            if v > MAX_GRAYMAP_VALUE {
                return Err(Error::Range { value: v, x, y });
            }
            maxval = maxval.max(v);
        }
    }

    let header = format!("P5\n{w} {h}\n{maxval}\n");
    let wide = maxval > 255;
    let mut out = Vec::with_capacity(header.len() + w * h * if wide { 2 } else { 1 });
    out.extend_from_slice(header.as_bytes());
    for y in (0..h).rev() {
        for x in 0..w {
            let v = img.get(x, y);
            if wide {
                out.extend_from_slice(&(v as u16).to_be_bytes());
            } else {
                out.push(v as u8);
            }
        }
    }
    Ok(out)
}

pub fn decode_graymap(bytes: &[u8]) -> Result<GrayImage> {
    let mut cur = Cursor { bytes, pos: 0 };
    let binary = match bytes.get(..2) {
        Some(b"P5") => true,
        Some(b"P2") => false,
        _ => return Err(cur.error("expected magic \"P5\" or \"P2\"")),
    };
    cur.pos = 2;

    let width = cur.header_number("width")?;
    let height = cur.header_number("height")?;
    let maxval = cur.header_number("maxval")?;
    if width == 0 || height == 0 {
        return Err(cur.error("image dimensions must be positive"));
    }
    if maxval == 0 || maxval > MAX_GRAYMAP_VALUE as usize {
        return Err(cur.error(format!("maxval {maxval} outside 1..=65535")));
    }
    let maxval = maxval as u32;
    let count = width
        .checked_mul(height)
        .ok_or_else(|| cur.error("image dimensions overflow"))?;

    let mut samples = Vec::with_capacity(count);
    if binary {
        // exactly one whitespace byte separates the header from the raster
        match cur.peek() {
            Some(b) if b.is_ascii_whitespace() => cur.pos += 1,
            _ => return Err(cur.error("expected whitespace after maxval")),
        }
        let sample_len = if maxval > 255 { 2 } else { 1 };
        let needed = count * sample_len;
        if bytes.len() - cur.pos < needed {
            return Err(Error::Parse {
                offset: bytes.len(),
                message: format!(
                    "truncated raster: need {needed} bytes, found {}",
                    bytes.len() - cur.pos
                ),
            });
        }
        for i in 0..count {
            let at = cur.pos + i * sample_len;
            let v = if sample_len == 2 {
                u32::from(u16::from_be_bytes([bytes[at], bytes[at + 1]]))
            } else {
                u32::from(bytes[at])
            };
            if v > maxval {
                return Err(Error::Parse {
                    offset: at,
                    message: format!("sample {v} exceeds maxval {maxval}"),
                });
            }
            samples.push(v);
        }
    } else {
        for _ in 0..count {
            cur.skip_space();
            let at = cur.pos;
            if cur.peek().is_none() {
                return Err(cur.error(format!(
                    "truncated raster: expected {count} samples, found {}",
                    samples.len()
                )));
            }
            let v = cur.number()?;
            if v > maxval as usize {
                return Err(Error::Parse {
                    offset: at,
                    message: format!("sample {v} exceeds maxval {maxval}"),
                });
            }
            samples.push(v as u32);
        }
    }

    // file order is top scanline first
    let mut values = vec![0u32; count];
    for (row, line) in samples.chunks_exact(width).enumerate() {
        let y = height - 1 - row;
        values[y * width..(y + 1) * width].copy_from_slice(line);
    }
    GrayImage::from_vec(width, height, values)
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Cursor<'_> {
    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            offset: self.pos,
            message: message.into(),
        }
    }

    /// Skips whitespace and `#` comments.
    fn skip_space(&mut self) {
        while let Some(b) = self.peek() {
            if b == b'#' {
                while let Some(c) = self.peek() {
                    self.pos += 1;
                    if c == b'\n' || c == b'\r' {
                        break;
                    }
                }
            } else if b.is_ascii_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn header_number(&mut self, what: &str) -> Result<usize> {
        let before = self.pos;
        self.skip_space();
        if self.pos == before {
            return Err(self.error(format!("expected whitespace before {what}")));
        }
        self.number()
            .map_err(|_| self.error(format!("expected decimal {what}")))
    }

    fn number(&mut self) -> Result<usize> {
        let start = self.pos;
        let mut value: usize = 0;
        while let Some(b) = self.peek().filter(u8::is_ascii_digit) {
            value = value
                .checked_mul(10)
                .and_then(|v| v.checked_add(usize::from(b - b'0')))
                .ok_or_else(|| self.error("number too large"))?;
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error("expected a decimal number"));
        }
        Ok(value)
    }
}
