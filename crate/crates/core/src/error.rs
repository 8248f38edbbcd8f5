use std::io;

use thiserror::Error;

/// Errors produced by image I/O, transforms and parameter validation.
#[derive(Debug, Error)]
pub enum Error {
    #[error("graymap parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("pixel value {value} at ({x}, {y}) exceeds the graymap limit 65535")]
    Range { value: u32, x: usize, y: usize },

    #[error("capacity exceeded: {0}")]
    Capacity(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(transparent)]
    Io(#[from] io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
