use thiserror::Error;

/// Errors raised by the numerical routines of this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error(
        "empty energy window [{lo}, {hi}]: no eigenvalue inside, nearest eigenvalue is {nearest}"
    )]
    EmptyWindow { lo: f64, hi: f64, nearest: f64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid fit window: {0}")]
    InvalidWindow(String),
}

impl Error {
    /// True for errors caused by evaluating a function outside its numeric domain.
    pub fn is_domain(&self) -> bool {
        matches!(self, Error::Domain(_) | Error::EmptyWindow { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
