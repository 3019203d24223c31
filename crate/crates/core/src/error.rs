//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("configuration error: {0}")]
    Config(String),

    #[error("scene validation failed: {0}")]
    Scene(String),

    #[error("point ({0}, {1}, {2}) um is outside the simulation domain")]
    OutOfDomain(f64, f64, f64),

    #[error("grid too coarse: {0}")]
    Resolution(String),

    #[error("field divergence (non-finite values) detected at step {step}")]
    Divergence { step: u64 },

    #[error("quadrature failed to converge: {0}")]
    Quadrature(String),

    #[error("monitor error: {0}")]
    Monitor(String),

    #[error("sweep error: {0}")]
    Sweep(String),

    #[error("missing input: {0}")]
    MissingInput(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
