//! Error type shared by every module.

use thiserror::Error;

/// Failures raised by the numerical routines and the lab runner.
#[derive(Debug, Error)]
pub enum Error {
    #[error("point is not on the real phase space Λ (residual {residual:.3e})")]
    NotOnLambda { residual: f64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("weight is not strictly plurisubharmonic: {0}")]
    NotPlurisubharmonic(String),
    #[error("function is not in the weighted space: {0}")]
    NotIntegrable(String),
    #[error("incompatible operands: {0}")]
    Incompatible(String),
    #[error("numerical conditioning: {0}")]
    Conditioning(String),
    #[error("quadrature did not converge: {0}")]
    Quadrature(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code used by the command line runner.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Invariant(_) => 1,
            Error::Config(_) | Error::InvalidParameter(_) | Error::Io(_) => 2,
            Error::Conditioning(_) | Error::Quadrature(_) => 3,
            Error::NotOnLambda { .. }
            | Error::NotPlurisubharmonic(_)
            | Error::NotIntegrable(_)
            | Error::Incompatible(_) => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
