use std::path::PathBuf;
use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("state vector has {got} amplitudes, basis has {expected}")]
    DimensionMismatch { got: usize, expected: usize },

    #[error("state vector norm {norm} deviates from 1 beyond tolerance")]
    NotNormalized { norm: f64 },

    #[error("kept factors must form a nonempty proper subset of {{A1, C1, A2, C2}}")]
    InvalidFactorSet,

    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e})")]
    NoConvergence { sweeps: usize, off_norm: f64 },

    #[error("density matrix integrity violated: {0}")]
    Integrity(String),

    #[error("degenerate ground-state candidates (energy gap {gap:e})")]
    DegenerateCandidates { gap: f64 },

    #[error("invalid sweep specification: {0}")]
    InvalidSpec(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
