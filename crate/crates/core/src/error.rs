use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// `W1 = a·V1 − b` came out non-positive; the geometry/frequency pair is
    /// outside the validity of the coupling approximation.
    #[error("W1 = {w1} is not positive for V1 = {v1}; geometry outside model validity")]
    NonPositiveW { v1: f64, w1: f64 },

    #[error(
        "U1^2 = {u1_sq} is negative for V1 = {v1}, W1 = {w1}; not a guided single-mode solution"
    )]
    NegativeU { v1: f64, w1: f64, u1_sq: f64 },

    #[error("curve `{curve}` is not defined at {f_thz} THz (covers {lo_thz}..={hi_thz} THz)")]
    MissingCurve {
        curve: String,
        f_thz: f64,
        lo_thz: f64,
        hi_thz: f64,
    },

    #[error("unknown fiber `{0}`")]
    UnknownFiber(String),

    #[error(transparent)]
    Topology(#[from] crate::net::TopologyError),

    #[error("no path between `{src}` and `{dst}`")]
    NoPath { src: String, dst: String },

    #[error("{path}: {message}")]
    File { path: PathBuf, message: String },

    #[error("configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
