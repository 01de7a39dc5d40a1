use thiserror::Error;

/// Errors raised by the spectral library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not unitary: ||W^dagger W - I||_F = {residual:e}")]
    NotUnitary { residual: f64 },

    #[error("U(2) chart violates the S^3 constraint: |m0^2 + |m|^2 - 1| = {residual:e}")]
    ChartConstraint { residual: f64 },

    #[error("unknown boundary-condition family `{0}`")]
    UnknownFamily(String),

    #[error("malformed boundary-condition spec `{spec}`: {reason}")]
    MalformedSpec { spec: String, reason: String },

    #[error("energy {mu} is a mass mode; use the mass-mode matrix")]
    MassMode { mu: f64 },

    #[error("mass-mode matrix undefined for mu0 = {mu0}")]
    MasslessModes { mu0: f64 },

    #[error("energy {mu} lies at mu = -mu0 where the A± ratio diverges")]
    RatioSingular { mu: f64 },

    #[error("spectral-function pole at {mu}")]
    Pole { mu: f64 },

    #[error("{count} coincident roots near {mu}; at most 2 are possible for a 2x2 boundary matrix")]
    MultiplicityOverflow { mu: f64, count: usize },

    #[error("invalid window ({min}, {max}]")]
    InvalidWindow { min: f64, max: f64 },

    #[error("invalid search option: {0}")]
    InvalidOption(String),

    #[error("spectrum slices are not comparable: {0}")]
    SliceMismatch(String),

    #[error("invalid Clifford representation: {0}")]
    InvalidRep(String),

    #[error("invalid physical configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;
