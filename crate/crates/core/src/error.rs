use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("cotangent pole: |sin delta| = {sin_delta:e} below floor {floor:e} at k = {k}")]
    CotangentPole { k: f64, sin_delta: f64, floor: f64 },

    #[error("momentum must be positive and finite, got k = {0}")]
    InvalidMomentum(f64),

    #[error("invalid target: {0}")]
    InvalidTarget(String),

    #[error("invalid direction: {0}")]
    InvalidDirection(String),

    #[error("unknown preset `{0}` (expected CH, C2 or a path to a target JSON file)")]
    UnknownPreset(String),

    #[error("preset `{0}` needs an explicit internuclear distance")]
    MissingSeparation(String),

    #[error("malformed target JSON at line {line}, column {column}: {message}")]
    MalformedJson { line: usize, column: usize, message: String },

    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },

    #[error("negative discriminant {discriminant:e} beyond clamp band {band:e} at k = {k}")]
    NegativeDiscriminant { k: f64, discriminant: f64, band: f64 },

    #[error("singular boundary-condition matrix (scattering resonance) at k = {0}")]
    SingularSystem(f64),

    #[error("quadrature rule order {0} outside 2..=4096")]
    QuadratureOrder(usize),

    #[error("integrand is not finite at node u = {node} (value {value})")]
    NonFiniteIntegrand { node: f64, value: f64 },

    #[error("extrapolation did not converge: error estimate {estimate:e} exceeds {tolerance:e}")]
    NotConverged { estimate: f64, tolerance: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub(crate) fn check_momentum(k: f64) -> Result<()> {
    if k > 0.0 && k.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidMomentum(k))
    }
}
