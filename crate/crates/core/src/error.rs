use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("state has non-finite amplitude")]
    NonFinite,
    #[error("state norm {norm} is not within 1e-6 of 1")]
    NotNormalized { norm: f64 },
    #[error("tolerance must be non-negative and finite, got {0}")]
    InvalidTolerance(f64),
    #[error("invalid gate: {0}")]
    InvalidGate(String),
    #[error("{what} = {value} is outside its domain {domain}")]
    Domain {
        what: &'static str,
        value: f64,
        domain: &'static str,
    },
    #[error("torus angle undefined at d = {d} (state lies on a maximally entangled circle)")]
    DegenerateAngle { d: f64 },
    #[error(
        "ORBIT_MISMATCH: entanglement distances differ ({source_d} vs {target_d}); \
         states are not connected by local gates"
    )]
    OrbitMismatch { source_d: f64, target_d: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
