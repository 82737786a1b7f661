use std::fmt;

use thiserror::Error;

/// Why a `(type, q, ℓ)` triple was rejected.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RegimeReason {
    /// ℓ does not divide the order of the Coxeter torus.
    NotDividing,
    /// ℓ divides the order of the fixed-point Weyl group.
    DividesWeylOrder,
    /// q (or q^δ) does not have the expected multiplicative order mod ℓ.
    WrongOrder,
    /// ℓ is not prime, or ℓ equals the defining characteristic.
    BadPrime,
    /// The q parameter is not an admissible power of the defining prime.
    BadQ,
}

impl fmt::Display for RegimeReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RegimeReason::NotDividing => "not_dividing",
            RegimeReason::DividesWeylOrder => "divides_weyl_order",
            RegimeReason::WrongOrder => "wrong_order",
            RegimeReason::BadPrime => "bad_prime",
            RegimeReason::BadQ => "bad_q",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unsupported type: {0}")]
    UnsupportedType(String),

    #[error("expansion is not integral over Z[sqrt p]: {0}")]
    IntegralityFailure(String),

    #[error("bad modular regime ({reason}): {detail}")]
    BadRegime { reason: RegimeReason, detail: String },

    #[error("no root: {0}")]
    NoRoot(String),

    #[error("characteristic polynomial does not split mod {ell}")]
    NotSplit { ell: u64 },

    #[error("invalid series data: {0}")]
    InvalidSeries(String),

    #[error("non-integral exceptional multiplicity: {0}")]
    NonIntegral(String),

    #[error("bad action: {0}")]
    BadAction(String),

    #[error("missing a/A annotations on vertex {0}")]
    MissingAnnotations(usize),

    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },

    #[error("field too small: {0}")]
    FieldTooSmall(String),

    #[error("algebra is not the algebra of a star tree")]
    NotStar,

    #[error("cohomology in degree {degree} lies outside [{lo}, {hi}]")]
    CohomologyOutsideRange { degree: i64, lo: i64, hi: i64 },

    #[error("tilting check failed for ({j}, {j2}, {shift}): dim = {dim}")]
    TiltingFailure { j: usize, j2: usize, shift: i64, dim: usize },

    #[error("tilting check failed: {0}")]
    TiltingProperty(String),

    #[error("oracle mismatch in {table} at ({row}, {col}): tree {tree} vs oracle {oracle}")]
    Mismatch { table: String, row: usize, col: usize, tree: i64, oracle: i64 },

    #[error("singular system: {0}")]
    SingularSystem(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub fn parse(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse { location: location.into(), message: message.into() }
    }

    /// True for errors that mean "the mathematics says no" rather than
    /// "the caller passed something malformed".
    pub fn is_verification_failure(&self) -> bool {
        matches!(
            self,
            Error::Mismatch { .. }
                | Error::TiltingFailure { .. }
                | Error::TiltingProperty(_)
                | Error::BadRegime { .. }
                | Error::IntegralityFailure(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
