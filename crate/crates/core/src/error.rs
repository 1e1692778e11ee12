use thiserror::Error;

use crate::weights::Weight;

#[derive(Debug, Error)]
pub enum Error {
    #[error("weight {0} is not dominant")]
    NotDominant(Weight),

    #[error("weight length mismatch: expected {expected}, found {found}")]
    WeightLength { expected: usize, found: usize },

    #[error("bundle has {found} factors but the space has {expected}")]
    FactorMismatch { expected: usize, found: usize },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("non-integral Euler characteristic {0}")]
    NonIntegral(String),

    #[error("class is not exceptional: chi(E,E) = {0}")]
    NotExceptional(i64),

    #[error("pairing unknown for ({0}, {1})")]
    UnknownPairing(String, String),

    #[error("no canonical class registered on {0}")]
    NoCanonicalClass(String),

    #[error("unknown object label `{0}`")]
    UnknownLabel(String),

    #[error("unknown variety `{0}`")]
    UnknownVariety(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid step: {0}")]
    InvalidStep(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
