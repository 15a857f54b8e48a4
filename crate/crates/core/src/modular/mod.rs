//! Exact q-expansions, Heegner points of discriminant −3 and −4, and the
//! decomposition of the canonical divisor of X₀(N) along them.

mod heegner;
mod qexp;

use thiserror::Error;

use crate::gamma0::LevelError;

pub use heegner::{
    canonical_decomposition, heegner_points, CanonicalDecomposition, HeegnerDivisor,
};
pub use qexp::{eigenvalue, eta_expand, hecke_q, EtaQuotient, QExpansion};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModularError {
    #[error(transparent)]
    Level(#[from] LevelError),
    #[error("leading exponent {numerator}/24 is not a positive integer")]
    FractionalLeadingPower { numerator: i64 },
    #[error("exponent sum {0} does not give a positive even weight")]
    InvalidWeight(i64),
    #[error("{0}")]
    Parse(String),
    #[error("{l} is not a prime coprime to the level {level}")]
    BadHeckePrime { l: u64, level: u64 },
    #[error("precision {available} is below the Hecke prime {needed}")]
    PrecisionTooSmall { needed: usize, available: usize },
    #[error("level {0} is not coprime to 6")]
    LevelNotCoprimeTo6(u64),
    #[error("only discriminants -3 and -4 are supported, got {0}")]
    UnsupportedDiscriminant(i64),
}

impl ModularError {
    pub fn code(&self) -> &'static str {
        match self {
            ModularError::Level(e) => e.code(),
            ModularError::FractionalLeadingPower { .. } => "FractionalLeadingPower",
            ModularError::InvalidWeight(_) => "InvalidWeight",
            ModularError::Parse(_) => "ParseError",
            ModularError::BadHeckePrime { .. } => "BadHeckePrime",
            ModularError::PrecisionTooSmall { .. } => "PrecisionTooSmall",
            ModularError::LevelNotCoprimeTo6(_) => "LevelNotCoprimeTo6",
            ModularError::UnsupportedDiscriminant(_) => "UnsupportedDiscriminant",
        }
    }
}
