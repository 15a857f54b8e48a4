//! The Eisenstein subspace of the numerical arithmetic Chow group of X₀(N).
//!
//! For squarefree N the space is spanned by
//!
//! * `F`, the class of the constant compactified divisor `(0, 1)`,
//! * `DINF`, the compactified cusp at infinity,
//! * `G(p) = X_p^∞ − X_p^0` for each prime `p | N`, the difference of the
//!   two components of the fiber at `p`.
//!
//! Coordinates are [`SymbolicReal`] values. Only the `F` coordinate ever
//! carries logarithms in practice; pairings refuse products of two
//! non-rational values.

mod gram;
mod hecke;

pub use gram::{
    component_classes, gram, gram_with, omega_eis_sq, omega_eis_vector, pair, w_square, w_vector,
    GramConvention, GramMatrix,
};
pub use hecke::{commutator_is_zero, identity, is_self_adjoint, t_hat, w_hat, EisOperator};

use std::fmt;

use num_rational::BigRational;
use serde::Serialize;
use thiserror::Error;

use crate::gamma0::{genus_quotient, invariants, LevelError};
use crate::symbolic::{SymbolError, SymbolicReal};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EisError {
    #[error(transparent)]
    Level(#[from] LevelError),
    #[error(transparent)]
    Symbol(#[from] SymbolError),
    #[error("g - 2 g_(N/{p}) + 1 vanishes at level {n}")]
    DegenerateGenus { n: u64, p: u64 },
    #[error("vectors or operators live on different Eisenstein bases (N={left} vs N={right})")]
    BasisMismatch { left: u64, right: u64 },
    #[error("{l} is not a prime coprime to the level {n}")]
    BadHeckePrime { l: u64, n: u64 },
    #[error("w_{d} is not an Atkin-Lehner involution at level {n}")]
    BadInvolutionParam { d: u64, n: u64 },
    #[error("operator is undefined on {0}")]
    OutsideDomain(BasisElement),
    #[error("{0} is not an element of this basis")]
    UnknownElement(BasisElement),
    #[error("closed formula disagrees with the Gram pairing: {closed} vs {paired}")]
    IdentityFailed { closed: String, paired: String },
}

impl EisError {
    pub fn code(&self) -> &'static str {
        match self {
            EisError::Level(e) => e.code(),
            EisError::Symbol(e) => e.code(),
            EisError::DegenerateGenus { .. } => "DegenerateGenus",
            EisError::BasisMismatch { .. } => "BasisMismatch",
            EisError::BadHeckePrime { .. } => "BadHeckePrime",
            EisError::BadInvolutionParam { .. } => "BadInvolutionParam",
            EisError::OutsideDomain(_) => "OutsideDomain",
            EisError::UnknownElement(_) => "UnknownElement",
            EisError::IdentityFailed { .. } => "IdentityFailed",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BasisElement {
    F,
    Dinf,
    G(u64),
}

impl fmt::Display for BasisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisElement::F => write!(f, "F"),
            BasisElement::Dinf => write!(f, "DINF"),
            BasisElement::G(p) => write!(f, "G({p})"),
        }
    }
}

impl Serialize for BasisElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Ordered basis `[F, DINF, G(p₁), …, G(p_k)]` together with the genus data
/// every pairing depends on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EisBasis {
    n: u64,
    primes: Vec<u64>,
    psi: u64,
    genus: u64,
    /// `g_{N/p}`, aligned with `primes`.
    quotient_genera: Vec<u64>,
}

impl EisBasis {
    pub fn new(n: u64) -> Result<Self, LevelError> {
        let data = invariants(n)?;
        let quotient_genera = data
            .primes
            .iter()
            .map(|&p| genus_quotient(n, p))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self {
            n,
            primes: data.primes,
            psi: data.psi,
            genus: data.genus,
            quotient_genera,
        })
    }

    pub fn level(&self) -> u64 {
        self.n
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn psi(&self) -> u64 {
        self.psi
    }

    pub fn genus(&self) -> u64 {
        self.genus
    }

    pub fn dim(&self) -> usize {
        2 + self.primes.len()
    }

    pub fn elements(&self) -> Vec<BasisElement> {
        let mut out = vec![BasisElement::F, BasisElement::Dinf];
        out.extend(self.primes.iter().map(|&p| BasisElement::G(p)));
        out
    }

    pub fn index_of(&self, e: BasisElement) -> Result<usize, EisError> {
        match e {
            BasisElement::F => Ok(0),
            BasisElement::Dinf => Ok(1),
            BasisElement::G(p) => self
                .primes
                .iter()
                .position(|&q| q == p)
                .map(|i| i + 2)
                .ok_or(EisError::UnknownElement(e)),
        }
    }

    /// `g − 2 g_{N/p} + 1` as a signed integer.
    pub fn fiber_denominator(&self, p: u64) -> Option<i64> {
        let i = self.primes.iter().position(|&q| q == p)?;
        Some(self.genus as i64 - 2 * self.quotient_genera[i] as i64 + 1)
    }

    /// Errors with `DegenerateGenus` for the first prime whose fiber
    /// denominator vanishes.
    pub fn check_nondegenerate(&self) -> Result<(), EisError> {
        for &p in &self.primes {
            if self.fiber_denominator(p) == Some(0) {
                return Err(EisError::DegenerateGenus { n: self.n, p });
            }
        }
        Ok(())
    }

    fn ensure_same(&self, other: &EisBasis) -> Result<(), EisError> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(EisError::BasisMismatch {
                left: self.n,
                right: other.n,
            })
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EisVector {
    basis: EisBasis,
    coords: Vec<SymbolicReal>,
}

impl EisVector {
    pub fn zero(basis: &EisBasis) -> Self {
        Self {
            basis: basis.clone(),
            coords: vec![SymbolicReal::zero(); basis.dim()],
        }
    }

    pub fn element(basis: &EisBasis, e: BasisElement) -> Result<Self, EisError> {
        Self::zero(basis).with(e, SymbolicReal::one())
    }

    pub fn from_coords(basis: &EisBasis, coords: Vec<SymbolicReal>) -> Result<Self, EisError> {
        if coords.len() != basis.dim() {
            return Err(EisError::BasisMismatch {
                left: basis.n,
                right: basis.n,
            });
        }
        Ok(Self {
            basis: basis.clone(),
            coords,
        })
    }

    /// Sets one coordinate.
    pub fn with(mut self, e: BasisElement, value: SymbolicReal) -> Result<Self, EisError> {
        let i = self.basis.index_of(e)?;
        self.coords[i] = value;
        Ok(self)
    }

    pub fn basis(&self) -> &EisBasis {
        &self.basis
    }

    pub fn coords(&self) -> &[SymbolicReal] {
        &self.coords
    }

    pub fn coord(&self, e: BasisElement) -> Result<&SymbolicReal, EisError> {
        Ok(&self.coords[self.basis.index_of(e)?])
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        Self {
            basis: self.basis.clone(),
            coords: self.coords.iter().map(|c| c.scale(q)).collect(),
        }
    }

    pub fn add(&self, other: &EisVector) -> Result<Self, EisError> {
        self.basis.ensure_same(&other.basis)?;
        Ok(Self {
            basis: self.basis.clone(),
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &EisVector) -> Result<Self, EisError> {
        self.add(&other.scale(&-BigRational::from_integer(1.into())))
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }
}

pub(crate) fn rational_of(q: i64) -> BigRational {
    BigRational::from_integer(q.into())
}
