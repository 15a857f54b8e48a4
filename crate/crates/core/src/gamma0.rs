//! Invariants of the congruence subgroup Γ₀(N) for squarefree N.
//!
//! Everything here is exact integer arithmetic. The index ψ(N), the
//! elliptic point counts ν₂, ν₃ and the cusp count enter the genus through
//!
//! ```text
//! 12 (g - 1) + 3 ν₂ + 4 ν₃ + 6 ν∞ = ψ(N)
//! ```

use serde::Serialize;
use thiserror::Error;

use crate::arith::{factor, kronecker};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LevelError {
    #[error("level {n} is not squarefree ({p}^2 divides it)")]
    NonSquarefree { n: u64, p: u64 },
    #[error("level must be positive")]
    ZeroLevel,
    #[error("{p} does not divide the level {n}")]
    NotADivisor { n: u64, p: u64 },
}

impl LevelError {
    pub fn code(&self) -> &'static str {
        match self {
            LevelError::NonSquarefree { .. } | LevelError::ZeroLevel => "NonSquarefree",
            LevelError::NotADivisor { .. } => "NotADivisor",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Gamma0Data {
    #[serde(rename = "N")]
    pub n: u64,
    #[serde(skip)]
    pub primes: Vec<u64>,
    pub psi: u64,
    pub nu2: u64,
    pub nu3: u64,
    #[serde(rename = "cusps")]
    pub cusps: u64,
    pub genus: u64,
}

/// Distinct prime divisors of a squarefree level, ascending.
pub fn squarefree_primes(n: u64) -> Result<Vec<u64>, LevelError> {
    if n == 0 {
        return Err(LevelError::ZeroLevel);
    }
    let f = factor(n);
    if let Some(&(p, _)) = f.iter().find(|&&(_, e)| e > 1) {
        return Err(LevelError::NonSquarefree { n, p });
    }
    Ok(f.into_iter().map(|(p, _)| p).collect())
}

pub fn invariants(n: u64) -> Result<Gamma0Data, LevelError> {
    let primes = squarefree_primes(n)?;
    let psi = primes.iter().map(|p| p + 1).product::<u64>();
    // 1 + (-4/p) and 1 + (-3/p); the ramified primes 2 resp. 3 contribute 1.
    let nu2 = primes
        .iter()
        .map(|&p| (1 + kronecker(-4, p as i64)) as u64)
        .product::<u64>();
    let nu3 = primes
        .iter()
        .map(|&p| (1 + kronecker(-3, p as i64)) as u64)
        .product::<u64>();
    let cusps = 1u64 << primes.len();
    let twelve_g = 12 + psi as i64 - 3 * nu2 as i64 - 4 * nu3 as i64 - 6 * cusps as i64;
    debug_assert!(
        twelve_g >= 0 && twelve_g % 12 == 0,
        "genus formula for N={n}"
    );
    Ok(Gamma0Data {
        n,
        primes,
        psi,
        nu2,
        nu3,
        cusps,
        genus: (twelve_g / 12) as u64,
    })
}

/// Genus of X₀(N/p): the curve each component of the fiber at p is
/// isomorphic to.
pub fn genus_quotient(n: u64, p: u64) -> Result<u64, LevelError> {
    let data = invariants(n)?;
    if !data.primes.contains(&p) {
        return Err(LevelError::NotADivisor { n, p });
    }
    Ok(invariants(n / p)?.genus)
}

impl Gamma0Data {
    /// Checks the cleared genus identity; always true for values built by
    /// [`invariants`].
    pub fn genus_identity_holds(&self) -> bool {
        12 * (self.genus as i64 - 1)
            + 3 * self.nu2 as i64
            + 4 * self.nu3 as i64
            + 6 * self.cusps as i64
            == self.psi as i64
    }
}
