use num_rational::BigRational;
use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use super::ModularError;
use crate::arith::gcd;
use crate::gamma0::{invariants, squarefree_primes};
use crate::symbolic::rat;

/// Heegner points of discriminant −3 or −4 on X₀(N), recorded by the
/// residues `b mod 2N` with `b² ≡ D (mod 4N)`. Each point enters the
/// canonical divisor through `w·([P] − [∞])`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeegnerDivisor {
    pub n: u64,
    pub disc: i64,
    pub roots: Vec<u64>,
    pub weight_per_point: BigRational,
}

impl HeegnerDivisor {
    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    /// Coefficient of `[∞]` in `Σ_P w·([P] − [∞])`.
    pub fn infinity_coefficient(&self) -> BigRational {
        -&self.weight_per_point * BigRational::from_integer((self.roots.len() as i64).into())
    }

    /// Sum of all coefficients; zero by construction.
    pub fn degree(&self) -> BigRational {
        &self.weight_per_point * BigRational::from_integer((self.roots.len() as i64).into())
            + self.infinity_coefficient()
    }
}

impl Serialize for HeegnerDivisor {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("HeegnerDivisor", 4)?;
        st.serialize_field("N", &self.n)?;
        st.serialize_field("disc", &self.disc)?;
        st.serialize_field("roots", &self.roots)?;
        st.serialize_field("weightPerPoint", &self.weight_per_point.to_string())?;
        st.end()
    }
}

fn check_level(n: u64) -> Result<(), ModularError> {
    squarefree_primes(n)?;
    if gcd(n, 6) != 1 {
        return Err(ModularError::LevelNotCoprimeTo6(n));
    }
    Ok(())
}

/// Exhaustive search over `b ∈ [0, 2N)`.
pub fn heegner_points(n: u64, disc: i64) -> Result<HeegnerDivisor, ModularError> {
    let weight_per_point = match disc {
        -4 => rat(1, 2),
        -3 => rat(1, 3),
        _ => return Err(ModularError::UnsupportedDiscriminant(disc)),
    };
    check_level(n)?;
    let modulus = 4 * n as u128;
    let target = (disc.rem_euclid(modulus as i64)) as u128;
    let roots = (0..2 * n)
        .filter(|&b| (b as u128 * b as u128) % modulus == target)
        .collect();
    Ok(HeegnerDivisor {
        n,
        disc,
        roots,
        weight_per_point,
    })
}

/// `ω = (2g − 2)[∞] − H_i − 2H_j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CanonicalDecomposition {
    #[serde(rename = "N")]
    pub n: u64,
    #[serde(rename = "multInfty")]
    pub mult_infty: i64,
    #[serde(rename = "hI")]
    pub h_i: HeegnerDivisor,
    #[serde(rename = "hJ")]
    pub h_j: HeegnerDivisor,
}

impl CanonicalDecomposition {
    /// Total degree of the canonical divisor.
    pub fn degree(&self) -> BigRational {
        BigRational::from_integer(self.mult_infty.into())
            - self.h_i.degree()
            - self.h_j.degree() * rat(2, 1)
    }
}

pub fn canonical_decomposition(n: u64) -> Result<CanonicalDecomposition, ModularError> {
    check_level(n)?;
    let genus = invariants(n)?.genus as i64;
    Ok(CanonicalDecomposition {
        n,
        mult_infty: 2 * genus - 2,
        h_i: heegner_points(n, -4)?,
        h_j: heegner_points(n, -3)?,
    })
}
