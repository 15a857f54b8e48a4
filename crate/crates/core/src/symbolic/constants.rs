//! Numerical values of the transcendental basis constants.
//!
//! `log A` (A the Glaisher–Kinkelin constant) is computed from the
//! Euler–Maclaurin expansion of `Σ_{k≤n} k log k`:
//!
//! ```text
//! log A = Σ_{k=1}^{n} k log k − (n²/2 + n/2 + 1/12) log n + n²/4
//!         + Σ_{j≥2} B_{2j} / ((2j)(2j−1)(2j−2) n^{2j−2})
//! ```
//!
//! The derivatives of `x log x` of order ≥ 2 have constant sign, so the
//! truncation error is bounded by the first omitted correction.

use crate::numeric::compensated_sum;

/// A floating point value together with a bound on its absolute error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Approx {
    pub value: f64,
    pub error_bound: f64,
}

// B_4, B_6, ..., B_20
const BERNOULLI: [f64; 9] = [
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
];

const CUTOFF: u32 = 10;
const CORRECTIONS: usize = 7;

fn correction(j: usize, n: f64) -> f64 {
    // BERNOULLI[0] is B_4, i.e. j = 2.
    let two_j = 2.0 * j as f64;
    BERNOULLI[j - 2] / (two_j * (two_j - 1.0) * (two_j - 2.0) * n.powf(two_j - 2.0))
}

/// `log A` for the Glaisher–Kinkelin constant `A`.
pub fn log_glaisher() -> Approx {
    let n = CUTOFF as f64;
    let mut terms: Vec<f64> = (2..=CUTOFF).map(|k| k as f64 * (k as f64).ln()).collect();
    terms.push(-(n * n / 2.0 + n / 2.0 + 1.0 / 12.0) * n.ln());
    terms.push(n * n / 4.0);
    terms.extend((2..2 + CORRECTIONS).map(|j| correction(j, n)));
    let magnitude: f64 = terms.iter().map(|t| t.abs()).sum();
    let value = compensated_sum(terms.iter().copied());
    let truncation = correction(2 + CORRECTIONS, n).abs();
    // each term carries a few ulps from ln and the products; the
    // compensated sum adds O(eps) relative to the total magnitude
    let rounding = 4.0 * f64::EPSILON * magnitude;
    Approx {
        value,
        error_bound: truncation + rounding,
    }
}

/// `ζ'(−1) = 1/12 − log A`.
pub fn zeta_prime_minus_one() -> Approx {
    let a = log_glaisher();
    Approx {
        value: 1.0 / 12.0 - a.value,
        error_bound: a.error_bound + f64::EPSILON,
    }
}

/// `κ = ½ζ(−1) + ζ'(−1)` with `ζ(−1) = −1/12` folded in exactly.
pub fn kappa() -> Approx {
    let z = zeta_prime_minus_one();
    Approx {
        value: -1.0 / 24.0 + z.value,
        error_bound: z.error_bound + f64::EPSILON,
    }
}
