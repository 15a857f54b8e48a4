use std::f64::consts::PI;

use statrs::function::gamma::{gamma, gamma_ur};

use super::{chi, EigenformData, LseriesError, QuadDisc};
use crate::numeric::Neumaier;
use crate::symbolic::Evaluation;

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Truncation control for the rapidly convergent series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesOptions {
    /// Fixed number of terms; by default the smallest count whose tail
    /// bound meets `tolerance`.
    pub terms: Option<usize>,
    pub tolerance: f64,
}

impl Default for SeriesOptions {
    fn default() -> Self {
        Self {
            terms: None,
            tolerance: 1e-12,
        }
    }
}

/// Exponential integral `E₁(x) = ∫_x^∞ e^{−t}/t dt` for `x > 0`.
pub fn e1(x: f64) -> f64 {
    assert!(x > 0.0, "e1 needs a positive argument");
    if x <= 1.0 {
        let mut sum = Neumaier::new();
        sum.add(-EULER_GAMMA);
        sum.add(-x.ln());
        let mut term = 1.0;
        for k in 1..60 {
            term *= -x / k as f64;
            let t = -term / k as f64;
            sum.add(t);
            if t.abs() < 1e-18 {
                break;
            }
        }
        sum.value()
    } else {
        // modified Lentz on the continued fraction of e^x E₁(x)
        let tiny = 1e-300;
        let mut b = x + 1.0;
        let mut c = 1.0 / tiny;
        let mut d = 1.0 / b;
        let mut h = d;
        for i in 1..1000 {
            let an = -((i * i) as f64);
            b += 2.0;
            d = 1.0 / (an * d + b);
            c = b + an / c;
            let del = c * d;
            h *= del;
            if (del - 1.0).abs() < 1e-16 {
                break;
            }
        }
        h * (-x).exp()
    }
}

pub fn conductor(f: &EigenformData, twist: Option<QuadDisc>) -> u64 {
    match twist {
        None => f.level,
        Some(d) => f.level * (d.value() * d.value()) as u64,
    }
}

pub fn root_number(f: &EigenformData, twist: Option<QuadDisc>) -> i8 {
    match twist {
        None => f.sign(),
        Some(d) => f.sign() * chi(d, -(f.level as i64)),
    }
}

fn twisted(f: &EigenformData, twist: Option<QuadDisc>, n: usize) -> f64 {
    let a = f.a(n);
    match twist {
        None => a as f64,
        Some(d) => (a * chi(d, n as i64) as i64) as f64,
    }
}

/// `(√Q / 2π, 2π / √Q)`.
fn scale(q: u64) -> (f64, f64) {
    let a = (q as f64).sqrt() / (2.0 * PI);
    (a, 1.0 / a)
}

/// Smallest `M` with `bound(M) ≤ tol`, or the fixed count from `opts`.
fn choose_terms(
    f: &EigenformData,
    opts: &SeriesOptions,
    bound: impl Fn(usize) -> f64,
) -> Result<usize, LseriesError> {
    let m = match opts.terms {
        Some(m) => m,
        None => {
            let mut m = 1;
            while bound(m) > opts.tolerance / 2.0 {
                m += 1;
                if m > 10_000_000 {
                    break;
                }
            }
            m
        }
    };
    if m > f.precision() {
        return Err(LseriesError::InsufficientCoefficients {
            required: m,
            available: f.precision(),
        });
    }
    Ok(m)
}

/// `L(f ⊗ χ, 1)`, zero when the root number is `−1`.
///
/// Series `(1 + ε) Σ a_n/n e^{−2πn/√Q}`; the tail uses `|a_n| ≤ d(n)√n ≤ 2n`.
pub fn l_value(
    f: &EigenformData,
    twist: Option<QuadDisc>,
    opts: &SeriesOptions,
) -> Result<Evaluation, LseriesError> {
    let eps = root_number(f, twist);
    let (_, c) = scale(conductor(f, twist));
    let ratio = (-c).exp();
    let tail = |m: usize| 4.0 * (-c * (m as f64 + 1.0)).exp() / (1.0 - ratio);
    let m = choose_terms(f, opts, tail)?;
    if eps == -1 {
        return Ok(Evaluation {
            value: 0.0,
            error_bound: 0.0,
        });
    }
    let mut sum = Neumaier::new();
    let mut magnitude = 0.0;
    for n in 1..=m {
        let t = 2.0 * twisted(f, twist, n) / n as f64 * (-c * n as f64).exp();
        sum.add(t);
        magnitude += t.abs();
    }
    Ok(Evaluation {
        value: sum.value(),
        error_bound: tail(m) + 8.0 * f64::EPSILON * magnitude,
    })
}

/// `L'(f, 1) = 2 Σ a_n/n E₁(2πn/√N)` for root number `−1`.
pub fn l_derivative(f: &EigenformData, opts: &SeriesOptions) -> Result<Evaluation, LseriesError> {
    let eps = f.sign();
    if eps != -1 {
        return Err(LseriesError::WrongSign { sign: eps });
    }
    let (_, c) = scale(f.level);
    let ratio = (-c).exp();
    let tail = |m: usize| {
        let m1 = m as f64 + 1.0;
        4.0 * (-c * m1).exp() / (c * m1 * (1.0 - ratio))
    };
    let m = choose_terms(f, opts, tail)?;
    let mut sum = Neumaier::new();
    let mut magnitude = 0.0;
    for n in 1..=m {
        let t = 2.0 * f.a(n) as f64 / n as f64 * e1(c * n as f64);
        sum.add(t);
        magnitude += t.abs();
    }
    Ok(Evaluation {
        value: sum.value(),
        error_bound: tail(m) + 16.0 * f64::EPSILON * magnitude,
    })
}

/// `Λ(s)` for real `s ∈ (0, 2)` split at `y₀/√Q`:
///
/// ```text
/// Λ(s) = Σ a_n [ (A/n)^s Γ(s, n y₀/A) + ε (A/n)^{2−s} Γ(2−s, n/(y₀A)) ]
/// ```
///
/// The value does not depend on `y₀` exactly when the functional equation
/// with sign `ε` holds for the coefficient data.
pub fn completed(
    f: &EigenformData,
    twist: Option<QuadDisc>,
    s: f64,
    y0: f64,
) -> Result<f64, LseriesError> {
    assert!(s > 0.0 && s < 2.0 && y0 > 0.0);
    let eps = root_number(f, twist) as f64;
    let (a, _) = scale(conductor(f, twist));
    let slow = y0.min(1.0 / y0) / a;
    // Γ(σ, x) ≤ x^{σ−1} e^{−x}·2 for σ < 2, x ≥ 1: stop well below 1e−17
    let m = (45.0 / slow).ceil() as usize;
    if m > f.precision() {
        return Err(LseriesError::InsufficientCoefficients {
            required: m,
            available: f.precision(),
        });
    }
    let (gs, g2s) = (gamma(s), gamma(2.0 - s));
    let mut sum = Neumaier::new();
    for n in 1..=m {
        let an = twisted(f, twist, n);
        if an == 0.0 {
            continue;
        }
        let r = a / n as f64;
        let x1 = n as f64 * y0 / a;
        let x2 = n as f64 / (y0 * a);
        sum.add(an * r.powf(s) * gs * gamma_ur(s, x1));
        sum.add(eps * an * r.powf(2.0 - s) * g2s * gamma_ur(2.0 - s, x2));
    }
    Ok(sum.value())
}

/// `|Λ(1 + t) − ε Λ(1 − t)|`, evaluated with a split point away from the
/// symmetric one so that the check is not an identity of the formula.
pub fn symmetry_residual(
    f: &EigenformData,
    twist: Option<QuadDisc>,
    t: f64,
) -> Result<f64, LseriesError> {
    let y0 = 1.2;
    let eps = root_number(f, twist) as f64;
    let plus = completed(f, twist, 1.0 + t, y0)?;
    let minus = completed(f, twist, 1.0 - t, y0)?;
    Ok((plus - eps * minus).abs())
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;

    // mpmath at 25 digits on the same coefficients
    const L1_DERIV_37: f64 = 0.305_999_773_834_052_3;
    const L_CHI4_37: f64 = 2.451_389_381_986_79;
    const L_CHI3_37: f64 = 2.830_620_639_157_327;

    #[test]
    fn e1_values() {
        // E₁(1) and E₁(0.1), E₁(5) from tables
        assert!((e1(1.0) - 0.219_383_934_395_520_27).abs() < 1e-15);
        assert!((e1(0.1) - 1.822_923_958_419_390_7).abs() < 1e-14);
        assert!((e1(5.0) - 0.001_148_295_591_275_325_6).abs() < 1e-17);
        assert!((e1(1.0 + 1e-12) - e1(1.0 - 1e-12)).abs() < 1e-11);
    }

    #[test]
    fn e1_matches_quadrature() {
        // ∫_x^∞ e^{−t}/t dt with t = x/u, u ∈ (0,1]: ∫_0^1 e^{−x/u}/u du
        for &x in &[0.3, 0.9, 1.7, 4.0] {
            let (u, w) = crate::numeric::gauss_legendre(200, 0.0, 1.0);
            let q: f64 = u.iter().zip(&w).map(|(u, w)| w * (-x / u).exp() / u).sum();
            assert!((q - e1(x)).abs() < 1e-12, "x={x}");
        }
    }

    #[test]
    fn level_37_values() {
        let f = f37();
        let o = SeriesOptions::default();
        let d = l_derivative(&f, &o).unwrap();
        assert!((d.value - L1_DERIV_37).abs() < 1e-12, "{}", d.value);
        assert!(d.error_bound < 1e-12);
        let v4 = l_value(&f, Some(QuadDisc::M4), &o).unwrap();
        assert!((v4.value - L_CHI4_37).abs() < 1e-12, "{}", v4.value);
        let v3 = l_value(&f, Some(QuadDisc::M3), &o).unwrap();
        assert!((v3.value - L_CHI3_37).abs() < 1e-12, "{}", v3.value);
        assert_eq!(l_value(&f, None, &o).unwrap().value, 0.0);
    }

    #[test]
    fn sign_handling() {
        let f = f11(400);
        assert_eq!(f.sign(), 1);
        assert!(matches!(
            l_derivative(&f, &SeriesOptions::default()),
            Err(LseriesError::WrongSign { sign: 1 })
        ));
        let v = l_value(&f, None, &SeriesOptions::default()).unwrap();
        // L(X₀(11), 1) = Ω/5 for the real period Ω = 1.26920930427955
        assert!(
            (v.value - 0.253_841_860_855_910_7).abs() < 1e-12,
            "{}",
            v.value
        );
    }

    #[test]
    fn symmetry() {
        for f in [f11(400), f37()] {
            for tw in [None, Some(QuadDisc::M3), Some(QuadDisc::M4)] {
                for t in [0.05, 0.1] {
                    let r = symmetry_residual(&f, tw, t).unwrap();
                    assert!(r < 1e-10, "{} {tw:?} {t}: {r}", f.label);
                }
            }
        }
    }

    #[test]
    fn wrong_sign_breaks_symmetry() {
        let mut f = f37();
        f.al_sign = -1;
        let r = symmetry_residual(&f, None, 0.1).unwrap();
        assert!(r > 1e-5, "{r}");
    }

    #[test]
    fn truncation() {
        let f = f37();
        let short = SeriesOptions {
            terms: Some(20),
            ..Default::default()
        };
        let long = SeriesOptions {
            terms: Some(40),
            ..Default::default()
        };
        let a = l_derivative(&f, &short).unwrap();
        let b = l_derivative(&f, &long).unwrap();
        assert!(b.error_bound < a.error_bound);
        assert!((a.value - b.value).abs() <= a.error_bound.max(b.error_bound));
        let huge = SeriesOptions {
            terms: Some(5000),
            ..Default::default()
        };
        assert!(matches!(
            l_derivative(&f, &huge),
            Err(LseriesError::InsufficientCoefficients {
                required: 5000,
                available: 2000
            })
        ));
        let mut small = f37();
        small.an.truncate(10);
        assert!(matches!(
            l_value(&small, Some(QuadDisc::M4), &SeriesOptions::default()),
            Err(LseriesError::InsufficientCoefficients { .. })
        ));
    }
}
