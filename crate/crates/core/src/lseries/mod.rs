//! Special values of L-functions of weight 2 newforms of prime level,
//! their Petersson norms, and the heights of the Heegner components.
//!
//! With `Q` the conductor and `A = √Q / 2π`, the completed function
//! `Λ(s) = A^s Γ(s) L(f, s)` satisfies `Λ(s) = ε Λ(2 − s)`. For a newform
//! of prime level `N` the root number is `ε = −w_N`, where `w_N` is the
//! Atkin–Lehner eigenvalue; the twist by a quadratic character `χ_D` with
//! `(D, N) = 1` has conductor `N D²` and root number `ε χ_D(−N)`.

mod analytic;
mod heights;
mod petersson;

use std::io::BufRead;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{gcd, is_prime, kronecker};
use crate::modular::{eta_expand, EtaQuotient, ModularError};

pub use analytic::{
    completed, conductor, e1, l_derivative, l_value, root_number, symmetry_residual, SeriesOptions,
};
pub use heights::{l_values, omega_f_sq, HeightOptions, HeightReport, LValues};
pub use petersson::{petersson, DEFAULT_QUAD_ORDER};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LseriesError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("{label}: invariant violated at n = {index}: {reason}")]
    InvariantViolation {
        label: String,
        index: usize,
        reason: String,
    },
    #[error("need {required} coefficients, have {available}")]
    InsufficientCoefficients { required: usize, available: usize },
    #[error(
        "functional equation sign is {sign:+}, the derivative at s = 1 is not the leading term"
    )]
    WrongSign { sign: i8 },
    #[error("quadrature of order {order} not converged (change {change:e})")]
    QuadratureNotConverged { order: usize, change: f64 },
    #[error("height {which} = {value:e} is negative beyond tolerance")]
    NegativeHeightBeyondTolerance { which: &'static str, value: f64 },
    #[error(transparent)]
    Modular(#[from] ModularError),
}

impl LseriesError {
    pub fn code(&self) -> &'static str {
        match self {
            LseriesError::Parse { .. } => "ParseError",
            LseriesError::InvariantViolation { .. } => "InvariantViolation",
            LseriesError::InsufficientCoefficients { .. } => "InsufficientCoefficients",
            LseriesError::WrongSign { .. } => "WrongSign",
            LseriesError::QuadratureNotConverged { .. } => "QuadratureNotConverged",
            LseriesError::NegativeHeightBeyondTolerance { .. } => "NegativeHeightBeyondTolerance",
            LseriesError::Modular(e) => e.code(),
        }
    }
}

/// Fundamental discriminants of `ℚ(√−3)` and `ℚ(i)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QuadDisc {
    M3,
    M4,
}

impl QuadDisc {
    pub fn value(self) -> i64 {
        match self {
            QuadDisc::M3 => -3,
            QuadDisc::M4 => -4,
        }
    }

    pub fn from_value(d: i64) -> Option<Self> {
        match d {
            -3 => Some(QuadDisc::M3),
            -4 => Some(QuadDisc::M4),
            _ => None,
        }
    }
}

/// Kronecker symbol `(D / n)`.
pub fn chi(d: QuadDisc, n: i64) -> i8 {
    kronecker(d.value(), n)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Source {
    Ingested,
    EtaGenerated,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EigenformData {
    pub label: String,
    pub level: u64,
    pub weight: u32,
    /// Eigenvalue of the Atkin–Lehner involution `w_N`.
    pub al_sign: i8,
    /// `an[i]` is `a_{i+1}`.
    pub an: Vec<i64>,
    pub source: Source,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawForm {
    label: String,
    level: u64,
    weight: u32,
    al_sign: i8,
    an: Vec<i64>,
}

impl EigenformData {
    pub fn precision(&self) -> usize {
        self.an.len()
    }

    pub fn a(&self, n: usize) -> i64 {
        self.an[n - 1]
    }

    /// Root number of `Λ(f, s)`.
    pub fn sign(&self) -> i8 {
        -self.al_sign
    }

    /// Builds a form from an eta quotient; the level must be prime.
    pub fn from_eta(q: &EtaQuotient, m: usize, al_sign: i8) -> Result<Self, LseriesError> {
        let exp = eta_expand(q, m)?;
        let an = exp
            .to_i64_vec()
            .ok_or_else(|| LseriesError::InvariantViolation {
                label: q.to_string(),
                index: 0,
                reason: "coefficient exceeds 64 bits".into(),
            })?;
        let f = EigenformData {
            label: q.to_string(),
            level: exp.level,
            weight: exp.weight,
            al_sign,
            an,
            source: Source::EtaGenerated,
        };
        f.validate()?;
        Ok(f)
    }

    /// Checks the level, weight, normalization, multiplicativity, the
    /// Hecke recursion, the Ramanujan bound at primes and `a_N = −w_N`.
    pub fn validate(&self) -> Result<(), LseriesError> {
        let fail = |index: usize, reason: String| LseriesError::InvariantViolation {
            label: self.label.clone(),
            index,
            reason,
        };
        let n = self.level;
        if self.weight != 2 {
            return Err(fail(0, format!("weight {} is not 2", self.weight)));
        }
        if !is_prime(n) || gcd(n, 6) != 1 {
            return Err(fail(0, format!("level {n} is not a prime coprime to 6")));
        }
        if self.al_sign != 1 && self.al_sign != -1 {
            return Err(fail(0, format!("al_sign {} is not ±1", self.al_sign)));
        }
        if self.an.first() != Some(&1) {
            return Err(fail(1, "a_1 must be 1".into()));
        }
        let m = self.an.len();
        let spf = smallest_prime_factors(m);
        let a = |k: usize| self.an[k - 1] as i128;
        for (k, &p) in spf.iter().enumerate().skip(2) {
            let (mut pe, mut e) = (1usize, 0u32);
            while (k / pe) % p == 0 {
                pe *= p;
                e += 1;
            }
            if pe != k {
                if a(k) != a(pe) * a(k / pe) {
                    return Err(fail(k, format!("a_{k} != a_{pe} * a_{}", k / pe)));
                }
            } else if e == 1 {
                if a(p) * a(p) > 4 * p as i128 {
                    return Err(fail(p, format!("|a_{p}| exceeds 2 sqrt({p})")));
                }
                if p as u64 == n && a(p) != -(self.al_sign as i128) {
                    return Err(fail(p, format!("a_{p} != -al_sign")));
                }
            } else {
                let expected = if p as u64 == n {
                    a(p) * a(k / p)
                } else {
                    a(p) * a(k / p) - p as i128 * a(k / p / p)
                };
                if a(k) != expected {
                    return Err(fail(k, format!("Hecke recursion fails at a_{k}")));
                }
            }
        }
        Ok(())
    }
}

fn smallest_prime_factors(m: usize) -> Vec<usize> {
    let mut spf = vec![0usize; m + 1];
    for i in 2..=m {
        if spf[i] == 0 {
            let mut j = i;
            while j <= m {
                if spf[j] == 0 {
                    spf[j] = i;
                }
                j += i;
            }
        }
    }
    spf
}

/// Reads eigenforms from JSON lines, one object per non-blank line.
pub fn ingest_reader<R: BufRead>(reader: R) -> Result<Vec<EigenformData>, LseriesError> {
    let mut out = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| LseriesError::Parse {
            line: i + 1,
            message: e.to_string(),
        })?;
        if line.trim().is_empty() {
            continue;
        }
        let raw: RawForm = serde_json::from_str(&line).map_err(|e| LseriesError::Parse {
            line: i + 1,
            message: e.to_string(),
        })?;
        let f = EigenformData {
            label: raw.label,
            level: raw.level,
            weight: raw.weight,
            al_sign: raw.al_sign,
            an: raw.an,
            source: Source::Ingested,
        };
        f.validate()?;
        out.push(f);
    }
    if out.is_empty() {
        return Err(LseriesError::Parse {
            line: 0,
            message: "no eigenform records".into(),
        });
    }
    Ok(out)
}

pub fn ingest_str(text: &str) -> Result<Vec<EigenformData>, LseriesError> {
    ingest_reader(text.as_bytes())
}

pub fn ingest_path(path: &Path) -> Result<Vec<EigenformData>, LseriesError> {
    let file = std::fs::File::open(path).map_err(|e| LseriesError::Parse {
        line: 0,
        message: format!("{}: {e}", path.display()),
    })?;
    ingest_reader(std::io::BufReader::new(file))
}


#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    fn line(label: &str, an: &[i64]) -> String {
        serde_json::json!({"label": label, "level": 11, "weight": 2, "al_sign": -1, "an": an})
            .to_string()
    }

    #[test]
    fn chi_values() {
        assert_eq!(chi(QuadDisc::M4, 5), 1);
        assert_eq!(chi(QuadDisc::M4, 2), 0);
        assert_eq!(chi(QuadDisc::M3, 5), -1);
        assert_eq!(chi(QuadDisc::M3, -1), -1);
    }

    #[test]
    fn ingests_eta_generated_file() {
        let f = f11(100);
        let forms = ingest_str(&line("11a", &f.an)).unwrap();
        assert_eq!(forms.len(), 1);
        assert_eq!(forms[0].source, Source::Ingested);
        assert_eq!(forms[0].an, f.an);
    }

    #[test]
    fn rejects_violations() {
        let mut an = f11(30).an;
        an[0] = 2;
        let e = ingest_str(&line("bad", &an)).unwrap_err();
        assert!(matches!(
            e,
            LseriesError::InvariantViolation { index: 1, .. }
        ));

        let mut an = f11(30).an;
        an[5] += 1;
        let e = ingest_str(&line("bad", &an)).unwrap_err();
        assert!(
            matches!(e, LseriesError::InvariantViolation { index: 6, .. }),
            "{e}"
        );

        let mut an = f11(30).an;
        an[3] += 1;
        let e = ingest_str(&line("bad", &an)).unwrap_err();
        assert!(
            matches!(e, LseriesError::InvariantViolation { index: 4, .. }),
            "{e}"
        );
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            ingest_str("{not json"),
            Err(LseriesError::Parse { line: 1, .. })
        ));
        assert!(matches!(
            ingest_str("\n\n"),
            Err(LseriesError::Parse { .. })
        ));
        let wrong_level = r#"{"label":"x","level":35,"weight":2,"al_sign":1,"an":[1]}"#;
        assert!(matches!(
            ingest_str(wrong_level),
            Err(LseriesError::InvariantViolation { index: 0, .. })
        ));
    }

    #[test]
    fn level_37_dataset() {
        let f = f37();
        assert_eq!((f.level, f.al_sign, f.sign()), (37, 1, -1));
        assert_eq!(&f.an[..8], &[1, -2, -3, 2, -2, 6, -1, 0]);
        assert_eq!(f.a(37), -1);
    }
}
