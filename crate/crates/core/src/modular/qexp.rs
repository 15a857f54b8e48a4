use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::ser::{SerializeSeq, SerializeStruct, Serializer};
use serde::Serialize;

use super::ModularError;
use crate::arith::is_prime;

/// Cuspidal q-expansion `Σ_{n=1}^{M} a_n qⁿ` with exact integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QExpansion {
    pub weight: u32,
    pub level: u64,
    /// `coeffs[i]` is `a_{i+1}`.
    pub coeffs: Vec<BigInt>,
}

impl QExpansion {
    pub fn precision(&self) -> usize {
        self.coeffs.len()
    }

    /// `a_n` for `1 ≤ n ≤ precision`.
    pub fn a(&self, n: usize) -> &BigInt {
        &self.coeffs[n - 1]
    }

    pub fn scale(&self, c: &BigInt) -> QExpansion {
        QExpansion {
            weight: self.weight,
            level: self.level,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn truncate(&self, m: usize) -> QExpansion {
        QExpansion {
            weight: self.weight,
            level: self.level,
            coeffs: self.coeffs[..m.min(self.coeffs.len())].to_vec(),
        }
    }

    pub fn to_i64_vec(&self) -> Option<Vec<i64>> {
        self.coeffs.iter().map(|c| c.to_i64()).collect()
    }
}

struct Coeffs<'a>(&'a [BigInt]);

impl Serialize for Coeffs<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.0.len()))?;
        for c in self.0 {
            match c.to_i64() {
                Some(v) => seq.serialize_element(&v)?,
                None => seq.serialize_element(&c.to_string())?,
            }
        }
        seq.end()
    }
}

/// `{"weight": k, "level": N, "an": [a_1, …]}`; coefficients outside the
/// `i64` range are written as decimal strings.
impl Serialize for QExpansion {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("QExpansion", 3)?;
        st.serialize_field("weight", &self.weight)?;
        st.serialize_field("level", &self.level)?;
        st.serialize_field("an", &Coeffs(&self.coeffs))?;
        st.end()
    }
}

/// `∏_d η(dz)^{r_d}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EtaQuotient {
    factors: Vec<(u64, i64)>,
}

impl EtaQuotient {
    pub fn new(factors: Vec<(u64, i64)>) -> Result<Self, ModularError> {
        if factors.is_empty() || factors.iter().any(|&(d, _)| d == 0) {
            return Err(ModularError::Parse(
                "eta quotient needs positive divisors".into(),
            ));
        }
        Ok(Self { factors })
    }

    /// `Δ = η(z)^24`.
    pub fn delta() -> Self {
        Self {
            factors: vec![(1, 24)],
        }
    }

    /// `η(z)²η(11z)²`, the newform of level 11.
    pub fn level_eleven() -> Self {
        Self {
            factors: vec![(1, 2), (11, 2)],
        }
    }

    pub fn factors(&self) -> &[(u64, i64)] {
        &self.factors
    }

    /// `½ Σ r_d` when it is a positive even integer.
    pub fn weight(&self) -> Result<u32, ModularError> {
        let total: i64 = self.factors.iter().map(|&(_, r)| r).sum();
        if total <= 0 || total % 4 != 0 {
            return Err(ModularError::InvalidWeight(total));
        }
        Ok((total / 2) as u32)
    }

    /// Order at infinity `Σ d·r_d / 24`, when it is a positive integer.
    pub fn leading_power(&self) -> Result<usize, ModularError> {
        let num: i64 = self.factors.iter().map(|&(d, r)| d as i64 * r).sum();
        if num <= 0 || num % 24 != 0 {
            return Err(ModularError::FractionalLeadingPower { numerator: num });
        }
        Ok((num / 24) as usize)
    }

    pub fn level(&self) -> u64 {
        self.factors
            .iter()
            .fold(1, |acc, &(d, _)| acc / crate::arith::gcd(acc, d) * d)
    }
}

impl fmt::Display for EtaQuotient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (d, r)) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            write!(f, "eta({d})^{r}")?;
        }
        Ok(())
    }
}

impl FromStr for EtaQuotient {
    type Err = ModularError;

    /// Parses `eta(1)^2*eta(11)^2`; a missing exponent means 1.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || ModularError::Parse(format!("bad eta quotient `{s}`"));
        let mut factors = Vec::new();
        for piece in compact.split('*') {
            let rest = piece.strip_prefix("eta(").ok_or_else(bad)?;
            let (d, tail) = rest.split_once(')').ok_or_else(bad)?;
            let d = d.parse::<u64>().map_err(|_| bad())?;
            let r = match tail {
                "" => 1,
                t => t
                    .strip_prefix('^')
                    .and_then(|e| e.parse::<i64>().ok())
                    .ok_or_else(bad)?,
            };
            factors.push((d, r));
        }
        EtaQuotient::new(factors)
    }
}

type Series = Vec<BigInt>;

fn mul_trunc(a: &Series, b: &Series, len: usize) -> Series {
    let mut out = vec![BigInt::zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

fn pow_trunc(base: &Series, mut e: u64, len: usize) -> Series {
    let mut result = vec![BigInt::zero(); len];
    if len > 0 {
        result[0] = BigInt::one();
    }
    let mut b = base.clone();
    while e > 0 {
        if e & 1 == 1 {
            result = mul_trunc(&result, &b, len);
        }
        e >>= 1;
        if e > 0 {
            b = mul_trunc(&b, &b, len);
        }
    }
    result
}

/// Inverse of a power series with constant term 1.
fn inverse_trunc(a: &Series, len: usize) -> Series {
    let mut out = vec![BigInt::zero(); len];
    if len == 0 {
        return out;
    }
    out[0] = BigInt::one();
    for n in 1..len {
        let mut acc = BigInt::zero();
        for k in 1..=n.min(a.len() - 1) {
            acc += &a[k] * &out[n - k];
        }
        out[n] = -acc;
    }
    out
}

/// `∏_{n≥1} (1 − q^{dn})` up to `q^{len−1}`, from Euler's pentagonal
/// number theorem `Σ_k (−1)^k q^{d k(3k−1)/2}`.
fn euler_product(d: usize, len: usize) -> Series {
    let mut out = vec![BigInt::zero(); len];
    let mut k: i64 = 0;
    loop {
        let mut any = false;
        for kk in if k == 0 { vec![0] } else { vec![k, -k] } {
            let e = (kk * (3 * kk - 1) / 2) as usize * d;
            if e < len {
                out[e] += if kk.rem_euclid(2) == 0 { 1 } else { -1 };
                any = true;
            }
        }
        if !any {
            break;
        }
        k += 1;
    }
    out
}

/// Coefficients `a_1 … a_M` of the eta quotient.
pub fn eta_expand(q: &EtaQuotient, m: usize) -> Result<QExpansion, ModularError> {
    let weight = q.weight()?;
    let shift = q.leading_power()?;
    let len = (m + 1).saturating_sub(shift);
    let mut series = vec![BigInt::zero(); len];
    if len > 0 {
        series[0] = BigInt::one();
    }
    for &(d, r) in q.factors() {
        if len == 0 {
            break;
        }
        let e = euler_product(d as usize, len);
        let base = if r >= 0 { e } else { inverse_trunc(&e, len) };
        series = mul_trunc(&series, &pow_trunc(&base, r.unsigned_abs(), len), len);
    }
    let coeffs = (1..=m)
        .map(|n| {
            if n >= shift {
                series[n - shift].clone()
            } else {
                BigInt::zero()
            }
        })
        .collect();
    Ok(QExpansion {
        weight,
        level: q.level(),
        coeffs,
    })
}

/// `(T_l f)_n = a_{ln} + l^{k−1} a_{n/l}`, valid for `n ≤ ⌊M/l⌋`.
pub fn hecke_q(l: u64, f: &QExpansion) -> Result<QExpansion, ModularError> {
    if !is_prime(l) || f.level.is_multiple_of(l) {
        return Err(ModularError::BadHeckePrime { l, level: f.level });
    }
    let l = l as usize;
    let prec = f.precision() / l;
    if prec < 1 {
        return Err(ModularError::PrecisionTooSmall {
            needed: l,
            available: f.precision(),
        });
    }
    let lk = BigInt::from(l).pow(f.weight - 1);
    let coeffs = (1..=prec)
        .map(|n| {
            let mut c = f.a(l * n).clone();
            if n % l == 0 {
                c += &lk * f.a(n / l);
            }
            c
        })
        .collect();
    Ok(QExpansion {
        weight: f.weight,
        level: f.level,
        coeffs,
    })
}

/// `Some(λ)` when `g = λ·f` on the common precision, with `f` normalized.
pub fn eigenvalue(f: &QExpansion, g: &QExpansion) -> Option<BigInt> {
    let lambda = g.coeffs.first()?.clone();
    if !f.a(1).is_one() {
        return None;
    }
    let n = f.precision().min(g.precision());
    (1..=n)
        .all(|i| g.a(i) == &(&lambda * f.a(i)))
        .then_some(lambda)
}
