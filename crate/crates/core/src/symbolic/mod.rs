//! Exact real numbers of the form `a + b·κ + Σ c_p log p` with rational
//! coefficients, where `κ = ½ζ(−1) + ζ'(−1)`.
//!
//! Every intersection number on the Eisenstein part lives in this space.
//! Values are kept in canonical form (no zero coefficients), so structural
//! equality is mathematical equality.

pub mod constants;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer, MapAccess, Visitor};
use serde::ser::{SerializeMap, Serializer};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::is_prime;
use constants::Approx;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SymbolError {
    #[error("cannot certify {requested} decimal digits (error bound {bound:e})")]
    PrecisionUnreachable { requested: u32, bound: f64 },
    #[error("product of two non-rational values {0} and {1}")]
    NonScalarProduct(String, String),
    #[error("cannot parse symbolic value: {0}")]
    Parse(String),
}

impl SymbolError {
    pub fn code(&self) -> &'static str {
        match self {
            SymbolError::PrecisionUnreachable { .. } => "PrecisionUnreachable",
            SymbolError::NonScalarProduct(..) => "NonScalarProduct",
            SymbolError::Parse(_) => "ParseError",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    One,
    Kappa,
    /// `log p` for a prime `p`.
    Log(u64),
}

impl Symbol {
    pub fn log(p: u64) -> Result<Symbol, SymbolError> {
        if is_prime(p) {
            Ok(Symbol::Log(p))
        } else {
            Err(SymbolError::Parse(format!(
                "LOG({p}) needs a prime argument"
            )))
        }
    }

    fn approx(self) -> Approx {
        match self {
            Symbol::One => Approx {
                value: 1.0,
                error_bound: 0.0,
            },
            Symbol::Kappa => constants::kappa(),
            Symbol::Log(p) => {
                let value = (p as f64).ln();
                Approx {
                    value,
                    error_bound: 2.0 * f64::EPSILON * value.abs(),
                }
            }
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::One => write!(f, "ONE"),
            Symbol::Kappa => write!(f, "KAPPA"),
            Symbol::Log(p) => write!(f, "LOG({p})"),
        }
    }
}

impl FromStr for Symbol {
    type Err = SymbolError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "ONE" => Ok(Symbol::One),
            "KAPPA" => Ok(Symbol::Kappa),
            _ => {
                let inner = s
                    .strip_prefix("LOG(")
                    .and_then(|r| r.strip_suffix(')'))
                    .ok_or_else(|| SymbolError::Parse(format!("unknown symbol `{s}`")))?;
                let p = inner
                    .parse::<u64>()
                    .map_err(|_| SymbolError::Parse(format!("bad LOG argument `{inner}`")))?;
                Symbol::log(p)
            }
        }
    }
}

/// A rational linear combination of basis symbols, in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct SymbolicReal {
    terms: BTreeMap<Symbol, BigRational>,
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Floating point value plus a rigorous bound on its absolute error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Evaluation {
    pub value: f64,
    pub error_bound: f64,
}

impl SymbolicReal {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn term(symbol: Symbol, coefficient: BigRational) -> Self {
        let mut out = Self::zero();
        out.add_term(symbol, coefficient);
        out
    }

    pub fn rational(q: BigRational) -> Self {
        Self::term(Symbol::One, q)
    }

    pub fn one() -> Self {
        Self::rational(BigRational::one())
    }

    pub fn kappa() -> Self {
        Self::term(Symbol::Kappa, BigRational::one())
    }

    /// `log p`. Panics if `p` is not prime.
    pub fn log(p: u64) -> Self {
        let sym = Symbol::log(p).expect("LOG of a non-prime");
        Self::term(sym, BigRational::one())
    }

    pub fn add_term(&mut self, symbol: Symbol, coefficient: BigRational) {
        if coefficient.is_zero() {
            return;
        }
        let entry = self.terms.entry(symbol).or_insert_with(BigRational::zero);
        *entry += coefficient;
        if entry.is_zero() {
            self.terms.remove(&symbol);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, symbol: Symbol) -> BigRational {
        self.terms
            .get(&symbol)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Symbol, &BigRational)> {
        self.terms.iter()
    }

    /// The value as a rational, if it has no transcendental part.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&Symbol::One).cloned(),
            _ => None,
        }
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(s, c)| (*s, c * q)).collect(),
        }
    }

    /// Product of two values, defined when at least one side is rational.
    pub fn checked_mul(&self, other: &Self) -> Result<Self, SymbolError> {
        if let Some(q) = self.as_rational() {
            Ok(other.scale(&q))
        } else if let Some(q) = other.as_rational() {
            Ok(self.scale(&q))
        } else {
            Err(SymbolError::NonScalarProduct(
                self.to_string(),
                other.to_string(),
            ))
        }
    }

    /// Numerical value with a certified absolute error below `10^-precision`.
    pub fn evaluate(&self, precision: u32) -> Result<Evaluation, SymbolError> {
        let e = self.evaluate_unchecked();
        if precision == 0 || e.error_bound > 10f64.powi(-(precision as i32)) {
            return Err(SymbolError::PrecisionUnreachable {
                requested: precision,
                bound: e.error_bound,
            });
        }
        Ok(e)
    }

    /// Numerical value with whatever error bound double precision allows.
    pub fn evaluate_unchecked(&self) -> Evaluation {
        let mut value = 0.0;
        let mut bound = 0.0;
        let mut magnitude = 0.0;
        for (sym, c) in &self.terms {
            let a = sym.approx();
            let cf = c.to_f64().unwrap_or(f64::NAN);
            let t = cf * a.value;
            value += t;
            magnitude += t.abs();
            bound += cf.abs() * a.error_bound + 2.0 * f64::EPSILON * t.abs();
        }
        bound += (self.terms.len() as f64) * f64::EPSILON * magnitude;
        Evaluation {
            value,
            error_bound: bound,
        }
    }
}

impl Add for SymbolicReal {
    type Output = SymbolicReal;
    fn add(mut self, rhs: SymbolicReal) -> SymbolicReal {
        self += rhs;
        self
    }
}

impl<'a> Add<&'a SymbolicReal> for &'a SymbolicReal {
    type Output = SymbolicReal;
    fn add(self, rhs: &SymbolicReal) -> SymbolicReal {
        let mut out = self.clone();
        out += rhs.clone();
        out
    }
}

impl AddAssign for SymbolicReal {
    fn add_assign(&mut self, rhs: SymbolicReal) {
        for (s, c) in rhs.terms {
            self.add_term(s, c);
        }
    }
}

impl Neg for SymbolicReal {
    type Output = SymbolicReal;
    fn neg(self) -> SymbolicReal {
        Self {
            terms: self.terms.into_iter().map(|(s, c)| (s, -c)).collect(),
        }
    }
}

impl Sub for SymbolicReal {
    type Output = SymbolicReal;
    fn sub(self, rhs: SymbolicReal) -> SymbolicReal {
        self + (-rhs)
    }
}

impl<'a> Sub<&'a SymbolicReal> for &'a SymbolicReal {
    type Output = SymbolicReal;
    fn sub(self, rhs: &SymbolicReal) -> SymbolicReal {
        self.clone() - rhs.clone()
    }
}

impl Mul<&BigRational> for &SymbolicReal {
    type Output = SymbolicReal;
    fn mul(self, q: &BigRational) -> SymbolicReal {
        self.scale(q)
    }
}

impl std::iter::Sum for SymbolicReal {
    fn sum<I: Iterator<Item = SymbolicReal>>(iter: I) -> Self {
        iter.fold(SymbolicReal::zero(), |a, b| a + b)
    }
}

/// Canonical text: `288/19*KAPPA - 1/3*LOG(37)`. Rational parts are written
/// bare and unit coefficients are omitted.
impl fmt::Display for SymbolicReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (sym, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let a = c.abs();
            match sym {
                Symbol::One => write!(f, "{a}")?,
                _ if a.is_one() => write!(f, "{sym}")?,
                _ => write!(f, "{a}*{sym}")?,
            }
        }
        Ok(())
    }
}

fn parse_rational(s: &str) -> Result<BigRational, SymbolError> {
    let q = s
        .parse::<BigRational>()
        .map_err(|_| SymbolError::Parse(format!("bad rational `{s}`")))?;
    Ok(q)
}

impl FromStr for SymbolicReal {
    type Err = SymbolError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(SymbolError::Parse("empty input".into()));
        }
        // Split into signed terms at top-level '+' / '-'.
        let bytes = compact.as_bytes();
        let mut pieces = Vec::new();
        let mut start = 0;
        for i in 1..bytes.len() {
            if (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'*' | b'/' | b'(')
            {
                pieces.push(&compact[start..i]);
                start = i;
            }
        }
        pieces.push(&compact[start..]);

        let mut out = SymbolicReal::zero();
        for piece in pieces {
            let (sign, body) = match piece.as_bytes()[0] {
                b'-' => (-BigRational::one(), &piece[1..]),
                b'+' => (BigRational::one(), &piece[1..]),
                _ => (BigRational::one(), piece),
            };
            if body.is_empty() {
                return Err(SymbolError::Parse(format!("dangling sign in `{s}`")));
            }
            let (coef, sym) = match body.split_once('*') {
                Some((c, sym)) => (parse_rational(c)?, sym.parse::<Symbol>()?),
                None if body.starts_with(|c: char| c.is_ascii_digit()) => {
                    (parse_rational(body)?, Symbol::One)
                }
                None => (BigRational::one(), body.parse::<Symbol>()?),
            };
            out.add_term(sym, sign * coef);
        }
        Ok(out)
    }
}

/// JSON form: `{"KAPPA": "288/19", "LOG(37)": "-1/3"}`.
impl Serialize for SymbolicReal {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.terms.len()))?;
        for (sym, c) in &self.terms {
            map.serialize_entry(&sym.to_string(), &c.to_string())?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for SymbolicReal {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct TermsVisitor;

        impl<'de> Visitor<'de> for TermsVisitor {
            type Value = SymbolicReal;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "a map from symbol names to rational strings")
            }

            fn visit_map<A: MapAccess<'de>>(self, mut access: A) -> Result<SymbolicReal, A::Error> {
                let mut out = SymbolicReal::zero();
                while let Some((k, v)) = access.next_entry::<String, String>()? {
                    let sym = k.parse::<Symbol>().map_err(de::Error::custom)?;
                    let c = parse_rational(&v).map_err(de::Error::custom)?;
                    out.add_term(sym, c);
                }
                Ok(out)
            }
        }

        deserializer.deserialize_map(TermsVisitor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn additive_inverse() {
        let a = SymbolicReal::log(3).scale(&int(2));
        let b = SymbolicReal::log(3).scale(&int(-2));
        assert!((a + b).is_zero());
    }

    #[test]
    fn scaling() {
        let k = SymbolicReal::kappa().scale(&int(144));
        assert_eq!(k.scale(&rat(1, 2)), SymbolicReal::kappa().scale(&int(72)));
        assert!(k.scale(&int(0)).is_zero());
    }

    #[test]
    fn disjoint_symbols() {
        let s = SymbolicReal::kappa() + SymbolicReal::log(2);
        assert_eq!(s.coefficient(Symbol::Kappa), int(1));
        assert_eq!(s.coefficient(Symbol::Log(2)), int(1));
        assert_eq!(s.terms().count(), 2);
    }

    #[test]
    fn text_form() {
        let v =
            SymbolicReal::kappa().scale(&rat(288, 19)) - SymbolicReal::log(37).scale(&rat(1, 3));
        assert_eq!(v.to_string(), "288/19*KAPPA - 1/3*LOG(37)");
        assert_eq!(v.to_string().parse::<SymbolicReal>().unwrap(), v);
        assert_eq!(SymbolicReal::zero().to_string(), "0");
        assert_eq!(SymbolicReal::rational(rat(1, 2)).to_string(), "1/2");
        assert_eq!(
            "-KAPPA + 1/2*ONE + 3".parse::<SymbolicReal>().unwrap(),
            SymbolicReal::rational(rat(7, 2)) - SymbolicReal::kappa()
        );
        assert_eq!(
            "-1/4*LOG(5) - 1/4*LOG(7)"
                .parse::<SymbolicReal>()
                .unwrap()
                .to_string(),
            "-1/4*LOG(5) - 1/4*LOG(7)"
        );
        assert!("2*LOG(4)".parse::<SymbolicReal>().is_err());
        assert!("2*PI".parse::<SymbolicReal>().is_err());
        assert!("".parse::<SymbolicReal>().is_err());
    }

    #[test]
    fn json_form() {
        let v =
            SymbolicReal::kappa().scale(&rat(288, 19)) - SymbolicReal::log(37).scale(&rat(1, 3));
        let s = serde_json::to_string(&v).unwrap();
        assert_eq!(s, r#"{"KAPPA":"288/19","LOG(37)":"-1/3"}"#);
        let back: SymbolicReal = serde_json::from_str(&s).unwrap();
        assert_eq!(back, v);
        assert_eq!(serde_json::to_string(&SymbolicReal::zero()).unwrap(), "{}");
    }

    #[test]
    fn checked_products() {
        let half = SymbolicReal::rational(rat(1, 2));
        let l = SymbolicReal::log(2);
        assert_eq!(half.checked_mul(&l).unwrap(), l.scale(&rat(1, 2)));
        assert!(l.checked_mul(&SymbolicReal::kappa()).is_err());
        assert!(l.checked_mul(&SymbolicReal::zero()).unwrap().is_zero());
    }

    #[test]
    fn evaluation() {
        assert_eq!(SymbolicReal::zero().evaluate(10).unwrap().value, 0.0);
        let l = SymbolicReal::log(37).evaluate(10).unwrap();
        assert!((l.value - 3.610_917_912_644_224_4).abs() < 1e-10);
        assert!((l.value.exp() - 37.0).abs() < 1e-12);
        let k = SymbolicReal::kappa().evaluate(8).unwrap();
        assert!((k.value + 0.207_087_81).abs() < 1e-8);
        assert!(matches!(
            SymbolicReal::kappa().evaluate(16),
            Err(SymbolError::PrecisionUnreachable { .. })
        ));
        assert!(SymbolicReal::one().evaluate(0).is_err());
    }
}
