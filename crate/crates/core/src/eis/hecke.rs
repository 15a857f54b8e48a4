//! Hecke operators `T̂_l` and Atkin–Lehner involutions `ŵ_d` on the
//! Eisenstein space, as exact matrices acting on columns.

use serde::Serialize;

use super::{rational_of, BasisElement, EisBasis, EisError, EisVector, GramMatrix};
use crate::arith::{gcd, is_prime};
use crate::symbolic::{rat, SymbolicReal};

/// A (possibly partial) endomorphism of the Eisenstein space. Column `j`
/// holds the image of basis element `j`; undefined columns are `None`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EisOperator {
    basis: EisBasis,
    name: String,
    columns: Vec<Option<Vec<SymbolicReal>>>,
}

impl EisOperator {
    pub fn basis(&self) -> &EisBasis {
        &self.basis
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn is_defined_on(&self, e: BasisElement) -> Result<bool, EisError> {
        Ok(self.columns[self.basis.index_of(e)?].is_some())
    }

    pub fn entry(&self, row: usize, col: usize) -> Option<&SymbolicReal> {
        self.columns[col].as_ref().map(|c| &c[row])
    }

    pub fn image(&self, e: BasisElement) -> Result<EisVector, EisError> {
        let col = self.columns[self.basis.index_of(e)?]
            .clone()
            .ok_or(EisError::OutsideDomain(e))?;
        EisVector::from_coords(&self.basis, col)
    }

    pub fn apply(&self, v: &EisVector) -> Result<EisVector, EisError> {
        self.basis.ensure_same(v.basis())?;
        let mut out = EisVector::zero(&self.basis);
        for (e, x) in self.basis.elements().into_iter().zip(v.coords()) {
            if x.is_zero() {
                continue;
            }
            let img = self.image(e)?;
            let scaled = EisVector::from_coords(
                &self.basis,
                img.coords()
                    .iter()
                    .map(|c| x.checked_mul(c))
                    .collect::<Result<_, _>>()?,
            )?;
            out = out.add(&scaled)?;
        }
        Ok(out)
    }

    /// `self ∘ other`, defined on the columns where `other` is defined and
    /// lands inside the domain of `self`.
    pub fn compose(&self, other: &EisOperator) -> Result<EisOperator, EisError> {
        self.basis.ensure_same(&other.basis)?;
        let columns = other
            .columns
            .iter()
            .map(|col| match col {
                None => Ok(None),
                Some(c) => {
                    let v = EisVector::from_coords(&self.basis, c.clone())?;
                    match self.apply(&v) {
                        Ok(img) => Ok(Some(img.coords().to_vec())),
                        Err(EisError::OutsideDomain(_)) => Ok(None),
                        Err(e) => Err(e),
                    }
                }
            })
            .collect::<Result<Vec<_>, EisError>>()?;
        Ok(EisOperator {
            basis: self.basis.clone(),
            name: format!("{}*{}", self.name, other.name),
            columns,
        })
    }

    /// The coefficient of `F` in the image of `DINF`, when defined.
    pub fn dinf_shift(&self) -> Option<&SymbolicReal> {
        self.entry(0, 1)
    }
}

#[derive(Serialize)]
struct OperatorJson {
    #[serde(rename = "N")]
    n: u64,
    operator: String,
    basis: Vec<BasisElement>,
    /// Row-major; `null` marks entries of undefined columns.
    matrix: Vec<Vec<Option<String>>>,
}

impl Serialize for EisOperator {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let d = self.basis.dim();
        OperatorJson {
            n: self.basis.level(),
            operator: self.name.clone(),
            basis: self.basis.elements(),
            matrix: (0..d)
                .map(|r| {
                    (0..d)
                        .map(|c| self.entry(r, c).map(|e| e.to_string()))
                        .collect()
                })
                .collect(),
        }
        .serialize(s)
    }
}

fn diagonal(basis: &EisBasis, name: String, diag: Vec<Option<SymbolicReal>>) -> EisOperator {
    let d = basis.dim();
    let columns = diag
        .into_iter()
        .enumerate()
        .map(|(j, v)| {
            v.map(|v| {
                let mut col = vec![SymbolicReal::zero(); d];
                col[j] = v;
                col
            })
        })
        .collect();
    EisOperator {
        basis: basis.clone(),
        name,
        columns,
    }
}

pub fn identity(basis: &EisBasis) -> EisOperator {
    diagonal(
        basis,
        "I".into(),
        vec![Some(SymbolicReal::one()); basis.dim()],
    )
}

/// Hecke operator for a prime `l ∤ N`: multiplication by `l + 1` on `F` and
/// every `G(p)`, and
///
/// ```text
/// T̂_l DINF = (l+1) DINF + c_{N,l} F,   c_{N,l} = 12 (l−1) / ψ(N) · log l.
/// ```
pub fn t_hat(l: u64, n: u64) -> Result<EisOperator, EisError> {
    let basis = EisBasis::new(n)?;
    if !is_prime(l) || n.is_multiple_of(l) {
        return Err(EisError::BadHeckePrime { l, n });
    }
    let eigen = SymbolicReal::rational(rational_of(l as i64 + 1));
    let mut op = diagonal(&basis, format!("T_{l}"), vec![Some(eigen); basis.dim()]);
    let shift = SymbolicReal::log(l).scale(&rat(12 * (l as i64 - 1), basis.psi() as i64));
    op.columns[1].as_mut().expect("DINF column")[0] = shift;
    Ok(op)
}

/// Atkin–Lehner involution `w_d` for `d | N`, `d > 1`. It fixes `F` and acts
/// on `G(p)` by `−1` exactly when `p | d`. The image of `DINF` is another
/// cusp class outside this basis, so that column is left undefined.
pub fn w_hat(d: u64, n: u64) -> Result<EisOperator, EisError> {
    let basis = EisBasis::new(n)?;
    if d <= 1 || !n.is_multiple_of(d) || gcd(d, n / d) != 1 {
        return Err(EisError::BadInvolutionParam { d, n });
    }
    let mut diag = vec![Some(SymbolicReal::one()), None];
    for &p in basis.primes() {
        let sign = if d.is_multiple_of(p) { -1 } else { 1 };
        diag.push(Some(SymbolicReal::rational(rational_of(sign))));
    }
    Ok(diagonal(&basis, format!("w_{d}"), diag))
}

/// Exact test of `⟨Ax, y⟩ = ⟨x, Ay⟩` on the domain of `A`, i.e. `AᵀG = GA`
/// restricted to defined rows and columns.
pub fn is_self_adjoint(op: &EisOperator, g: &GramMatrix) -> Result<bool, EisError> {
    op.basis.ensure_same(g.basis())?;
    let d = op.basis.dim();
    let domain: Vec<usize> = (0..d).filter(|&j| op.columns[j].is_some()).collect();
    for &i in &domain {
        for &j in &domain {
            let mut lhs = SymbolicReal::zero();
            let mut rhs = SymbolicReal::zero();
            for k in 0..d {
                // (AᵀG)_{ij} = Σ_k A_{ki} G_{kj};  (GA)_{ij} = Σ_k G_{ik} A_{kj}
                let a_ki = op.entry(k, i).expect("domain column");
                let a_kj = op.entry(k, j).expect("domain column");
                lhs += a_ki.checked_mul(g.entry(k, j))?;
                rhs += g.entry(i, k).checked_mul(a_kj)?;
            }
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Exact test of `AB = BA` on the columns where both products are defined.
pub fn commutator_is_zero(a: &EisOperator, b: &EisOperator) -> Result<bool, EisError> {
    let ab = a.compose(b)?;
    let ba = b.compose(a)?;
    Ok(ab
        .columns
        .iter()
        .zip(&ba.columns)
        .all(|(x, y)| match (x, y) {
            (Some(x), Some(y)) => x == y,
            _ => true,
        }))
}
