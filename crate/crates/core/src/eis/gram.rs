use serde::Serialize;

use super::{rational_of, BasisElement, EisBasis, EisError, EisVector};
use crate::symbolic::{int, rat, SymbolicReal};

/// Value used for the pairing `⟨DINF, G(p)⟩`.
///
/// `FiberDerived` takes `⟨D_∞, X_p^∞⟩ = log p` and `⟨D_∞, X_p^0⟩ = 0`, hence
/// `⟨DINF, G(p)⟩ = log p`. `Orthogonal` declares the two summands
/// `F ⊕ ℝ·DINF` and `⊕ ℝ·G(p)` orthogonal and sets it to zero. Self-adjointness
/// and `ω̂²_Eis` do not depend on the choice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GramConvention {
    #[default]
    FiberDerived,
    Orthogonal,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GramMatrix {
    basis: EisBasis,
    convention: GramConvention,
    entries: Vec<Vec<SymbolicReal>>,
}

impl GramMatrix {
    pub fn basis(&self) -> &EisBasis {
        &self.basis
    }

    pub fn convention(&self) -> GramConvention {
        self.convention
    }

    pub fn entry(&self, i: usize, j: usize) -> &SymbolicReal {
        &self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<SymbolicReal>] {
        &self.entries
    }

    pub fn get(&self, a: BasisElement, b: BasisElement) -> Result<&SymbolicReal, EisError> {
        Ok(&self.entries[self.basis.index_of(a)?][self.basis.index_of(b)?])
    }

    pub fn is_symmetric(&self) -> bool {
        let d = self.entries.len();
        (0..d).all(|i| (0..i).all(|j| self.entries[i][j] == self.entries[j][i]))
    }
}

#[derive(Serialize)]
struct GramJson<'a> {
    #[serde(rename = "N")]
    n: u64,
    convention: GramConvention,
    basis: Vec<BasisElement>,
    entries: Vec<Vec<String>>,
    symbolic: &'a [Vec<SymbolicReal>],
}

impl Serialize for GramMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        GramJson {
            n: self.basis.level(),
            convention: self.convention,
            basis: self.basis.elements(),
            entries: self
                .entries
                .iter()
                .map(|row| row.iter().map(|e| e.to_string()).collect())
                .collect(),
            symbolic: &self.entries,
        }
        .serialize(s)
    }
}

pub fn gram(n: u64) -> Result<GramMatrix, EisError> {
    gram_with(n, GramConvention::FiberDerived)
}

/// Intersection matrix on `[F, DINF, G(p)…]`:
///
/// ```text
/// ⟨F,F⟩ = 0            ⟨F,DINF⟩ = 1/2        ⟨F,G(p)⟩ = 0
/// ⟨DINF,DINF⟩ = 144/ψ(N)·κ                   ⟨DINF,G(p)⟩ = log p  (or 0)
/// ⟨G(p),G(p)⟩ = −4 (g − 2g_{N/p} + 1) log p   ⟨G(p),G(q)⟩ = 0
/// ```
pub fn gram_with(n: u64, convention: GramConvention) -> Result<GramMatrix, EisError> {
    let basis = EisBasis::new(n)?;
    let d = basis.dim();
    let mut entries = vec![vec![SymbolicReal::zero(); d]; d];
    let half = SymbolicReal::rational(rat(1, 2));
    entries[0][1] = half.clone();
    entries[1][0] = half;
    entries[1][1] = SymbolicReal::kappa().scale(&rat(144, basis.psi() as i64));
    for (k, &p) in basis.primes().iter().enumerate() {
        let i = k + 2;
        if convention == GramConvention::FiberDerived {
            entries[1][i] = SymbolicReal::log(p);
            entries[i][1] = SymbolicReal::log(p);
        }
        let den = basis.fiber_denominator(p).expect("prime of the basis");
        entries[i][i] = SymbolicReal::log(p).scale(&rational_of(-4 * den));
    }
    Ok(GramMatrix {
        basis,
        convention,
        entries,
    })
}

/// Bilinear pairing `xᵀ G y`.
pub fn pair(g: &GramMatrix, x: &EisVector, y: &EisVector) -> Result<SymbolicReal, EisError> {
    g.basis.ensure_same(x.basis())?;
    g.basis.ensure_same(y.basis())?;
    let mut acc = SymbolicReal::zero();
    for (i, xi) in x.coords().iter().enumerate() {
        if xi.is_zero() {
            continue;
        }
        for (j, yj) in y.coords().iter().enumerate() {
            let gij = &g.entries[i][j];
            if yj.is_zero() || gij.is_zero() {
                continue;
            }
            acc += xi.checked_mul(&gij.checked_mul(yj)?)?;
        }
    }
    Ok(acc)
}

/// The vertical correction `Ŵ = −(g−1)/2 Σ_p (g − 2g_{N/p} + 1)^{-1} G(p) + c·F`
/// with `c` fixed by `⟨Ŵ, DINF⟩ = 0`.
pub fn w_vector(g: &GramMatrix) -> Result<EisVector, EisError> {
    let basis = g.basis();
    basis.check_nondegenerate()?;
    let gm1 = basis.genus() as i64 - 1;
    let mut w = EisVector::zero(basis);
    for &p in basis.primes() {
        let den = basis.fiber_denominator(p).expect("prime of the basis");
        let a_p = rat(-gm1, 2 * den);
        w = w.with(BasisElement::G(p), SymbolicReal::rational(a_p))?;
    }
    let dinf = EisVector::element(basis, BasisElement::Dinf)?;
    // ⟨F, DINF⟩ = 1/2, so c = −2 ⟨Σ a_p G(p), DINF⟩.
    let c = pair(g, &w, &dinf)?.scale(&int(-2));
    w.with(BasisElement::F, c)
}

/// Closed form `Ŵ² = −(g−1)² Σ_p log p / (g − 2g_{N/p} + 1)`, checked against
/// the Gram pairing.
pub fn w_square(g: &GramMatrix) -> Result<SymbolicReal, EisError> {
    let basis = g.basis();
    basis.check_nondegenerate()?;
    let closed = w_square_closed(basis);
    let w = w_vector(g)?;
    let paired = pair(g, &w, &w)?;
    agree(closed, paired)
}

fn w_square_closed(basis: &EisBasis) -> SymbolicReal {
    let gm1 = basis.genus() as i64 - 1;
    basis
        .primes()
        .iter()
        .map(|&p| {
            let den = basis.fiber_denominator(p).expect("prime of the basis");
            SymbolicReal::log(p).scale(&rat(-gm1 * gm1, den))
        })
        .sum()
}

/// `ω̂_Eis = (2g − 2)·DINF + Ŵ`.
pub fn omega_eis_vector(g: &GramMatrix) -> Result<EisVector, EisError> {
    let basis = g.basis();
    let two_g_minus_2 = rational_of(2 * basis.genus() as i64 - 2);
    let dinf = EisVector::element(basis, BasisElement::Dinf)?.scale(&two_g_minus_2);
    dinf.add(&w_vector(g)?)
}

/// Closed formula for the self-intersection of the Eisenstein part of the
/// dualizing sheaf,
///
/// ```text
/// ω̂²_Eis = (g−1)² [ 576/ψ(N) · κ − Σ_{p|N} log p / (g − 2g_{N/p} + 1) ]
/// ```
///
/// checked for exact equality against `⟨ω̂_Eis, ω̂_Eis⟩`.
pub fn omega_eis_sq(g: &GramMatrix) -> Result<SymbolicReal, EisError> {
    let basis = g.basis();
    basis.check_nondegenerate()?;
    let gm1 = basis.genus() as i64 - 1;
    let closed = SymbolicReal::kappa().scale(&rat(576 * gm1 * gm1, basis.psi() as i64))
        + w_square_closed(basis);
    let v = omega_eis_vector(g)?;
    let paired = pair(g, &v, &v)?;
    agree(closed, paired)
}

fn agree(closed: SymbolicReal, paired: SymbolicReal) -> Result<SymbolicReal, EisError> {
    if closed == paired {
        Ok(closed)
    } else {
        Err(EisError::IdentityFailed {
            closed: closed.to_string(),
            paired: paired.to_string(),
        })
    }
}

/// The fiber components `(X̂_p^∞, X̂_p^0)` rebuilt from `G(p)` and `F` through
/// the principal divisor `div p = (X_p^∞ + X_p^0, −log p²)`, which makes
/// `X̂_p^∞ + X̂_p^0 = 2 log p · F` numerically.
pub fn component_classes(basis: &EisBasis, p: u64) -> Result<(EisVector, EisVector), EisError> {
    let g = EisVector::element(basis, BasisElement::G(p))?.scale(&rat(1, 2));
    let f = EisVector::zero(basis).with(BasisElement::F, SymbolicReal::log(p))?;
    Ok((f.add(&g)?, f.sub(&g)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(text: &str) -> SymbolicReal {
        text.parse().unwrap()
    }

    #[test]
    fn gram_level_one() {
        let g = gram(1).unwrap();
        assert_eq!(g.entries().len(), 2);
        assert_eq!(g.entry(0, 0), &SymbolicReal::zero());
        assert_eq!(g.entry(0, 1), &s("1/2"));
        assert_eq!(g.entry(1, 1), &s("144*KAPPA"));
    }

    #[test]
    fn gram_entries_37_and_35() {
        let g = gram(37).unwrap();
        assert_eq!(
            g.get(BasisElement::G(37), BasisElement::G(37)).unwrap(),
            &s("-12*LOG(37)")
        );
        assert_eq!(
            g.get(BasisElement::Dinf, BasisElement::G(37)).unwrap(),
            &s("LOG(37)")
        );
        let g = gram(35).unwrap();
        assert!(g
            .get(BasisElement::G(5), BasisElement::G(7))
            .unwrap()
            .is_zero());
        assert!(g.is_symmetric());
    }

    #[test]
    fn pairing_examples() {
        let g = gram(37).unwrap();
        let b = g.basis().clone();
        let f = EisVector::element(&b, BasisElement::F).unwrap();
        let dinf = EisVector::element(&b, BasisElement::Dinf).unwrap();
        let g37 = EisVector::element(&b, BasisElement::G(37)).unwrap();
        assert!(pair(&g, &f, &f).unwrap().is_zero());
        assert_eq!(pair(&g, &f.scale(&int(6)), &dinf).unwrap(), s("3"));
        assert_eq!(pair(&g, &dinf, &g37).unwrap(), s("LOG(37)"));
        let other = EisBasis::new(35).unwrap();
        let foreign = EisVector::element(&other, BasisElement::F).unwrap();
        assert!(matches!(
            pair(&g, &foreign, &f),
            Err(EisError::BasisMismatch { .. })
        ));
    }

    #[test]
    fn w_vector_examples() {
        let w = w_vector(&gram(11).unwrap()).unwrap();
        assert!(w.coords()[2..].iter().all(|c| c.is_zero()));
        let g = gram(37).unwrap();
        let w = w_vector(&g).unwrap();
        assert_eq!(w.coord(BasisElement::G(37)).unwrap(), &s("-1/6"));
        assert_eq!(w.coord(BasisElement::F).unwrap(), &s("1/3*LOG(37)"));
        let dinf = EisVector::element(g.basis(), BasisElement::Dinf).unwrap();
        assert!(pair(&g, &w, &dinf).unwrap().is_zero());
    }

    #[test]
    fn w_square_examples() {
        assert!(w_square(&gram(11).unwrap()).unwrap().is_zero());
        assert_eq!(w_square(&gram(37).unwrap()).unwrap(), s("-1/3*LOG(37)"));
        assert_eq!(w_square(&gram(35).unwrap()).unwrap(), s("-LOG(5) - LOG(7)"));
    }

    #[test]
    fn omega_eis_examples() {
        assert!(omega_eis_sq(&gram(11).unwrap()).unwrap().is_zero());
        assert_eq!(
            omega_eis_sq(&gram(37).unwrap()).unwrap(),
            s("288/19*KAPPA - 1/3*LOG(37)")
        );
        assert_eq!(
            omega_eis_sq(&gram(35).unwrap()).unwrap(),
            s("48*KAPPA - LOG(5) - LOG(7)")
        );
        let v = omega_eis_sq(&gram(37).unwrap())
            .unwrap()
            .evaluate(8)
            .unwrap();
        assert!((v.value + 4.342_654_535).abs() < 1e-8);
    }

    #[test]
    fn both_conventions_agree_on_omega() {
        for n in [37, 35, 210, 143] {
            let a = omega_eis_sq(&gram_with(n, GramConvention::FiberDerived).unwrap()).unwrap();
            let b = omega_eis_sq(&gram_with(n, GramConvention::Orthogonal).unwrap()).unwrap();
            assert_eq!(a, b, "N={n}");
        }
    }

    #[test]
    fn fiber_components() {
        let g = gram(35).unwrap();
        let b = g.basis().clone();
        for p in [5, 7] {
            let (xinf, x0) = component_classes(&b, p).unwrap();
            let den = b.fiber_denominator(p).unwrap();
            assert_eq!(
                pair(&g, &xinf, &x0).unwrap(),
                SymbolicReal::log(p).scale(&rational_of(den))
            );
            let dinf = EisVector::element(&b, BasisElement::Dinf).unwrap();
            assert_eq!(pair(&g, &dinf, &xinf).unwrap(), SymbolicReal::log(p));
            assert!(pair(&g, &dinf, &x0).unwrap().is_zero());
            // ⟨X_p^∞, X_p^∞ + X_p^0⟩ = 0
            let sum = xinf.add(&x0).unwrap();
            assert!(pair(&g, &xinf, &sum).unwrap().is_zero());
        }
    }

    #[test]
    fn json_shape() {
        let v = serde_json::to_value(gram(37).unwrap()).unwrap();
        assert_eq!(v["basis"], serde_json::json!(["F", "DINF", "G(37)"]));
        assert_eq!(v["entries"][1][1], "72/19*KAPPA");
        assert_eq!(v["symbolic"][2][2]["LOG(37)"], "-12");
    }
}
