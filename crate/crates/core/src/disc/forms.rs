use std::fmt::Debug;
use std::sync::Arc;

use num_complex::Complex64;

/// A function on the disc with its Wirtinger derivatives in closed form.
pub trait ClosedForm: Debug + Send + Sync {
    fn value(&self, z: Complex64) -> Complex64;
    /// `∂f/∂z`.
    fn dz(&self, z: Complex64) -> Complex64;
    /// `∂f/∂z̄`.
    fn dzbar(&self, z: Complex64) -> Complex64;
    /// `∂²f/∂z∂z̄ = Δf/4`.
    fn dz_dzbar(&self, z: Complex64) -> Complex64;
}

pub type Form = Arc<dyn ClosedForm>;

/// `Σ c_{jk} z^j z̄^k`.
#[derive(Debug, Clone, PartialEq)]
pub struct ZPoly {
    terms: Vec<(u32, u32, Complex64)>,
}

fn mono(z: Complex64, j: u32, k: u32) -> Complex64 {
    z.powu(j) * z.conj().powu(k)
}

impl ZPoly {
    pub fn new(terms: Vec<(u32, u32, Complex64)>) -> Self {
        Self { terms }
    }

    pub fn real(terms: &[(u32, u32, f64)]) -> Self {
        Self::new(
            terms
                .iter()
                .map(|&(j, k, c)| (j, k, Complex64::new(c, 0.0)))
                .collect(),
        )
    }

    pub fn constant(c: f64) -> Self {
        Self::real(&[(0, 0, c)])
    }

    pub fn z() -> Self {
        Self::real(&[(1, 0, 1.0)])
    }

    /// `Re z = (z + z̄)/2`.
    pub fn re_z() -> Self {
        Self::real(&[(1, 0, 0.5), (0, 1, 0.5)])
    }

    /// `|z|^{2m}`.
    pub fn abs_sq_pow(m: u32) -> Self {
        Self::real(&[(m, m, 1.0)])
    }

    /// `1 − |z|²`.
    pub fn bump() -> Self {
        Self::real(&[(0, 0, 1.0), (1, 1, -1.0)])
    }

    pub fn terms(&self) -> &[(u32, u32, Complex64)] {
        &self.terms
    }

    /// Product with `1 − |z|²`.
    pub fn times_bump(&self) -> Self {
        let mut terms = self.terms.clone();
        terms.extend(self.terms.iter().map(|&(j, k, c)| (j + 1, k + 1, -c)));
        Self { terms }
    }
}

impl ClosedForm for ZPoly {
    fn value(&self, z: Complex64) -> Complex64 {
        self.terms.iter().map(|&(j, k, c)| c * mono(z, j, k)).sum()
    }

    fn dz(&self, z: Complex64) -> Complex64 {
        self.terms
            .iter()
            .filter(|t| t.0 > 0)
            .map(|&(j, k, c)| c * j as f64 * mono(z, j - 1, k))
            .sum()
    }

    fn dzbar(&self, z: Complex64) -> Complex64 {
        self.terms
            .iter()
            .filter(|t| t.1 > 0)
            .map(|&(j, k, c)| c * k as f64 * mono(z, j, k - 1))
            .sum()
    }

    fn dz_dzbar(&self, z: Complex64) -> Complex64 {
        self.terms
            .iter()
            .filter(|t| t.0 > 0 && t.1 > 0)
            .map(|&(j, k, c)| c * (j * k) as f64 * mono(z, j - 1, k - 1))
            .sum()
    }
}

/// `−log|z|²`, harmonic off the origin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NegLogAbsSq;

impl ClosedForm for NegLogAbsSq {
    fn value(&self, z: Complex64) -> Complex64 {
        Complex64::new(-z.norm_sqr().ln(), 0.0)
    }

    fn dz(&self, z: Complex64) -> Complex64 {
        -z.inv()
    }

    fn dzbar(&self, z: Complex64) -> Complex64 {
        -z.conj().inv()
    }

    fn dz_dzbar(&self, _z: Complex64) -> Complex64 {
        Complex64::new(0.0, 0.0)
    }
}

/// `φ^* f = f ∘ φ` for `φ(z) = zⁿ`.
#[derive(Debug, Clone)]
pub struct PullBack {
    pub inner: Form,
    pub n: u32,
}

impl ClosedForm for PullBack {
    fn value(&self, z: Complex64) -> Complex64 {
        self.inner.value(z.powu(self.n))
    }

    fn dz(&self, z: Complex64) -> Complex64 {
        self.inner.dz(z.powu(self.n)) * self.n as f64 * z.powu(self.n - 1)
    }

    fn dzbar(&self, z: Complex64) -> Complex64 {
        self.inner.dzbar(z.powu(self.n)) * self.n as f64 * z.conj().powu(self.n - 1)
    }

    fn dz_dzbar(&self, z: Complex64) -> Complex64 {
        let n = self.n as f64;
        self.inner.dz_dzbar(z.powu(self.n)) * n * n * z.norm_sqr().powi(self.n as i32 - 1)
    }
}

/// `φ_* g (w) = Σ_{ζⁿ = w} g(ζ)`. The derivatives do not depend on the
/// branch: `∂_w φ_* g = (n w)^{−1} Σ ζ g_z(ζ)`.
#[derive(Debug, Clone)]
pub struct PushForward {
    pub inner: Form,
    pub n: u32,
}

impl PushForward {
    pub fn roots(&self, w: Complex64) -> impl Iterator<Item = Complex64> {
        let n = self.n;
        let r = w.norm().powf(1.0 / n as f64);
        let base = w.arg().rem_euclid(2.0 * std::f64::consts::PI) / n as f64;
        (0..n).map(move |j| {
            Complex64::from_polar(r, base + 2.0 * std::f64::consts::PI * j as f64 / n as f64)
        })
    }
}

impl ClosedForm for PushForward {
    fn value(&self, w: Complex64) -> Complex64 {
        self.roots(w).map(|z| self.inner.value(z)).sum()
    }

    fn dz(&self, w: Complex64) -> Complex64 {
        self.roots(w)
            .map(|z| z * self.inner.dz(z))
            .sum::<Complex64>()
            / (self.n as f64 * w)
    }

    fn dzbar(&self, w: Complex64) -> Complex64 {
        self.roots(w)
            .map(|z| z.conj() * self.inner.dzbar(z))
            .sum::<Complex64>()
            / (self.n as f64 * w.conj())
    }

    fn dz_dzbar(&self, w: Complex64) -> Complex64 {
        let n = self.n as f64;
        self.roots(w)
            .map(|z| z.norm_sqr() * self.inner.dz_dzbar(z))
            .sum::<Complex64>()
            / (n * n * w.norm_sqr())
    }
}

/// `Σ c_i f_i`.
#[derive(Debug, Clone)]
pub struct Combination {
    pub terms: Vec<(Complex64, Form)>,
}

impl ClosedForm for Combination {
    fn value(&self, z: Complex64) -> Complex64 {
        self.terms.iter().map(|(c, f)| c * f.value(z)).sum()
    }

    fn dz(&self, z: Complex64) -> Complex64 {
        self.terms.iter().map(|(c, f)| c * f.dz(z)).sum()
    }

    fn dzbar(&self, z: Complex64) -> Complex64 {
        self.terms.iter().map(|(c, f)| c * f.dzbar(z)).sum()
    }

    fn dz_dzbar(&self, z: Complex64) -> Complex64 {
        self.terms.iter().map(|(c, f)| c * f.dz_dzbar(z)).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// Wirtinger derivatives by central differences in x and y.
    fn numeric(f: &dyn ClosedForm, z: Complex64) -> (Complex64, Complex64, Complex64) {
        let h = 1e-5;
        let fx = (f.value(z + h) - f.value(z - h)) / (2.0 * h);
        let fy = (f.value(z + c(0.0, h)) - f.value(z - c(0.0, h))) / (2.0 * h);
        let lap =
            (f.value(z + h) + f.value(z - h) + f.value(z + c(0.0, h)) + f.value(z - c(0.0, h))
                - f.value(z) * 4.0)
                / (h * h);
        (
            (fx - c(0.0, 1.0) * fy) / 2.0,
            (fx + c(0.0, 1.0) * fy) / 2.0,
            lap / 4.0,
        )
    }

    fn assert_consistent(f: &dyn ClosedForm) {
        for z in [c(0.3, 0.2), c(-0.5, 0.4), c(0.1, -0.7), c(-0.6, -0.1)] {
            let (dz, dzb, lap) = numeric(f, z);
            assert!((dz - f.dz(z)).norm() < 1e-7, "{f:?} dz at {z}");
            assert!((dzb - f.dzbar(z)).norm() < 1e-7, "{f:?} dzbar at {z}");
            assert!((lap - f.dz_dzbar(z)).norm() < 1e-3, "{f:?} dzdzbar at {z}");
        }
    }

    #[test]
    fn derivatives_match_differences() {
        let poly = ZPoly::new(vec![
            (2, 1, c(1.0, -2.0)),
            (0, 3, c(0.5, 0.0)),
            (1, 1, c(-1.0, 0.0)),
        ]);
        assert_consistent(&poly);
        assert_consistent(&NegLogAbsSq);
        let inner: Form = Arc::new(poly.clone());
        assert_consistent(&PullBack {
            inner: inner.clone(),
            n: 3,
        });
        assert_consistent(&PushForward {
            inner: inner.clone(),
            n: 2,
        });
        assert_consistent(&PushForward { inner, n: 3 });
    }

    #[test]
    fn push_forward_closed_forms() {
        let sq = PushForward {
            inner: Arc::new(ZPoly::abs_sq_pow(1)),
            n: 2,
        };
        let log = PushForward {
            inner: Arc::new(NegLogAbsSq),
            n: 3,
        };
        for w in [c(0.3, 0.2), c(-0.5, -0.1)] {
            assert!((sq.value(w) - 2.0 * w.norm()).norm() < 1e-15);
            assert!((log.value(w).re + w.norm_sqr().ln()).abs() < 1e-14);
        }
    }
}
