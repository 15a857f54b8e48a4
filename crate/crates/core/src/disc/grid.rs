use std::f64::consts::PI;

use num_complex::Complex64;

use super::DiscError;
use crate::numeric::{gauss_legendre, Neumaier};

pub const DEFAULT_RADIAL: usize = 256;
pub const DEFAULT_ANGULAR: usize = 512;

/// Tensor rule on the unit disc: Gauss–Legendre in `u ∈ (0, 1)` with
/// radii `r = u^α`, times the trapezoidal rule on `M` equispaced angles
/// `θ_k = 2πk/M`.
///
/// `area_weights[i]` integrates `∫₀¹ F(r) r dr`, so that
/// `∫_D h dA ≈ Σ_i Σ_k area_weights[i] · (2π/M) · h(r_i e^{iθ_k})`.
/// The radial rule is exact for `F(r) r^{2−1/α}` polynomial in `u` of
/// degree `2·radial − 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscGrid {
    radial: usize,
    angular: usize,
    alpha: f64,
    u: Vec<f64>,
    radii: Vec<f64>,
    area_weights: Vec<f64>,
}

impl DiscGrid {
    pub fn new(radial: usize, angular: usize) -> Result<Self, DiscError> {
        Self::with_power(radial, angular, 1.0)
    }

    pub fn with_power(radial: usize, angular: usize, alpha: f64) -> Result<Self, DiscError> {
        if radial < 2 || angular < 3 {
            return Err(DiscError::InvalidGrid(format!(
                "need at least 2 radial and 3 angular nodes, got {radial}x{angular}"
            )));
        }
        if !(alpha.is_finite() && alpha > 0.0) {
            return Err(DiscError::InvalidGrid(format!(
                "radial power {alpha} must be positive"
            )));
        }
        let (u, w) = gauss_legendre(radial, 0.0, 1.0);
        // exactness of the underlying rule on monomials u^k
        for k in 0..(2 * radial).min(24) {
            let q: f64 = u
                .iter()
                .zip(&w)
                .map(|(u, w)| w * u.powi(k as i32))
                .collect::<Neumaier>()
                .value();
            if (q - 1.0 / (k as f64 + 1.0)).abs() > 1e-13 {
                return Err(DiscError::InvalidGrid(format!(
                    "radial rule fails on u^{k}: {q}"
                )));
            }
        }
        let radii: Vec<f64> = u.iter().map(|u| u.powf(alpha)).collect();
        let area_weights: Vec<f64> = u
            .iter()
            .zip(&w)
            .map(|(u, w)| w * alpha * u.powf(2.0 * alpha - 1.0))
            .collect();
        if area_weights.iter().any(|w| w.is_nan() || *w <= 0.0)
            || radii.iter().any(|r| r.is_nan() || *r <= 0.0 || *r >= 1.0)
        {
            return Err(DiscError::InvalidGrid(format!(
                "radial power {alpha} underflows the inner nodes"
            )));
        }
        Ok(Self {
            radial,
            angular,
            alpha,
            u,
            radii,
            area_weights,
        })
    }

    pub fn default_grid() -> Self {
        Self::new(DEFAULT_RADIAL, DEFAULT_ANGULAR).expect("default grid is valid")
    }

    pub fn radial(&self) -> usize {
        self.radial
    }

    pub fn angular(&self) -> usize {
        self.angular
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn len(&self) -> usize {
        self.radial * self.angular
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    /// Gauss nodes in the uniformizing variable `u`.
    pub fn u_nodes(&self) -> &[f64] {
        &self.u
    }

    pub fn area_weights(&self) -> &[f64] {
        &self.area_weights
    }

    pub fn angle(&self, k: usize) -> f64 {
        2.0 * PI * k as f64 / self.angular as f64
    }

    pub fn index(&self, i: usize, k: usize) -> usize {
        i * self.angular + k
    }

    pub fn point(&self, i: usize, k: usize) -> Complex64 {
        Complex64::from_polar(self.radii[i], self.angle(k))
    }

    pub fn points(&self) -> impl Iterator<Item = Complex64> + '_ {
        (0..self.radial).flat_map(move |i| (0..self.angular).map(move |k| self.point(i, k)))
    }

    pub fn boundary_points(&self) -> impl Iterator<Item = Complex64> + '_ {
        (0..self.angular).map(move |k| Complex64::from_polar(1.0, self.angle(k)))
    }

    /// Image grid under `z ↦ zⁿ`; requires `n | M`.
    pub fn pushforward(&self, n: u32) -> Result<Self, DiscError> {
        if n == 0 || !self.angular.is_multiple_of(n as usize) {
            return Err(DiscError::GridIncompatibleWithDegree {
                angular: self.angular,
                n,
            });
        }
        Self::with_power(
            self.radial,
            self.angular / n as usize,
            self.alpha * n as f64,
        )
    }

    /// Preimage grid under `z ↦ zⁿ`.
    pub fn pullback(&self, n: u32) -> Result<Self, DiscError> {
        if n == 0 {
            return Err(DiscError::GridIncompatibleWithDegree {
                angular: self.angular,
                n,
            });
        }
        Self::with_power(
            self.radial,
            self.angular * n as usize,
            self.alpha / n as f64,
        )
    }

    /// Same family at roughly half the resolution, for refinement estimates.
    pub fn coarsened(&self) -> Result<Self, DiscError> {
        Self::with_power(
            (self.radial / 2).max(2),
            (self.angular / 2).max(3),
            self.alpha,
        )
    }

    /// `∫_D h dA` from node samples, summed ring by ring.
    pub fn integrate(&self, mut h: impl FnMut(usize) -> f64) -> f64 {
        let dtheta = 2.0 * PI / self.angular as f64;
        let mut total = Neumaier::new();
        for i in 0..self.radial {
            let ring: Neumaier = (0..self.angular).map(|k| h(self.index(i, k))).collect();
            total.add(self.area_weights[i] * dtheta * ring.value());
        }
        total.value()
    }

    pub fn integrate_complex(&self, mut h: impl FnMut(usize) -> Complex64) -> Complex64 {
        let mut im = Vec::with_capacity(self.len());
        let re = self.integrate(|j| {
            let v = h(j);
            im.push(v.im);
            v.re
        });
        Complex64::new(re, self.integrate(|j| im[j]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn area_and_moments() {
        for alpha in [1.0, 0.5, 2.0, 1.0 / 0.25] {
            let g = DiscGrid::with_power(64, 32, alpha).unwrap();
            let area = g.integrate(|_| 1.0);
            assert!((area - PI).abs() < 1e-9, "alpha={alpha} area={area}");
            let radii = g.radii().to_vec();
            let m = g.integrate(|j| radii[j / g.angular()].powi(2));
            assert!((m - PI / 2.0).abs() < 1e-9, "alpha={alpha}");
        }
    }

    #[test]
    fn rejects_bad_grids() {
        assert!(DiscGrid::new(1, 16).is_err());
        assert!(DiscGrid::with_power(16, 16, -1.0).is_err());
        let g = DiscGrid::new(16, 30).unwrap();
        assert!(matches!(
            g.pushforward(4),
            Err(DiscError::GridIncompatibleWithDegree { angular: 30, n: 4 })
        ));
    }

    #[test]
    fn push_pull_grids_align() {
        let g = DiscGrid::new(16, 24).unwrap();
        let p = g.pushforward(3).unwrap();
        assert_eq!(p.angular(), 8);
        for i in 0..16 {
            assert!((p.radii()[i] - g.radii()[i].powi(3)).abs() < 1e-15);
        }
        let back = p.pullback(3).unwrap();
        assert_eq!(back.angular(), 24);
        for i in 0..16 {
            assert!((back.radii()[i] - g.radii()[i]).abs() < 1e-14);
        }
    }
}
