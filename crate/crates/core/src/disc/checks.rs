//! Dirichlet pairings and the identities they satisfy on the disc.
//!
//! With `i dz ∧ dz̄ = 2 dA`:
//!
//! ```text
//! (f, g)₁       = i ∫ ∂f ∧ conj(∂g)  = 2 ∫ f_z conj(g_z) dA
//! 2π ∫ f dd^c ḡ                      = 2 ∫ f conj(g_{zz̄}) dA
//! i ∫ |f|² |z|^{δ−2} dz ∧ dz̄         = 2 ∫ |f|² r^{δ−2} dA
//! ```
//!
//! where `dd^c = (i/2π) ∂∂̄`.

use std::sync::Arc;

use num_complex::Complex64;
use serde::Serialize;

use super::function::{pullback_pow, pushforward_pow, DiscFunction, Samples};
use super::grid::DiscGrid;
use super::DiscError;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CheckOptions {
    pub tolerance: f64,
}

impl Default for CheckOptions {
    fn default() -> Self {
        Self { tolerance: 1e-6 }
    }
}

/// Two sides of an identity. `lhs` and `rhs` are real parts; `residual`
/// is the modulus of the complex difference.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Comparison {
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
}

impl Comparison {
    fn new(lhs: Complex64, rhs: Complex64) -> Self {
        Self {
            lhs: lhs.re,
            rhs: rhs.re,
            residual: (lhs - rhs).norm(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HardyResult {
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Seminorm {
    pub value: f64,
    /// Change against the next coarser resolution.
    pub refinement: f64,
}

fn pairing_on(grid: &DiscGrid, a: &[Complex64], b: &[Complex64]) -> Complex64 {
    grid.integrate_complex(|j| a[j] * b[j].conj()) * 2.0
}

/// `(f, g)₁` from the stored derivative samples.
pub fn dirichlet_pairing(f: &DiscFunction, g: &DiscFunction) -> Result<Complex64, DiscError> {
    if f.grid() != g.grid() {
        return Err(DiscError::GridMismatch);
    }
    Ok(pairing_on(f.grid(), &f.samples().dz, &g.samples().dz))
}

fn seminorm_of(grid: &DiscGrid, s: &Samples) -> f64 {
    2.0 * grid.integrate(|j| s.dz[j].norm_sqr())
}

/// `‖f‖₁² = i ∫ ∂f ∧ conj(∂f)`. With a closed form the refinement estimate
/// compares against the half-resolution grid; otherwise it compares the
/// finite difference derivatives of spacing one and two (second order, so
/// the estimate is a third of the difference).
pub fn seminorm1(f: &DiscFunction, opts: &CheckOptions) -> Result<Seminorm, DiscError> {
    let value = seminorm_of(f.grid(), f.samples());
    let refinement = match f.closed_form() {
        Some(form) => {
            let coarse = Arc::new(f.grid().coarsened()?);
            let g = DiscFunction::sample(coarse.clone(), form.clone())?;
            (seminorm_of(&coarse, g.samples()) - value).abs()
        }
        None => {
            let wide = f.finite_difference_samples(2);
            (seminorm_of(f.grid(), &wide) - value).abs() / 3.0
        }
    };
    if refinement > opts.tolerance {
        return Err(DiscError::GridTooCoarse {
            estimate: refinement,
            tolerance: opts.tolerance,
        });
    }
    Ok(Seminorm { value, refinement })
}

fn require_boundary_vanishing(f: &DiscFunction, opts: &CheckOptions) -> Result<(), DiscError> {
    let m = f.boundary_max();
    if m > opts.tolerance {
        return Err(DiscError::BoundaryNonVanishing { max: m });
    }
    Ok(())
}

/// `∫ |∂f/∂z|² dA` against `∫ |∂f/∂z̄|² dA` for `f` vanishing on `∂D`.
pub fn check_dbar_equality(f: &DiscFunction, opts: &CheckOptions) -> Result<Comparison, DiscError> {
    require_boundary_vanishing(f, opts)?;
    let s = f.samples();
    let lhs = f.grid().integrate(|j| s.dz[j].norm_sqr());
    let rhs = f.grid().integrate(|j| s.dzbar[j].norm_sqr());
    Ok(Comparison::new(lhs.into(), rhs.into()))
}

/// `i∫|f|²|z|^{δ−2} dz∧dz̄ ≤ (4/δ)² ‖f‖₁²`. The left side is integrated
/// on the grid `r = u^{1/δ}`, on which `r^{δ−1} dr = du/δ`.
pub fn check_hardy(
    f: &DiscFunction,
    delta: f64,
    opts: &CheckOptions,
) -> Result<HardyResult, DiscError> {
    if !(delta > 0.0 && delta < 2.0) {
        return Err(DiscError::InvalidGrid(format!(
            "delta {delta} outside (0, 2)"
        )));
    }
    require_boundary_vanishing(f, opts)?;
    let base = f.grid();
    let lhs_on = |h: &DiscFunction| -> f64 {
        let grid = h.grid();
        let r = grid.radii();
        let m = grid.angular();
        2.0 * grid.integrate(|j| h.values()[j].norm_sqr() * r[j / m].powf(delta - 2.0))
    };
    let lhs = if f.closed_form().is_some() {
        let singular = Arc::new(DiscGrid::with_power(
            base.radial(),
            base.angular(),
            1.0 / delta,
        )?);
        let lhs = lhs_on(&f.resample(singular.clone())?);
        let coarse = lhs_on(&f.resample(Arc::new(singular.coarsened()?))?);
        let change = (coarse - lhs).abs();
        if change > opts.tolerance * lhs.abs().max(1.0) {
            return Err(DiscError::QuadratureNotConverged { change });
        }
        lhs
    } else if base.alpha() * delta >= 1.0 - 1e-12 {
        // the weight u^{αδ−1} of the grid is bounded
        lhs_on(f)
    } else {
        return Err(DiscError::ClosedFormRequired);
    };
    let rhs = (4.0 / delta).powi(2) * seminorm1(f, opts)?.value;
    Ok(HardyResult {
        lhs,
        rhs,
        holds: lhs <= rhs + opts.tolerance,
    })
}

/// `(φ^* f, g)₁ = (f, φ_* g)₁` for `φ(z) = zⁿ`; `f` lives on the image
/// grid of `g`'s grid.
pub fn check_adjoint(f: &DiscFunction, g: &DiscFunction, n: u32) -> Result<Comparison, DiscError> {
    let image = g.grid().pushforward(n)?;
    if !grids_close(f.grid(), &image) {
        return Err(DiscError::GridIncompatibleWithDegree {
            angular: g.grid().angular(),
            n,
        });
    }
    let pulled = pullback_pow(f, n)?;
    let pushed = pushforward_pow(g, n)?;
    let lhs = pairing_on(g.grid(), &pulled.samples().dz, &g.samples().dz);
    let rhs = pairing_on(f.grid(), &f.samples().dz, &pushed.samples().dz);
    Ok(Comparison::new(lhs, rhs))
}

fn grids_close(a: &DiscGrid, b: &DiscGrid) -> bool {
    a.radial() == b.radial()
        && a.angular() == b.angular()
        && a.radii()
            .iter()
            .zip(b.radii())
            .all(|(x, y)| (x - y).abs() <= 1e-14)
}

/// `2π ∫ f dd^c ḡ = −(f, g)₁` for `f` vanishing on `∂D`.
pub fn check_ibp(
    f: &DiscFunction,
    g: &DiscFunction,
    opts: &CheckOptions,
) -> Result<Comparison, DiscError> {
    if f.grid() != g.grid() {
        return Err(DiscError::GridMismatch);
    }
    require_boundary_vanishing(f, opts)?;
    let fv = f.values();
    let gl = &g.samples().dz_dzbar;
    let lhs = f.grid().integrate_complex(|j| fv[j] * gl[j].conj()) * 2.0;
    let rhs = -dirichlet_pairing(f, g)?;
    Ok(Comparison::new(lhs, rhs))
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use super::super::forms::ZPoly;
    use super::*;

    fn grid(nr: usize, m: usize) -> Arc<DiscGrid> {
        Arc::new(DiscGrid::new(nr, m).unwrap())
    }

    fn opts() -> CheckOptions {
        CheckOptions::default()
    }

    #[test]
    fn seminorm_examples() {
        let g = grid(32, 64);
        let bump = DiscFunction::from_form(&g, ZPoly::bump()).unwrap();
        assert!((seminorm1(&bump, &opts()).unwrap().value - PI).abs() < 1e-12);
        let z = DiscFunction::from_form(&g, ZPoly::z()).unwrap();
        assert!((seminorm1(&z, &opts()).unwrap().value - 2.0 * PI).abs() < 1e-12);
        let c = DiscFunction::from_form(&g, ZPoly::constant(3.0)).unwrap();
        assert_eq!(seminorm1(&c, &opts()).unwrap().value, 0.0);
    }

    #[test]
    fn seminorm_from_values() {
        let g = grid(64, 128);
        let f = ZPoly::z().times_bump();
        let exact = DiscFunction::from_form(&g, f).unwrap();
        let fd = DiscFunction::from_values(g, exact.values().to_vec()).unwrap();
        let s = seminorm1(&fd, &CheckOptions { tolerance: 1e-3 }).unwrap();
        // 2∫|1 − 2|z|²|² dA = 2π/3
        assert!((s.value - 2.0 * PI / 3.0).abs() < 1e-3, "{s:?}");
        assert!(matches!(
            seminorm1(&fd, &CheckOptions { tolerance: 1e-14 }),
            Err(DiscError::GridTooCoarse { .. })
        ));
    }

    #[test]
    fn dbar_examples() {
        let g = grid(32, 64);
        let f = DiscFunction::from_form(&g, ZPoly::bump()).unwrap();
        assert!(check_dbar_equality(&f, &opts()).unwrap().residual < 1e-14);
        let f = DiscFunction::from_form(&g, ZPoly::z().times_bump()).unwrap();
        let c = check_dbar_equality(&f, &opts()).unwrap();
        assert!((c.lhs - PI / 3.0).abs() < 1e-12 && (c.rhs - PI / 3.0).abs() < 1e-12);
        let one = DiscFunction::from_form(&g, ZPoly::constant(1.0)).unwrap();
        assert!(matches!(
            check_dbar_equality(&one, &opts()),
            Err(DiscError::BoundaryNonVanishing { .. })
        ));
    }

    #[test]
    fn hardy_examples() {
        let g = grid(64, 64);
        let f = DiscFunction::from_form(&g, ZPoly::bump()).unwrap();
        let h = check_hardy(&f, 1.0, &opts()).unwrap();
        assert!((h.lhs - 32.0 * PI / 15.0).abs() < 1e-10);
        assert!((h.rhs - 16.0 * PI).abs() < 1e-10);
        assert!(h.holds);
        let h = check_hardy(&f, 0.1, &opts()).unwrap();
        let exact = 4.0 * PI * (1.0 / 0.1 - 2.0 / 2.1 + 1.0 / 4.1);
        assert!((h.lhs - exact).abs() < 1e-8, "{} {exact}", h.lhs);
        assert!((h.rhs - 1600.0 * PI).abs() < 1e-8);
        let zero = DiscFunction::from_form(&g, ZPoly::constant(0.0)).unwrap();
        let h = check_hardy(&zero, 1.0, &opts()).unwrap();
        assert_eq!((h.lhs, h.rhs, h.holds), (0.0, 0.0, true));
    }

    #[test]
    fn adjoint_examples() {
        let g = grid(32, 64);
        let image = Arc::new(g.pushforward(2).unwrap());
        let f = DiscFunction::from_form(&image, ZPoly::abs_sq_pow(1)).unwrap();
        let h = DiscFunction::from_form(&g, ZPoly::abs_sq_pow(1)).unwrap();
        let c = check_adjoint(&f, &h, 2).unwrap();
        assert!((c.lhs - 4.0 * PI / 3.0).abs() < 1e-10, "{c:?}");
        assert!((c.rhs - 4.0 * PI / 3.0).abs() < 1e-10, "{c:?}");
        let k = DiscFunction::from_form(&image, ZPoly::constant(2.0)).unwrap();
        let c = check_adjoint(&k, &h, 2).unwrap();
        assert_eq!((c.lhs, c.rhs), (0.0, 0.0));
        assert!(matches!(
            check_adjoint(&f, &h, 3),
            Err(DiscError::GridIncompatibleWithDegree { .. })
        ));
    }

    #[test]
    fn ibp_examples() {
        let g = grid(32, 64);
        let f = DiscFunction::from_form(&g, ZPoly::bump()).unwrap();
        let sq = DiscFunction::from_form(&g, ZPoly::abs_sq_pow(1)).unwrap();
        let c = check_ibp(&f, &sq, &opts()).unwrap();
        assert!((c.lhs - PI).abs() < 1e-12 && (c.rhs - PI).abs() < 1e-12);
        let re = DiscFunction::from_form(&g, ZPoly::re_z()).unwrap();
        let c = check_ibp(&f, &re, &opts()).unwrap();
        assert!(c.lhs.abs() < 1e-14 && c.rhs.abs() < 1e-14);
    }
}
