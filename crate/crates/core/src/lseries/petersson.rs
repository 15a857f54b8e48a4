//! `(f, f) = ∫_{Γ₀(N)\H} |f(z)|² dx dy` for prime `N`, without volume
//! normalization.
//!
//! The domain is `F ∪ ⋃_j S T^j F` with `F` the standard domain of
//! `SL₂(ℤ)`. Using `f|S = (w_N/N) f(z/N)`, the translates contribute
//! `N^{−2} ∫_F |f((z + j)/N)|²`. Each copy of `F` splits at `y = 1`: the
//! strip `y ≥ 1` is integrated termwise, the arc region
//! `√(1 − x²) ≤ y ≤ 1` by a tensor Gauss–Legendre rule.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::{EigenformData, LseriesError};
use crate::numeric::{gauss_legendre, Neumaier};
use crate::symbolic::Evaluation;

pub const DEFAULT_QUAD_ORDER: usize = 48;

const SERIES_CUTOFF: f64 = 1e-18;

/// Terms needed so that `Σ_{n>M} 2n |q|^n` is negligible.
fn terms_for(abs_q: f64) -> usize {
    let mut n = 1usize;
    while 2.0 * n as f64 * abs_q.powi(n as i32) > SERIES_CUTOFF * (1.0 - abs_q) {
        n += 1;
    }
    n
}

fn eval(an: &[i64], z: Complex64) -> Complex64 {
    let q = (Complex64::i() * 2.0 * PI * z).exp();
    let m = terms_for(q.norm()).min(an.len());
    let mut qn = Complex64::new(1.0, 0.0);
    let mut acc = Complex64::new(0.0, 0.0);
    for &a in &an[..m] {
        qn *= q;
        if a != 0 {
            acc += qn * a as f64;
        }
    }
    acc
}

fn arc_integral(f: &EigenformData, order: usize) -> f64 {
    let n = f.level as f64;
    let (xs, wx) = gauss_legendre(order, -0.5, 0.5);
    let mut total = Neumaier::new();
    for (&x, &w) in xs.iter().zip(&wx) {
        let (ys, wy) = gauss_legendre(order, (1.0 - x * x).sqrt(), 1.0);
        for (&y, &v) in ys.iter().zip(&wy) {
            let z = Complex64::new(x, y);
            let mut point = eval(&f.an, z).norm_sqr();
            let mut translates = Neumaier::new();
            for j in 0..f.level {
                translates.add(eval(&f.an, (z + j as f64) / n).norm_sqr());
            }
            point += translates.value() / (n * n);
            total.add(w * v * point);
        }
    }
    total.value()
}

fn strip_integral(f: &EigenformData) -> f64 {
    let n = f.level as f64;
    f.an.iter()
        .enumerate()
        .map(|(i, &a)| {
            let k = (i + 1) as f64;
            (a * a) as f64 * ((-4.0 * PI * k).exp() + (-4.0 * PI * k / n).exp()) / (4.0 * PI * k)
        })
        .collect::<Neumaier>()
        .value()
}

/// Petersson norm with the rule of order `quad_order`, cross-checked against
/// an order `3/2` times higher. The reported bound is the difference of
/// the two rules; it must stay below `1e−9` relative.
pub fn petersson(f: &EigenformData, quad_order: usize) -> Result<Evaluation, LseriesError> {
    let lowest_im = 3f64.sqrt() / (2.0 * f.level as f64);
    let required = terms_for((-2.0 * PI * lowest_im).exp());
    if required > f.precision() {
        return Err(LseriesError::InsufficientCoefficients {
            required,
            available: f.precision(),
        });
    }
    let strip = strip_integral(f);
    let coarse = strip + arc_integral(f, quad_order);
    let fine = strip + arc_integral(f, quad_order.max(2) * 3 / 2);
    let change = (fine - coarse).abs();
    if change > 1e-9 * fine.abs() {
        return Err(LseriesError::QuadratureNotConverged {
            order: quad_order,
            change,
        });
    }
    Ok(Evaluation {
        value: fine,
        error_bound: change,
    })
}
