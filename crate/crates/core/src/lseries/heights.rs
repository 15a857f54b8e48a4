use std::f64::consts::PI;

use serde::Serialize;

use super::{
    l_derivative, l_value, petersson, EigenformData, LseriesError, QuadDisc, SeriesOptions,
    DEFAULT_QUAD_ORDER,
};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LValues {
    pub l1: f64,
    #[serde(rename = "l1prime")]
    pub l1_prime: f64,
    #[serde(rename = "lChiM4")]
    pub l_chi_m4: f64,
    #[serde(rename = "lChiM3")]
    pub l_chi_m3: f64,
    pub petersson: f64,
    /// Largest absolute error bound among the five values.
    #[serde(rename = "errBound")]
    pub err_bound: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeightOptions {
    pub series: SeriesOptions,
    pub quad_order: usize,
    /// Heights with `|h| ≤ clamp_tolerance` are set to zero.
    pub clamp_tolerance: f64,
}

impl Default for HeightOptions {
    fn default() -> Self {
        Self {
            series: SeriesOptions::default(),
            quad_order: DEFAULT_QUAD_ORDER,
            clamp_tolerance: 1e-9,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HeightReport {
    #[serde(rename = "hI")]
    pub h_i: f64,
    #[serde(rename = "hJ")]
    pub h_j: f64,
    #[serde(rename = "omegaFSq")]
    pub omega_f_sq: f64,
    #[serde(rename = "errBound")]
    pub err_bound: f64,
    #[serde(rename = "lValues")]
    pub l_values: LValues,
}

/// All analytic inputs of the height formulas; needs root number `−1`.
pub fn l_values(f: &EigenformData, opts: &HeightOptions) -> Result<LValues, LseriesError> {
    let d = l_derivative(f, &opts.series)?;
    let l1 = l_value(f, None, &opts.series)?;
    let l4 = l_value(f, Some(QuadDisc::M4), &opts.series)?;
    let l3 = l_value(f, Some(QuadDisc::M3), &opts.series)?;
    let p = petersson(f, opts.quad_order)?;
    let err_bound = [d, l1, l4, l3, p]
        .iter()
        .map(|e| e.error_bound)
        .fold(0.0, f64::max);
    Ok(LValues {
        l1: l1.value,
        l1_prime: d.value,
        l_chi_m4: l4.value,
        l_chi_m3: l3.value,
        petersson: p.value,
        // the series bounds can underflow to zero; keep the contract > 0
        err_bound: err_bound.max(f64::EPSILON),
    })
}

fn clamp(which: &'static str, h: f64, tol: f64) -> Result<f64, LseriesError> {
    if h < -tol {
        return Err(LseriesError::NegativeHeightBeyondTolerance { which, value: h });
    }
    Ok(if h.abs() <= tol { 0.0 } else { h })
}

fn omega(h_i: f64, h_j: f64) -> f64 {
    let s = h_i.max(0.0).sqrt() + 2.0 * h_j.max(0.0).sqrt();
    -s * s
}

/// Heights of the `f`-isotypical parts of the Heegner divisors and
/// `ω_f² = −(√h_I + 2√h_J)²`:
///
/// ```text
/// h_I = L(f, χ₋₄, 1) L'(f, 1) / (2π² (f, f))
/// h_J = √3 L(f, χ₋₃, 1) L'(f, 1) / (4π² (f, f))
/// ```
pub fn omega_f_sq(f: &EigenformData, opts: &HeightOptions) -> Result<HeightReport, LseriesError> {
    let v = l_values(f, opts)?;
    heights_from(v, opts.clamp_tolerance)
}

fn heights_from(v: LValues, tol: f64) -> Result<HeightReport, LseriesError> {
    let pi2 = PI * PI;
    let raw_i = v.l_chi_m4 * v.l1_prime / (2.0 * pi2 * v.petersson);
    let raw_j = 3f64.sqrt() * v.l_chi_m3 * v.l1_prime / (4.0 * pi2 * v.petersson);
    let h_i = clamp("hI", raw_i, tol)?;
    let h_j = clamp("hJ", raw_j, tol)?;
    // first order relative error of a product of three inputs
    let rel = |x: f64| v.err_bound / x.abs().max(f64::MIN_POSITIVE);
    let dh_i = raw_i.abs() * (rel(v.l_chi_m4) + rel(v.l1_prime) + rel(v.petersson)) + 1e-300;
    let dh_j = raw_j.abs() * (rel(v.l_chi_m3) + rel(v.l1_prime) + rel(v.petersson)) + 1e-300;
    let center = omega(h_i, h_j);
    let err_bound = [(-1.0, -1.0), (-1.0, 1.0), (1.0, -1.0), (1.0, 1.0)]
        .iter()
        .map(|&(a, b)| (omega(h_i + a * dh_i, h_j + b * dh_j) - center).abs())
        .fold(0.0, f64::max);
    Ok(HeightReport {
        h_i,
        h_j,
        omega_f_sq: center,
        err_bound,
        l_values: v,
    })
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;

    #[test]
    fn level_37() {
        let r = omega_f_sq(&f37(), &HeightOptions::default()).unwrap();
        assert!(r.omega_f_sq.is_finite() && r.omega_f_sq < 0.0);
        assert!(r.h_i > 0.0 && r.h_j > 0.0);
        let expect_i =
            2.451_389_381_986_79 * 0.305_999_773_834_052_3 / (2.0 * PI * PI * 0.371_754_147_5);
        assert!((r.h_i - expect_i).abs() < 1e-8, "{}", r.h_i);
        assert!(r.err_bound < 1e-6);
    }

    #[test]
    fn wrong_sign() {
        assert!(matches!(
            omega_f_sq(&f11(600), &HeightOptions::default()),
            Err(LseriesError::WrongSign { sign: 1 })
        ));
    }

    fn values(l4: f64, l3: f64) -> LValues {
        LValues {
            l1: 0.0,
            l1_prime: 0.3,
            l_chi_m4: l4,
            l_chi_m3: l3,
            petersson: 0.37,
            err_bound: 1e-13,
        }
    }

    #[test]
    fn vanishing_twists() {
        let r = heights_from(values(1e-14, -1e-14), 1e-9).unwrap();
        assert_eq!(r.omega_f_sq, 0.0);
        assert_eq!((r.h_i, r.h_j), (0.0, 0.0));
    }

    #[test]
    fn negative_height() {
        assert!(matches!(
            heights_from(values(-0.5, 1.0), 1e-9),
            Err(LseriesError::NegativeHeightBeyondTolerance { which: "hI", .. })
        ));
    }
}
