use std::sync::Arc;

use num_complex::Complex64;

use super::forms::{ClosedForm, Combination, Form, PullBack, PushForward};
use super::grid::DiscGrid;
use super::DiscError;

/// Node samples of `f`, `∂f`, `∂̄f` and `∂∂̄f`.
#[derive(Debug, Clone, PartialEq)]
pub struct Samples {
    pub values: Vec<Complex64>,
    pub dz: Vec<Complex64>,
    pub dzbar: Vec<Complex64>,
    pub dz_dzbar: Vec<Complex64>,
}

#[derive(Debug, Clone)]
pub struct DiscFunction {
    grid: Arc<DiscGrid>,
    samples: Samples,
    /// Values on the unit circle at the grid angles.
    boundary: Vec<Complex64>,
    closed: Option<Form>,
}

fn zeros(n: usize) -> Vec<Complex64> {
    vec![Complex64::new(0.0, 0.0); n]
}

fn check_finite(v: &[Complex64]) -> Result<(), DiscError> {
    match v
        .iter()
        .position(|z| !(z.re.is_finite() && z.im.is_finite()))
    {
        Some(j) => Err(DiscError::NonFinite(j)),
        None => Ok(()),
    }
}

impl DiscFunction {
    /// Samples a closed form at every node.
    pub fn sample(grid: Arc<DiscGrid>, form: Form) -> Result<Self, DiscError> {
        let pts: Vec<Complex64> = grid.points().collect();
        let samples = Samples {
            values: pts.iter().map(|&z| form.value(z)).collect(),
            dz: pts.iter().map(|&z| form.dz(z)).collect(),
            dzbar: pts.iter().map(|&z| form.dzbar(z)).collect(),
            dz_dzbar: pts.iter().map(|&z| form.dz_dzbar(z)).collect(),
        };
        check_finite(&samples.values)?;
        let boundary = grid.boundary_points().map(|z| form.value(z)).collect();
        Ok(Self {
            grid,
            samples,
            boundary,
            closed: Some(form),
        })
    }

    pub fn from_form(
        grid: &Arc<DiscGrid>,
        form: impl ClosedForm + 'static,
    ) -> Result<Self, DiscError> {
        Self::sample(grid.clone(), Arc::new(form))
    }

    /// Values only; derivatives by finite differences on the polar grid and
    /// boundary values by quadratic extrapolation in `r`.
    pub fn from_values(grid: Arc<DiscGrid>, values: Vec<Complex64>) -> Result<Self, DiscError> {
        if values.len() != grid.len() {
            return Err(DiscError::InvalidGrid(format!(
                "{} values for a grid of {} nodes",
                values.len(),
                grid.len()
            )));
        }
        check_finite(&values)?;
        let (dz, dzbar, dz_dzbar) = finite_differences(&grid, &values, 1);
        let boundary = extrapolate_boundary(&grid, &values);
        Ok(Self {
            grid,
            samples: Samples {
                values,
                dz,
                dzbar,
                dz_dzbar,
            },
            boundary,
            closed: None,
        })
    }

    pub fn grid(&self) -> &Arc<DiscGrid> {
        &self.grid
    }

    pub fn samples(&self) -> &Samples {
        &self.samples
    }

    pub fn values(&self) -> &[Complex64] {
        &self.samples.values
    }

    pub fn boundary(&self) -> &[Complex64] {
        &self.boundary
    }

    pub fn closed_form(&self) -> Option<&Form> {
        self.closed.as_ref()
    }

    pub fn boundary_max(&self) -> f64 {
        self.boundary.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Derivative samples recomputed from the values with stencil spacing
    /// `step` (1 or 2), for refinement estimates.
    pub fn finite_difference_samples(&self, step: usize) -> Samples {
        let (dz, dzbar, dz_dzbar) = finite_differences(&self.grid, &self.samples.values, step);
        Samples {
            values: self.samples.values.clone(),
            dz,
            dzbar,
            dz_dzbar,
        }
    }

    /// `a f + b g` on a common grid.
    pub fn combine(a: Complex64, f: &Self, b: Complex64, g: &Self) -> Result<Self, DiscError> {
        if f.grid != g.grid {
            return Err(DiscError::GridMismatch);
        }
        let lin = |x: &[Complex64], y: &[Complex64]| -> Vec<Complex64> {
            x.iter().zip(y).map(|(x, y)| a * x + b * y).collect()
        };
        let closed: Option<Form> = match (&f.closed, &g.closed) {
            (Some(p), Some(q)) => Some(Arc::new(Combination {
                terms: vec![(a, p.clone()), (b, q.clone())],
            })),
            _ => None,
        };
        Ok(Self {
            grid: f.grid.clone(),
            samples: Samples {
                values: lin(&f.samples.values, &g.samples.values),
                dz: lin(&f.samples.dz, &g.samples.dz),
                dzbar: lin(&f.samples.dzbar, &g.samples.dzbar),
                dz_dzbar: lin(&f.samples.dz_dzbar, &g.samples.dz_dzbar),
            },
            boundary: lin(&f.boundary, &g.boundary),
            closed,
        })
    }

    /// Same function on another grid; needs the closed form.
    pub fn resample(&self, grid: Arc<DiscGrid>) -> Result<Self, DiscError> {
        match &self.closed {
            Some(form) => Self::sample(grid, form.clone()),
            None => Err(DiscError::ClosedFormRequired),
        }
    }
}

/// `f ∘ zⁿ` on the preimage grid, node by node.
pub fn pullback_pow(f: &DiscFunction, n: u32) -> Result<DiscFunction, DiscError> {
    let grid = Arc::new(f.grid.pullback(n)?);
    let m_src = f.grid.angular();
    let nn = n as f64;
    let mut s = Samples {
        values: zeros(grid.len()),
        dz: zeros(grid.len()),
        dzbar: zeros(grid.len()),
        dz_dzbar: zeros(grid.len()),
    };
    for i in 0..grid.radial() {
        for k in 0..grid.angular() {
            let z = grid.point(i, k);
            let src = f.grid.index(i, k % m_src);
            let j = grid.index(i, k);
            s.values[j] = f.samples.values[src];
            s.dz[j] = f.samples.dz[src] * nn * z.powu(n - 1);
            s.dzbar[j] = f.samples.dzbar[src] * nn * z.conj().powu(n - 1);
            s.dz_dzbar[j] = f.samples.dz_dzbar[src] * nn * nn * z.norm_sqr().powi(n as i32 - 1);
        }
    }
    let boundary = (0..grid.angular()).map(|k| f.boundary[k % m_src]).collect();
    let closed: Option<Form> = f.closed.as_ref().map(|inner| {
        Arc::new(PullBack {
            inner: inner.clone(),
            n,
        }) as Form
    });
    Ok(DiscFunction {
        grid,
        samples: s,
        boundary,
        closed,
    })
}

/// `Σ_{ζⁿ=w} g(ζ)` on the image grid. Every preimage of an image node is a
/// source node, so no interpolation takes place; the roots of the node
/// with angle `2πk/(M/n)` are the source nodes `k + j·M/n`.
pub fn pushforward_pow(g: &DiscFunction, n: u32) -> Result<DiscFunction, DiscError> {
    let grid = Arc::new(g.grid.pushforward(n)?);
    let m_dst = grid.angular();
    let nn = n as f64;
    let mut s = Samples {
        values: zeros(grid.len()),
        dz: zeros(grid.len()),
        dzbar: zeros(grid.len()),
        dz_dzbar: zeros(grid.len()),
    };
    for i in 0..grid.radial() {
        for k in 0..m_dst {
            let w = grid.point(i, k);
            let j = grid.index(i, k);
            for r in 0..n as usize {
                let src = g.grid.index(i, k + r * m_dst);
                let zeta = g.grid.point(i, k + r * m_dst);
                s.values[j] += g.samples.values[src];
                s.dz[j] += zeta * g.samples.dz[src];
                s.dzbar[j] += zeta.conj() * g.samples.dzbar[src];
                s.dz_dzbar[j] += zeta.norm_sqr() * g.samples.dz_dzbar[src];
            }
            s.dz[j] /= nn * w;
            s.dzbar[j] /= nn * w.conj();
            s.dz_dzbar[j] /= nn * nn * w.norm_sqr();
        }
    }
    let boundary = (0..m_dst)
        .map(|k| (0..n as usize).map(|r| g.boundary[k + r * m_dst]).sum())
        .collect();
    let closed: Option<Form> = g.closed.as_ref().map(|inner| {
        Arc::new(PushForward {
            inner: inner.clone(),
            n,
        }) as Form
    });
    Ok(DiscFunction {
        grid,
        samples: s,
        boundary,
        closed,
    })
}

/// Derivative of the Lagrange interpolant through three nodes, at `x[at]`.
fn lagrange3(x: [f64; 3], y: [Complex64; 3], at: usize) -> (Complex64, Complex64) {
    let t = x[at];
    let mut d1 = Complex64::new(0.0, 0.0);
    let mut d2 = Complex64::new(0.0, 0.0);
    for a in 0..3 {
        let (b, c) = ((a + 1) % 3, (a + 2) % 3);
        let denom = (x[a] - x[b]) * (x[a] - x[c]);
        d1 += y[a] * ((t - x[b]) + (t - x[c])) / denom;
        d2 += y[a] * 2.0 / denom;
    }
    (d1, d2)
}

type Derivs = (Vec<Complex64>, Vec<Complex64>, Vec<Complex64>);

/// Second order differences in `(r, θ)`, converted through
/// `∂ = e^{−iθ}(∂_r − (i/r)∂_θ)/2`, `∂̄ = e^{iθ}(∂_r + (i/r)∂_θ)/2` and
/// `∂∂̄ = (f_rr + f_r/r + f_θθ/r²)/4`.
fn finite_differences(grid: &DiscGrid, values: &[Complex64], step: usize) -> Derivs {
    let (nr, m) = (grid.radial(), grid.angular());
    let r = grid.radii();
    let step = step.min((nr - 1) / 2).max(1);
    let dtheta = 2.0 * std::f64::consts::PI / m as f64 * step as f64;
    let i_unit = Complex64::new(0.0, 1.0);
    let mut dz = zeros(grid.len());
    let mut dzbar = zeros(grid.len());
    let mut lap = zeros(grid.len());
    for i in 0..nr {
        let stencil = if i < step {
            [i, i + step, i + 2 * step]
        } else if i + step >= nr {
            [i - 2 * step, i - step, i]
        } else {
            [i - step, i, i + step]
        };
        let at = stencil.iter().position(|&s| s == i).unwrap();
        let xs = [r[stencil[0]], r[stencil[1]], r[stencil[2]]];
        for k in 0..m {
            let ys = [
                values[grid.index(stencil[0], k)],
                values[grid.index(stencil[1], k)],
                values[grid.index(stencil[2], k)],
            ];
            let (fr, frr) = lagrange3(xs, ys, at);
            let kp = (k + step) % m;
            let km = (k + m - step % m) % m;
            let (fp, f0, fm) = (
                values[grid.index(i, kp)],
                values[grid.index(i, k)],
                values[grid.index(i, km)],
            );
            let ft = (fp - fm) / (2.0 * dtheta);
            let ftt = (fp - f0 * 2.0 + fm) / (dtheta * dtheta);
            let theta = grid.angle(k);
            let j = grid.index(i, k);
            let ri = r[i];
            dz[j] = Complex64::from_polar(0.5, -theta) * (fr - i_unit * ft / ri);
            dzbar[j] = Complex64::from_polar(0.5, theta) * (fr + i_unit * ft / ri);
            lap[j] = (frr + fr / ri + ftt / (ri * ri)) / 4.0;
        }
    }
    (dz, dzbar, lap)
}

/// Quadratic extrapolation to `r = 1` from the three outermost rings.
fn extrapolate_boundary(grid: &DiscGrid, values: &[Complex64]) -> Vec<Complex64> {
    let nr = grid.radial();
    let r = grid.radii();
    let idx = [nr - 3, nr - 2, nr - 1];
    (0..grid.angular())
        .map(|k| {
            let mut out = Complex64::new(0.0, 0.0);
            for a in 0..3 {
                let mut l = 1.0;
                for b in 0..3 {
                    if a != b {
                        l *= (1.0 - r[idx[b]]) / (r[idx[a]] - r[idx[b]]);
                    }
                }
                out += values[grid.index(idx[a], k)] * l;
            }
            out
        })
        .collect()
}
