use std::f64::consts::PI;
use std::sync::Arc;

use serde::Serialize;

use super::checks::{
    check_adjoint, check_dbar_equality, check_hardy, check_ibp, seminorm1, CheckOptions,
};
use super::forms::{Form, NegLogAbsSq, PullBack, ZPoly};
use super::function::{pullback_pow, pushforward_pow, DiscFunction};
use super::grid::DiscGrid;
use super::DiscError;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
    pub tolerance: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub radial: usize,
    pub angular: usize,
    pub tolerance: f64,
    pub checks: Vec<CheckRecord>,
    pub passed: bool,
}

impl VerificationReport {
    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

struct Recorder {
    tolerance: f64,
    checks: Vec<CheckRecord>,
}

impl Recorder {
    fn equal(&mut self, name: impl Into<String>, lhs: f64, rhs: f64) {
        let residual = (lhs - rhs).abs();
        self.push(name, lhs, rhs, residual, residual <= self.tolerance);
    }

    fn push(&mut self, name: impl Into<String>, lhs: f64, rhs: f64, residual: f64, passed: bool) {
        self.checks.push(CheckRecord {
            name: name.into(),
            lhs,
            rhs,
            residual,
            tolerance: self.tolerance,
            passed: passed && lhs.is_finite() && rhs.is_finite(),
        });
    }

    fn error(&mut self, name: impl Into<String>, e: DiscError) {
        let name = format!("{} [{}]", name.into(), e.code());
        self.push(name, f64::NAN, f64::NAN, f64::INFINITY, false);
    }
}

fn form(p: ZPoly) -> Form {
    Arc::new(p)
}

/// Runs every identity on the given grid against its closed-form value.
pub fn certified_suite(grid: &DiscGrid, opts: &CheckOptions) -> VerificationReport {
    let mut rec = Recorder {
        tolerance: opts.tolerance,
        checks: Vec::new(),
    };
    if let Err(e) = run(Arc::new(grid.clone()), opts, &mut rec) {
        rec.error("suite aborted", e);
    }
    let passed = rec.checks.iter().all(|c| c.passed);
    VerificationReport {
        radial: grid.radial(),
        angular: grid.angular(),
        tolerance: opts.tolerance,
        checks: rec.checks,
        passed,
    }
}

impl Recorder {
    /// Runs a group of checks; an error fails the group under `name`.
    fn attempt(&mut self, name: &str, f: impl FnOnce(&mut Self) -> Result<(), DiscError>) {
        if let Err(e) = f(self) {
            self.error(name, e);
        }
    }
}

fn pulled_bump(grid: &Arc<DiscGrid>, n: u32) -> Result<DiscFunction, DiscError> {
    DiscFunction::sample(
        grid.clone(),
        Arc::new(PullBack {
            inner: form(ZPoly::bump()),
            n,
        }),
    )
}

fn run(g: Arc<DiscGrid>, opts: &CheckOptions, rec: &mut Recorder) -> Result<(), DiscError> {
    let tol = opts.tolerance;
    let bump = DiscFunction::sample(g.clone(), form(ZPoly::bump()))?;
    let z = DiscFunction::sample(g.clone(), form(ZPoly::z()))?;
    let one = DiscFunction::sample(g.clone(), form(ZPoly::constant(1.0)))?;
    let abs_sq = DiscFunction::sample(g.clone(), form(ZPoly::abs_sq_pow(1)))?;
    let z_bump = DiscFunction::sample(g.clone(), form(ZPoly::z().times_bump()))?;

    rec.attempt("seminorm1", |rec| {
        rec.equal("seminorm1(1-|z|^2) = pi", seminorm1(&bump, opts)?.value, PI);
        rec.equal("seminorm1(z) = 2pi", seminorm1(&z, opts)?.value, 2.0 * PI);
        rec.equal("seminorm1(1) = 0", seminorm1(&one, opts)?.value, 0.0);
        Ok(())
    });

    rec.attempt("dbar equality", |rec| {
        for (name, f) in [("1-|z|^2", &bump), ("z(1-|z|^2)", &z_bump)] {
            let c = check_dbar_equality(f, opts)?;
            rec.push(
                format!("dbar equality {name}"),
                c.lhs,
                c.rhs,
                c.residual,
                c.residual <= tol,
            );
        }
        let c = check_dbar_equality(&z_bump, opts)?;
        rec.equal("dbar z(1-|z|^2) lhs = pi/3", c.lhs, PI / 3.0);
        rec.equal("dbar z(1-|z|^2) rhs = pi/3", c.rhs, PI / 3.0);
        match check_dbar_equality(&one, opts) {
            Err(DiscError::BoundaryNonVanishing { max }) => {
                rec.push("dbar rejects f = 1", max, 0.0, 0.0, true)
            }
            other => rec.push(
                format!("dbar rejects f = 1 (got {other:?})"),
                0.0,
                0.0,
                1.0,
                false,
            ),
        }
        Ok(())
    });

    rec.attempt("hardy delta=1", |rec| {
        let h = check_hardy(&bump, 1.0, opts)?;
        rec.equal(
            "hardy 1-|z|^2 delta=1 lhs = 32pi/15",
            h.lhs,
            32.0 * PI / 15.0,
        );
        rec.equal("hardy 1-|z|^2 delta=1 rhs = 16pi", h.rhs, 16.0 * PI);
        Ok(())
    });
    for delta in [0.1, 0.25, 0.5, 1.0, 1.5] {
        rec.attempt(&format!("hardy delta={delta}"), |rec| {
            for (name, f) in [("1-|z|^2", &bump), ("z(1-|z|^2)", &z_bump)] {
                let h = check_hardy(f, delta, opts)?;
                rec.push(
                    format!("hardy {name} delta={delta} holds"),
                    h.lhs,
                    h.rhs,
                    (h.lhs - h.rhs).max(0.0),
                    h.holds,
                );
            }
            let exact = 4.0 * PI * (1.0 / delta - 2.0 / (delta + 2.0) + 1.0 / (delta + 4.0));
            rec.equal(
                format!("hardy 1-|z|^2 delta={delta} lhs closed form"),
                check_hardy(&bump, delta, opts)?.lhs,
                exact,
            );
            Ok(())
        });
    }

    // the w-side lives on the given grid and the z-side on its preimage,
    // so that every degree is compatible with the angular count
    rec.attempt("adjoint |w|^2,|z|^2,n=2", |rec| {
        let z_sq = DiscFunction::sample(Arc::new(g.pullback(2)?), form(ZPoly::abs_sq_pow(1)))?;
        let c = check_adjoint(&abs_sq, &z_sq, 2)?;
        rec.equal("adjoint |w|^2,|z|^2,n=2 lhs = 4pi/3", c.lhs, 4.0 * PI / 3.0);
        rec.equal("adjoint |w|^2,|z|^2,n=2 rhs = 4pi/3", c.rhs, 4.0 * PI / 3.0);
        rec.push(
            "adjoint |w|^2,|z|^2,n=2 sides agree",
            c.lhs,
            c.rhs,
            c.residual,
            c.residual <= tol,
        );
        Ok(())
    });

    for n in [2u32, 3] {
        rec.attempt(&format!("degree identities n={n}"), |rec| {
            let base = seminorm1(&bump, opts)?.value;
            let pulled = pulled_bump(&Arc::new(g.pullback(n)?), n)?;
            let c = check_adjoint(&bump, &pulled, n)?;
            rec.equal(
                format!("(phi*f, phi*f)_1 = n (f,f)_1, n={n}"),
                c.lhs,
                n as f64 * base,
            );
            rec.push(
                format!("adjoint with g = phi*f, n={n}"),
                c.lhs,
                c.rhs,
                c.residual,
                c.residual <= tol,
            );

            let nodewise = seminorm1(&pullback_pow(&bump, n)?, opts)?.value;
            rec.equal(
                format!("pullback degree identity node-wise, n={n}"),
                nodewise,
                n as f64 * base,
            );
            let resampled = pulled_bump(&g, n)?;
            rec.equal(
                format!("pullback degree identity resampled, n={n}"),
                seminorm1(&resampled, opts)?.value,
                n as f64 * base,
            );
            Ok(())
        });
    }

    rec.attempt("integration by parts", |rec| {
        let c = check_ibp(&bump, &abs_sq, opts)?;
        rec.equal("ibp 1-|z|^2, |z|^2 lhs = pi", c.lhs, PI);
        rec.equal("ibp 1-|z|^2, |z|^2 rhs = pi", c.rhs, PI);
        let re = DiscFunction::sample(g.clone(), form(ZPoly::re_z()))?;
        let c = check_ibp(&bump, &re, opts)?;
        rec.equal("ibp 1-|z|^2, Re z lhs = 0", c.lhs, 0.0);
        rec.equal("ibp 1-|z|^2, Re z rhs = 0", c.rhs, 0.0);
        Ok(())
    });

    rec.attempt("pushforward |z|^2, n=2", |rec| {
        let src = DiscFunction::sample(Arc::new(g.pullback(2)?), form(ZPoly::abs_sq_pow(1)))?;
        let p = pushforward_pow(&src, 2)?;
        let err = p
            .grid()
            .points()
            .zip(p.values())
            .map(|(w, v)| (v - 2.0 * w.norm()).norm())
            .fold(0.0, f64::max);
        rec.push("pushforward |z|^2, n=2 = 2|w|", err, 0.0, err, err <= tol);
        Ok(())
    });
    for n in [2u32, 3, 4] {
        rec.attempt(&format!("pushforward -log|z|^2, n={n}"), |rec| {
            let log = DiscFunction::sample(Arc::new(g.pullback(n)?), Arc::new(NegLogAbsSq))?;
            let p = pushforward_pow(&log, n)?;
            let err = p
                .grid()
                .points()
                .zip(p.values())
                .map(|(w, v)| (v.re + w.norm_sqr().ln()).abs() + v.im.abs())
                .fold(0.0, f64::max);
            rec.push(
                format!("pushforward -log|z|^2, n={n}"),
                err,
                0.0,
                err,
                err <= tol,
            );
            Ok(())
        });
    }
    Ok(())
}
