use std::fmt::Write;
use std::path::Path;

use serde_json::{json, Value};
use x0chow::disc::{certified_suite, CheckOptions, DiscGrid};
use x0chow::eis::{self, GramConvention};
use x0chow::gamma0;
use x0chow::lseries::{self, HeightOptions, SeriesOptions};
use x0chow::modular;
use x0chow::symbolic::SymbolicReal;

/// Rendered result of a subcommand.
pub struct Output {
    pub json: String,
    pub table: String,
    pub success: bool,
}

impl Output {
    fn new(value: Value, table: String) -> Self {
        Self {
            json: serde_json::to_string(&value).expect("JSON values serialize"),
            table,
            success: true,
        }
    }
}

/// A domain error with its machine-readable code.
#[derive(Debug)]
pub struct CliError {
    pub code: &'static str,
    pub message: String,
}

impl CliError {
    pub fn to_json(&self) -> String {
        json!({"error": {"code": self.code, "message": self.message}}).to_string()
    }
}

macro_rules! domain_error {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError { code: e.code(), message: e.to_string() }
            }
        }
    )*};
}

domain_error!(
    gamma0::LevelError,
    eis::EisError,
    x0chow::symbolic::SymbolError,
    modular::ModularError,
    lseries::LseriesError,
    x0chow::disc::DiscError
);

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report types serialize")
}

/// `x` rounded to `digits` decimals.
fn rounded(x: f64, digits: u32) -> f64 {
    format!("{x:.*}", digits as usize).parse().unwrap_or(x)
}

pub fn invariants(n: u64) -> Result<Output, CliError> {
    let d = gamma0::invariants(n)?;
    let table = format!(
        "N      {}\npsi    {}\nnu2    {}\nnu3    {}\ncusps  {}\ngenus  {}\n",
        d.n, d.psi, d.nu2, d.nu3, d.cusps, d.genus
    );
    Ok(Output::new(to_value(&d), table))
}

fn matrix_table(labels: &[String], cell: impl Fn(usize, usize) -> String) -> String {
    let n = labels.len();
    let cells: Vec<Vec<String>> = (0..n)
        .map(|i| (0..n).map(|j| cell(i, j)).collect())
        .collect();
    let width = cells
        .iter()
        .flatten()
        .chain(labels)
        .map(|s| s.chars().count())
        .max()
        .unwrap_or(1);
    let mut out = String::new();
    let _ = write!(out, "{:width$}", "");
    for l in labels {
        let _ = write!(out, "  {l:>width$}");
    }
    out.push('\n');
    for (i, row) in cells.iter().enumerate() {
        let _ = write!(out, "{:width$}", labels[i]);
        for c in row {
            let _ = write!(out, "  {c:>width$}");
        }
        out.push('\n');
    }
    out
}

pub fn gram(n: u64, convention: GramConvention) -> Result<Output, CliError> {
    let g = eis::gram_with(n, convention)?;
    let labels: Vec<String> = g.basis().elements().iter().map(|e| e.to_string()).collect();
    let table = matrix_table(&labels, |i, j| g.entry(i, j).to_string());
    Ok(Output::new(to_value(&g), table))
}

fn symbolic_with_numeric(x: &SymbolicReal, precision: u32) -> Result<(Value, f64, f64), CliError> {
    let e = x.evaluate(precision)?;
    Ok((to_value(x), rounded(e.value, precision), e.error_bound))
}

pub fn omega_eis(n: u64, precision: u32) -> Result<Output, CliError> {
    let g = eis::gram(n)?;
    let w = eis::omega_eis_sq(&g)?;
    let (symbolic, numeric, bound) = symbolic_with_numeric(&w, precision)?;
    let value = json!({
        "N": n,
        "symbolic": symbolic,
        "text": w.to_string(),
        "numeric": numeric,
        "errorBound": bound,
    });
    let table = format!("omega_eis^2({n}) = {w}\n               ~ {numeric}  (+/- {bound:.1e})\n");
    Ok(Output::new(value, table))
}

fn operator_output(op: &eis::EisOperator, self_adjoint: bool) -> Output {
    let mut value = to_value(op);
    let shift = op.dinf_shift().map(|s| s.to_string());
    if let Value::Object(map) = &mut value {
        map.insert(
            "dinf_shift".into(),
            shift.clone().map_or(Value::Null, Value::String),
        );
        map.insert("self_adjoint".into(), Value::Bool(self_adjoint));
    }
    let labels: Vec<String> = op
        .basis()
        .elements()
        .iter()
        .map(|e| e.to_string())
        .collect();
    let mut table = format!("{} at level {}\n", op.name(), op.basis().level());
    table += &matrix_table(&labels, |i, j| {
        op.entry(i, j)
            .map_or_else(|| "undefined".to_string(), |e| e.to_string())
    });
    if let Some(s) = shift {
        table += &format!("DINF shift    {s}\n");
    }
    table += &format!("self-adjoint  {self_adjoint}\n");
    Output::new(value, table)
}

pub fn hecke_t(n: u64, l: u64) -> Result<Output, CliError> {
    let op = eis::t_hat(l, n)?;
    let sa = eis::is_self_adjoint(&op, &eis::gram(n)?)?;
    Ok(operator_output(&op, sa))
}

pub fn hecke_w(n: u64, d: u64) -> Result<Output, CliError> {
    let op = eis::w_hat(d, n)?;
    let sa = eis::is_self_adjoint(&op, &eis::gram(n)?)?;
    Ok(operator_output(&op, sa))
}

fn heegner_table(h: &modular::HeegnerDivisor) -> String {
    format!(
        "disc {:>3}  points {:>3}  weight {}  roots {:?}\n",
        h.disc,
        h.len(),
        h.weight_per_point,
        h.roots
    )
}

pub fn heegner(n: u64, disc: Option<i64>) -> Result<Output, CliError> {
    match disc {
        Some(d) => {
            let h = modular::heegner_points(n, d)?;
            let table = format!("N {n}\n{}", heegner_table(&h));
            Ok(Output::new(to_value(&h), table))
        }
        None => {
            let c = modular::canonical_decomposition(n)?;
            let table = format!(
                "N {n}\nomega = {}[inf] - H_i - 2 H_j\n{}{}",
                c.mult_infty,
                heegner_table(&c.h_i),
                heegner_table(&c.h_j)
            );
            Ok(Output::new(to_value(&c), table))
        }
    }
}

pub fn omega_f(
    path: &Path,
    label: Option<&str>,
    quad_order: usize,
    precision: u32,
    tolerance: Option<f64>,
) -> Result<Output, CliError> {
    let forms = lseries::ingest_path(path)?;
    let selected: Vec<_> = forms
        .iter()
        .filter(|f| label.is_none_or(|l| f.label == l))
        .collect();
    if selected.is_empty() {
        return Err(CliError {
            code: "UnknownLabel",
            message: format!("no eigenform labelled {}", label.unwrap_or("")),
        });
    }
    let series_tol = 10f64.powi(-(precision as i32));
    let opts = HeightOptions {
        series: SeriesOptions {
            terms: None,
            tolerance: series_tol,
        },
        quad_order,
        clamp_tolerance: tolerance.unwrap_or(1e-9),
    };
    let mut results = Vec::new();
    let mut table = String::new();
    for f in selected {
        let r = lseries::omega_f_sq(f, &opts)?;
        let mut v = to_value(&r);
        if let Value::Object(map) = &mut v {
            map.shift_insert(0, "label".into(), Value::String(f.label.clone()));
            map.shift_insert(1, "level".into(), json!(f.level));
        }
        results.push(v);
        let lv = r.l_values;
        let _ = writeln!(table, "{} (N = {})", f.label, f.level);
        let _ = writeln!(
            table,
            "  L'(f,1)          {:.*}",
            precision as usize, lv.l1_prime
        );
        let _ = writeln!(
            table,
            "  L(f,chi_-4,1)    {:.*}",
            precision as usize, lv.l_chi_m4
        );
        let _ = writeln!(
            table,
            "  L(f,chi_-3,1)    {:.*}",
            precision as usize, lv.l_chi_m3
        );
        let _ = writeln!(
            table,
            "  (f,f)            {:.*}",
            precision as usize, lv.petersson
        );
        let _ = writeln!(table, "  h_I              {:.*}", precision as usize, r.h_i);
        let _ = writeln!(table, "  h_J              {:.*}", precision as usize, r.h_j);
        let _ = writeln!(
            table,
            "  omega_f^2        {:.*}  (+/- {:.1e})",
            precision as usize, r.omega_f_sq, r.err_bound
        );
    }
    Ok(Output::new(json!({ "results": results }), table))
}

pub fn verify_analysis(radial: usize, angular: usize, tolerance: f64) -> Result<Output, CliError> {
    let grid = DiscGrid::new(radial, angular)?;
    let report = certified_suite(&grid, &CheckOptions { tolerance });
    let mut table = format!("grid {radial} x {angular}, tolerance {tolerance:e}\n");
    for c in &report.checks {
        let _ = writeln!(
            table,
            "{}  {:<52} residual {:.2e}",
            if c.passed { "PASS" } else { "FAIL" },
            c.name,
            c.residual
        );
    }
    let mut out = Output::new(to_value(&report), table);
    out.success = report.passed;
    Ok(out)
}
