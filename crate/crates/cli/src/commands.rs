//! Subcommand bodies. Each takes merged settings and returns the text to emit
//! and whether the run passed.

use gapprob_core::asympt::{g1_series, largegap_series_with, q_series, zeta0_series, AsymSeries, LogCoefficient};
use gapprob_core::exactalg::rational::{format_rational, to_f64};
use gapprob_core::fredholm::{logdet_with, profile_from_logdets, GapProfile};
use gapprob_core::hierarchy::build_hierarchy_eq;
use gapprob_core::kernel::{kernel_contour, kernel_factored, DomainMap, KernelEval};
use gapprob_core::specfun::{ContourSpec, ModelParams, PhiEvaluator};
use rayon::prelude::*;
use serde_json::json;

use crate::acceptance::{run_suite, Suite};
use crate::config::{rational, Range, Settings};
use crate::output::{csv, float, pretty, series_json};
use crate::CliError;

pub struct Report {
    pub text: String,
    pub passed: bool,
}

impl Report {
    fn ok(text: String) -> Self {
        Report { text, passed: true }
    }
}

/// Determinants computed concurrently; the grid order of the result does not
/// depend on scheduling.
pub fn profile_par(params: &ModelParams, s: &[f64], m: usize, fd_order: usize) -> Result<GapProfile, CliError> {
    let first = *s.first().ok_or_else(|| CliError::Usage("empty grid".into()))?;
    let ke = KernelEval::new(params, &ContourSpec::for_degree(params.n), first)?;
    let dets = s.par_iter().map(|&sk| logdet_with(&ke, sk, m, DomainMap::default())).collect::<Result<Vec<_>, _>>()?;
    Ok(profile_from_logdets(params, s, &dets, fd_order)?)
}

fn bounded(name: &str, v: usize, lo: usize, hi: usize) -> Result<usize, CliError> {
    if v < lo || v > hi {
        return Err(CliError::Usage(format!("--{name} must lie in {lo}..={hi}")));
    }
    Ok(v)
}

pub fn hierarchy(s: &Settings) -> Result<Report, CliError> {
    let n = s.n()?;
    let taus = s.taus_exact(n)?;
    let alpha = s.alpha.as_ref().map(|a| rational(&a.to_text())).transpose()?;
    let symbolic = taus.is_none() && n > 1;
    let eq = build_hierarchy_eq(n, &taus.unwrap_or_else(|| vec![rational("0").unwrap(); n - 1]), alpha)?;
    let text = match s.format(&["text", "latex", "json"])?.as_str() {
        "text" => format!("{}\n", eq.render_text(symbolic)),
        "latex" => format!("{}\n", eq.render_latex(symbolic)),
        _ => pretty(&json!({
            "n": n,
            "order": eq.order(),
            "taus": if symbolic { None } else { Some(eq.taus.iter().map(format_rational).collect::<Vec<_>>()) },
            "alpha": eq.alpha.as_ref().map(format_rational),
            "equation": eq.render_text(symbolic),
        })),
    };
    Ok(Report::ok(text))
}

pub fn aigen(s: &Settings) -> Result<Report, CliError> {
    let params = s.params()?;
    let range = Range::parse(s.x_range.as_deref().ok_or_else(|| CliError::Usage("--x a:b:step is required".into()))?)?;
    let xs = range.grid()?;
    let deriv = s.deriv.unwrap_or(0);
    bounded("deriv", deriv as usize, 0, 4 * params.n)?;
    let ev = PhiEvaluator::new(&params, &ContourSpec::for_degree(params.n), xs[0], deriv)?;
    let rows = xs.par_iter().map(|&x| ev.eval(x).map(|e| vec![x, e.value, e.err])).collect::<Result<Vec<_>, _>>()?;
    let text = match s.format(&["csv", "json"])?.as_str() {
        "csv" => csv(&["x", "value", "err_estimate"], &rows)?,
        _ => pretty(
            &json!({ "n": params.n, "taus": params.taus, "deriv": deriv, "columns": ["x", "value", "err_estimate"], "rows": rows }),
        ),
    };
    Ok(Report::ok(text))
}

pub fn kernel(s: &Settings) -> Result<Report, CliError> {
    let params = s.params()?;
    let (x, y) = match (s.x, s.y) {
        (Some(x), Some(y)) if x.is_finite() && y.is_finite() => (x, y),
        _ => return Err(CliError::Usage("--x and --y are required".into())),
    };
    let ke = KernelEval::with_defaults(&params, x.min(y))?;
    let f = kernel_factored(&ke, x, y)?;
    let c = kernel_contour(&ke, x, y)?;
    let text = match s.format(&["text", "json"])?.as_str() {
        "text" => format!("factored   {}\ncontour    {}\ndifference {}\n", float(f), float(c), float((f - c).abs())),
        _ => pretty(&json!({ "x": x, "y": y, "factored": f, "contour": c, "difference": (f - c).abs() })),
    };
    Ok(Report::ok(text))
}

pub fn fredholm(s: &Settings) -> Result<Report, CliError> {
    let params = s.params()?;
    let range = Range::parse(s.s_range.as_deref().ok_or_else(|| CliError::Usage("--s a:b:step is required".into()))?)?;
    let grid = range.grid()?;
    let m = bounded("nodes", s.nodes.unwrap_or(60), 10, 400)?;
    let fd = s.fd_order.unwrap_or(6);
    if ![4, 6, 8].contains(&fd) {
        return Err(CliError::Usage("--fd-order must be 4, 6 or 8".into()));
    }
    if grid.len() < 10 {
        return Err(CliError::Usage("the s grid needs at least 10 points".into()));
    }
    let p = profile_par(&params, &grid, m, fd)?;
    let rows: Vec<Vec<f64>> =
        (0..p.len()).map(|i| vec![p.s[i], p.log_f[i], p.dlog_f[i], p.q2[i], p.q[i], p.err[i]]).collect();
    let columns = ["s", "logF", "dlogF", "q2", "q", "err_estimate"];
    let text = match s.format(&["csv", "json"])?.as_str() {
        "csv" => csv(&columns, &rows)?,
        _ => pretty(&json!({
            "n": params.n, "taus": params.taus, "rho": params.rho, "nodes": m, "fd_order": fd,
            "columns": columns, "rows": rows,
        })),
    };
    Ok(Report::ok(text))
}

pub fn asympt(s: &Settings) -> Result<Report, CliError> {
    let n = s.n()?;
    let taus = s.taus_or_zero(n)?;
    let log = match s.log_coefficient.as_deref().unwrap_or("displayed") {
        "displayed" => LogCoefficient::Displayed,
        "hierarchy" => LogCoefficient::Hierarchy,
        other => return Err(CliError::Usage(format!("--log-coefficient must be displayed or hierarchy, got {other}"))),
    };
    let name = s.series.clone().unwrap_or_else(|| "largegap".into());
    let depth = s.depth;
    let (label, series): (&str, AsymSeries) = match name.as_str() {
        "largegap" => ("logF", largegap_series_with(n, &taus, log)?),
        "q" => {
            let d = bounded("depth", depth.unwrap_or(2 * n), 0, 2 * n + 1)?;
            ("q((-1)^(n+1)*s)", q_series(n, &taus, d)?)
        }
        "zeta0" => ("zeta0", zeta0_series(n, &taus, bounded("depth", depth.unwrap_or(2 * n), 0, 12)?)?),
        "g1" => ("g1", g1_series(n, &taus, bounded("depth", depth.unwrap_or(2 * n), 0, 12)?)?),
        other => return Err(CliError::Usage(format!("--series must be largegap, q, zeta0 or g1, got {other}"))),
    };
    let floats = s.float.unwrap_or(false);
    let text = match s.format(&["text", "json"])?.as_str() {
        "text" => {
            let mut out = format!("{label} ~ {series}\n");
            if floats {
                for (e, c) in series.terms() {
                    out.push_str(&format!("  |s|^({}): {}\n", format_rational(e), float(c.to_f64())));
                }
                if let Some(c) = &series.log_coeff {
                    out.push_str(&format!("  log|s|: {}\n", float(to_f64(c))));
                }
            }
            out
        }
        _ => {
            let mut v = series_json(&name, &series);
            v["n"] = json!(n);
            v["taus"] = json!(taus.iter().map(format_rational).collect::<Vec<_>>());
            if !floats {
                for t in v["terms"].as_array_mut().expect("array") {
                    t.as_object_mut().expect("object").remove("value");
                }
            }
            pretty(&v)
        }
    };
    Ok(Report::ok(text))
}

pub fn verify(s: &Settings) -> Result<Report, CliError> {
    let name = s.suite.clone().unwrap_or_else(|| "all".into());
    let suite = Suite::parse(&name)
        .ok_or_else(|| CliError::Usage(format!("--suite must be exact, asympt, numeric or all, got {name}")))?;
    let results = run_suite(suite, |_| {});
    let text: String = results.iter().map(|r| format!("{r}\n")).collect();
    Ok(Report { text, passed: results.iter().all(|r| r.passed) })
}
