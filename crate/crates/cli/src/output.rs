//! CSV and JSON writers and the output destination.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use gapprob_core::asympt::AsymSeries;
use gapprob_core::exactalg::rational::format_rational;
use gapprob_core::exactalg::AlgElem;
use serde_json::{json, Value};

use crate::CliError;

/// Only the output directory may come from the environment.
pub const OUT_DIR_VAR: &str = "GAPPROB_OUT_DIR";

/// Relative output paths are taken inside `$GAPPROB_OUT_DIR` when it is set.
pub fn resolve(path: &Path) -> PathBuf {
    match std::env::var_os(OUT_DIR_VAR) {
        Some(dir) if path.is_relative() => Path::new(&dir).join(path),
        _ => path.to_path_buf(),
    }
}

pub fn emit(text: &str, path: Option<&Path>) -> Result<(), CliError> {
    match path {
        Some(p) => {
            let p = resolve(p);
            if let Some(parent) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                fs::create_dir_all(parent)?;
            }
            fs::write(&p, text)?;
        }
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
        }
    }
    Ok(())
}

/// 17 significant digits.
pub fn float(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn csv(header: &[&str], rows: &[Vec<f64>]) -> Result<String, CliError> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    w.write_record(header).map_err(|e| CliError::Numeric(e.to_string()))?;
    for r in rows {
        w.write_record(r.iter().map(|v| float(*v))).map_err(|e| CliError::Numeric(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Numeric(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("ascii"))
}

pub fn alg_json(x: &AlgElem) -> Value {
    json!({ "n": x.n(), "coeffs": x.coeff_strings() })
}

pub fn series_json(name: &str, s: &AsymSeries) -> Value {
    let terms: Vec<Value> = s
        .terms()
        .map(|(e, c)| json!({ "exponent": format_rational(e), "coeff": alg_json(c), "value": c.to_f64() }))
        .collect();
    json!({
        "series": name,
        "variable": s.variable(),
        "terms": terms,
        "log_coeff": s.log_coeff.as_ref().map(format_rational),
        "fitted": s.fitted.as_ref().map(|f| json!({ "label": f.label, "exponent": format_rational(&f.exponent) })),
    })
}

pub fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}
