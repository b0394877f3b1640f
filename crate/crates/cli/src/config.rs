//! Run configuration: an optional JSON file merged under command-line flags.
//!
//! Every key is optional; flags win over file values. Example:
//!
//! ```json
//! { "n": 2, "taus": ["1/2"], "rho": "1", "s_range": "-6:4:0.05", "nodes": 60, "fd_order": 6 }
//! ```

use std::fs;
use std::path::{Path, PathBuf};

use gapprob_core::exactalg::rational::{parse_rational, to_f64};
use gapprob_core::exactalg::Rational;
use gapprob_core::specfun::ModelParams;
use serde::{Deserialize, Serialize};

use crate::CliError;

/// Numbers may be written as JSON numbers or as strings such as `"1/3"`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Int(i64),
    Float(f64),
    Text(String),
}

impl Scalar {
    pub fn to_text(&self) -> String {
        match self {
            Scalar::Int(v) => v.to_string(),
            Scalar::Float(v) => format!("{v:?}"),
            Scalar::Text(t) => t.clone(),
        }
    }
}

/// Raw settings, as read from a file or collected from flags.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Settings {
    pub n: Option<usize>,
    pub taus: Option<Vec<Scalar>>,
    pub rho: Option<Scalar>,
    pub alpha: Option<Scalar>,
    pub s_range: Option<String>,
    pub x_range: Option<String>,
    pub x: Option<f64>,
    pub y: Option<f64>,
    pub nodes: Option<usize>,
    pub fd_order: Option<usize>,
    pub deriv: Option<u32>,
    pub depth: Option<usize>,
    pub float: Option<bool>,
    pub format: Option<String>,
    pub output: Option<PathBuf>,
    pub series: Option<String>,
    pub log_coefficient: Option<String>,
    pub suite: Option<String>,
}

macro_rules! overlay {
    ($top:expr, $base:expr, $($f:ident),*) => {
        Settings { $($f: $top.$f.or($base.$f)),* }
    };
}

impl Settings {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text =
            fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("bad config {}: {e}", path.display())))
    }

    /// `self` wins over `base`.
    pub fn over(self, base: Settings) -> Settings {
        overlay!(
            self,
            base,
            n,
            taus,
            rho,
            alpha,
            s_range,
            x_range,
            x,
            y,
            nodes,
            fd_order,
            deriv,
            depth,
            float,
            format,
            output,
            series,
            log_coefficient,
            suite
        )
    }

    pub fn n(&self) -> Result<usize, CliError> {
        let n = self.n.ok_or_else(|| CliError::Usage("--n is required".into()))?;
        if !(1..=6).contains(&n) {
            return Err(CliError::Usage("--n must lie in 1..=6".into()));
        }
        Ok(n)
    }

    /// Exact deformation parameters; `None` if none were given.
    pub fn taus_exact(&self, n: usize) -> Result<Option<Vec<Rational>>, CliError> {
        let Some(taus) = &self.taus else { return Ok(None) };
        if taus.is_empty() {
            return Ok(None);
        }
        if taus.len() + 1 != n {
            return Err(CliError::Usage(format!("expected {} values of --tau for n = {n}, got {}", n - 1, taus.len())));
        }
        taus.iter().map(|t| rational(&t.to_text())).collect::<Result<Vec<_>, _>>().map(Some)
    }

    /// Deformation parameters with zeros as the default.
    pub fn taus_or_zero(&self, n: usize) -> Result<Vec<Rational>, CliError> {
        Ok(self.taus_exact(n)?.unwrap_or_else(|| vec![Rational::from_integer(0.into()); n - 1]))
    }

    pub fn rho(&self) -> Result<f64, CliError> {
        let rho = self.rho.as_ref().map(|r| rational(&r.to_text())).transpose()?;
        Ok(rho.map_or(1.0, |r| to_f64(&r)))
    }

    pub fn params(&self) -> Result<ModelParams, CliError> {
        let n = self.n()?;
        let taus = self.taus_or_zero(n)?.iter().map(to_f64).collect();
        ModelParams::new(n, taus, self.rho()?).map_err(|e| CliError::Usage(e.to_string()))
    }

    pub fn format(&self, allowed: &[&str]) -> Result<String, CliError> {
        let f = self.format.clone().unwrap_or_else(|| allowed[0].to_string());
        if !allowed.contains(&f.as_str()) {
            return Err(CliError::Usage(format!("--format must be one of {}", allowed.join(", "))));
        }
        Ok(f)
    }
}

pub fn rational(text: &str) -> Result<Rational, CliError> {
    parse_rational(text).map_err(|_| CliError::Usage(format!("not a number: {text:?}")))
}

/// `a:b:step` with `a < b` and `step > 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Range {
    pub start: f64,
    pub end: f64,
    pub step: f64,
}

impl Range {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let bad = || CliError::Usage(format!("range must look like a:b:step, got {text:?}"));
        let parts: Vec<&str> = text.split(':').collect();
        if parts.len() != 3 {
            return Err(bad());
        }
        let v: Vec<f64> = parts.iter().map(|p| p.trim().parse::<f64>()).collect::<Result<_, _>>().map_err(|_| bad())?;
        let r = Range { start: v[0], end: v[1], step: v[2] };
        if !v.iter().all(|x| x.is_finite()) || r.step <= 0.0 || r.end <= r.start {
            return Err(CliError::Usage(format!("empty range or non-positive step in {text:?}")));
        }
        Ok(r)
    }

    pub fn grid(&self) -> Result<Vec<f64>, CliError> {
        gapprob_core::fredholm::uniform_grid(self.start, self.end, self.step)
            .map_err(|_| CliError::Usage("the step must divide the range".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_override_file() {
        let file: Settings = serde_json::from_str(r#"{"n": 2, "taus": ["1/2"], "nodes": 40, "rho": 0.25}"#).unwrap();
        let flags = Settings { nodes: Some(80), ..Settings::default() };
        let s = flags.over(file);
        assert_eq!(s.n, Some(2));
        assert_eq!(s.nodes, Some(80));
        assert_eq!(s.rho().unwrap(), 0.25);
        assert_eq!(s.taus_or_zero(2).unwrap()[0], parse_rational("1/2").unwrap());
        assert!(serde_json::from_str::<Settings>(r#"{"bogus": 1}"#).is_err());
    }

    #[test]
    fn ranges() {
        let r = Range::parse("-4:6:0.05").unwrap();
        assert_eq!(r.grid().unwrap().len(), 201);
        assert!(Range::parse("1:0:0.1").is_err());
        assert!(Range::parse("0:1:-1").is_err());
        assert!(Range::parse("0:1").is_err());
        assert!(Range::parse("0:1:0.3").unwrap().grid().is_err());
    }
}
