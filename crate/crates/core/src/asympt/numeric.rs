//! Large gap expansions against computed determinants.

use alloc::vec::Vec;

use super::constants::log_c_airy;
use super::expansions::{largegap_series_with, LogCoefficient};
use super::AsymptError;
use crate::exactalg::rational::to_f64;
use crate::exactalg::Rational;
use crate::fredholm::GapProfile;

#[derive(Clone, Debug, PartialEq)]
pub struct WindowFit {
    pub lo: f64,
    pub hi: f64,
    /// Mean of `log F - series` over the window: the least-squares constant.
    pub constant: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct KnownConstantCheck {
    pub log_c: f64,
    pub s: f64,
    /// `|log F(s) - series(s) - log C|`.
    pub deviation: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AsymptReport {
    pub n: usize,
    /// `(s, log F(s) - series(s))` for every grid point with `s < 0`.
    pub residuals: Vec<(f64, f64)>,
    pub fits: Vec<WindowFit>,
    /// `max - min` of the fitted constants.
    pub spread: Option<f64>,
    pub known: Option<KnownConstantCheck>,
}

/// Subtracts the large gap series (powers and log term) from `log F`.
///
/// With `fit_constant`, the constant is fitted on the unit windows
/// `[s_0, s_0 + 1]` and `[s_0 + 1, s_0 + 2]` at the left end of the grid.
/// For `n = 1` the residual at `s_0` is compared with the known constant.
pub fn asympt_vs_numeric(
    taus: &[Rational],
    profile: &GapProfile,
    fit_constant: bool,
) -> Result<AsymptReport, AsymptError> {
    asympt_vs_numeric_with(taus, profile, fit_constant, LogCoefficient::Displayed)
}

/// As `asympt_vs_numeric` with the chosen `log|s|` coefficient.
pub fn asympt_vs_numeric_with(
    taus: &[Rational],
    profile: &GapProfile,
    fit_constant: bool,
    log: LogCoefficient,
) -> Result<AsymptReport, AsymptError> {
    let params = &profile.params;
    let n = params.n;
    if taus.len() + 1 != n {
        return Err(AsymptError::Domain("expected n - 1 deformation parameters"));
    }
    if taus.iter().zip(&params.taus).any(|(a, b)| (to_f64(a) - b).abs() > 1e-12 * (1.0 + b.abs())) {
        return Err(AsymptError::Domain("deformation parameters differ from the profile's"));
    }
    if params.rho != 1.0 {
        return Err(AsymptError::Domain("the large gap expansion is for rho = 1"));
    }
    let Some(&s0) = profile.s.first() else {
        return Err(AsymptError::Domain("empty profile"));
    };
    if s0 > -4.0 {
        return Err(AsymptError::Domain("profile must extend to s <= -4"));
    }
    let series = largegap_series_with(n, taus, log)?;
    let residuals: Vec<(f64, f64)> = profile
        .s
        .iter()
        .zip(&profile.log_f)
        .filter(|(s, _)| **s < 0.0)
        .map(|(s, l)| (*s, l - series.eval_without_constant(-s)))
        .collect();
    let mut fits = Vec::new();
    if fit_constant {
        for k in 0..2 {
            let lo = s0 + k as f64;
            let hi = lo + 1.0;
            let inside: Vec<f64> =
                residuals.iter().filter(|(s, _)| *s >= lo - 1e-9 && *s <= hi + 1e-9).map(|(_, r)| *r).collect();
            if inside.is_empty() || hi > 0.0 {
                return Err(AsymptError::Domain("profile too short for the fit windows"));
            }
            fits.push(WindowFit { lo, hi, constant: inside.iter().sum::<f64>() / inside.len() as f64 });
        }
    }
    let spread = (!fits.is_empty()).then(|| {
        let c = fits.iter().map(|f| f.constant);
        c.clone().fold(f64::NEG_INFINITY, f64::max) - c.fold(f64::INFINITY, f64::min)
    });
    let known = (n == 1).then(|| {
        let log_c = log_c_airy();
        KnownConstantCheck { log_c, s: residuals[0].0, deviation: (residuals[0].1 - log_c).abs() }
    });
    Ok(AsymptReport { n, residuals, fits, spread, known })
}
