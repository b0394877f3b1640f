//! Assembled expansions as `s -> -infinity`, all in powers of `|s|`.

use num_traits::Zero;

use super::series::{AsymSeries, FittedConstant};
use super::theta::{theta, theta2};
use crate::exactalg::rational::{int, rat, Rational};
use crate::exactalg::{AlgElem, ExactError};

const VAR: &str = "|s|";

/// Coefficient of `log|s|` in `log F(s; 1)`.
pub fn log_coefficient(n: usize) -> Rational {
    if n == 1 {
        rat(-1, 8)
    } else {
        rat(-1, 2)
    }
}

/// Source of the `log|s|` coefficient.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LogCoefficient {
    /// `-1/8` for `n = 1`, `-1/2` otherwise, as displayed with the expansions.
    Displayed,
    /// `-(2n+1)/(24n)`: the value forced by substituting the `q` expansion
    /// into the hierarchy and integrating `q^2 = -(log F)''` twice.
    Hierarchy,
}

impl LogCoefficient {
    pub fn value(self, n: usize) -> Rational {
        match self {
            LogCoefficient::Displayed => log_coefficient(n),
            LogCoefficient::Hierarchy => rat(-(2 * n as i64 + 1), 24 * n as i64),
        }
    }
}

/// `zeta_0(s) ~ sum_(i <= depth) theta_i |s|^(-i/n)`.
pub fn zeta0_series(n: usize, taus: &[Rational], depth: usize) -> Result<AsymSeries, ExactError> {
    let mut out = AsymSeries::new(VAR, n as u32);
    for i in 0..=depth {
        out.add_term(rat(-(i as i64), n as i64), theta(n, taus, i)?);
    }
    Ok(out)
}

/// `g_1(s) ~ sum_(i <= depth, i != n+1) n / (2(n+1-i)) theta_i^[2] |s|^((2n+1-2i)/(2n)) + kappa |s|^(-1/(2n))`.
pub fn g1_series(n: usize, taus: &[Rational], depth: usize) -> Result<AsymSeries, ExactError> {
    let mut out = AsymSeries::new(VAR, n as u32);
    let ni = n as i64;
    for i in (0..=depth).filter(|&i| i != n + 1) {
        let ii = i as i64;
        let c = Rational::new(ni.into(), (2 * (ni + 1 - ii)).into());
        out.add_term(rat(2 * ni + 1 - 2 * ii, 2 * ni), theta2(n, taus, i)?.scale(&c));
    }
    out.fitted = Some(FittedConstant { label: "kappa", exponent: rat(-1, 2 * ni), value: None });
    Ok(out)
}

/// `log F(s; 1) ~ -sum_(j <= 2n, j != n+1) n^2 / ((n+1-j)(2n+1-j)) theta_j^[2] |s|^((2n-j+1)/n) + c log|s| + log C`.
pub fn largegap_series(n: usize, taus: &[Rational]) -> Result<AsymSeries, ExactError> {
    largegap_series_with(n, taus, LogCoefficient::Displayed)
}

/// As `largegap_series` with the chosen `log|s|` coefficient.
pub fn largegap_series_with(n: usize, taus: &[Rational], log: LogCoefficient) -> Result<AsymSeries, ExactError> {
    let mut out = AsymSeries::new(VAR, n as u32);
    let ni = n as i64;
    for j in (0..=2 * n).filter(|&j| j != n + 1) {
        let jj = j as i64;
        let c = -Rational::new((ni * ni).into(), ((ni + 1 - jj) * (2 * ni + 1 - jj)).into());
        out.add_term(rat(2 * ni - jj + 1, ni), theta2(n, taus, j)?.scale(&c));
    }
    out.log_coeff = Some(log.value(n));
    out.fitted = Some(FittedConstant { label: "logC", exponent: Rational::zero(), value: None });
    Ok(out)
}

/// `q((-1)^(n+1) s; 1) ~ sum_(i <= min(depth, 2n)) theta_i |s|^(1/(2n) - i/n)`,
/// plus `c / (2 theta_0) |s|^(-2 - 1/(2n))` when `depth >= 2n + 1`.
pub fn q_series(n: usize, taus: &[Rational], depth: usize) -> Result<AsymSeries, ExactError> {
    if depth > 2 * n + 1 {
        return Err(ExactError::Domain("q series depth is at most 2n + 1"));
    }
    let mut out = AsymSeries::new(VAR, n as u32);
    let ni = n as i64;
    for i in 0..=depth.min(2 * n) {
        out.add_term(rat(1 - 2 * i as i64, 2 * ni), theta(n, taus, i)?);
    }
    if depth == 2 * n + 1 {
        // 1 / (2 theta_0) = beta / 2
        let corr = AlgElem::monomial(n as u32, log_coefficient(n) / int(2), 1);
        out.add_term(rat(-4 * ni - 1, 2 * ni), corr);
    }
    Ok(out)
}
