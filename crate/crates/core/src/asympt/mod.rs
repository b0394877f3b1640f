//! Exact large gap coefficients: `theta_i`, `theta_i^[2]`, the g-function
//! data and the assembled expansions of `zeta_0`, `g_1`, `q` and `log F`.

pub mod constants;
pub mod expansions;
pub mod gfun;
pub mod numeric;
pub mod series;
pub mod theta;

pub use constants::{log_c_airy, zeta_prime_minus_one};
pub use expansions::{
    g1_series, largegap_series, largegap_series_with, log_coefficient, q_series, zeta0_series, LogCoefficient,
};
pub use gfun::{g_coeffs, theta0_f64, zeta0_solve, GFunctionCoeffs};
pub use numeric::{asympt_vs_numeric, asympt_vs_numeric_with, AsymptReport, KnownConstantCheck, WindowFit};
pub use series::{AsymSeries, FittedConstant};
pub use theta::{
    lambda_poly, lambda_tilde_poly, null_coefficients_check, theta, theta2, theta2_convolution_check, CheckOutcome,
};

use crate::exactalg::ExactError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum AsymptError {
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error("outside the asymptotic regime: {0}")]
    Regime(&'static str),
    #[error("domain error: {0}")]
    Domain(&'static str),
}
