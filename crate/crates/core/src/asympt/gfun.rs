//! Numeric g-function data: the branch point `zeta_0(s)`, the coefficients
//! `c_j` and `g_1(s)`.

use alloc::vec::Vec;

use super::AsymptError;
use crate::exactalg::rational::{binomial, half_gamma_ratio, to_f64};

fn tau_f(taus: &[f64], n: usize, k: usize) -> f64 {
    if k == n {
        1.0
    } else if k == 0 {
        0.0
    } else {
        taus[k - 1]
    }
}

fn sign(p: usize) -> f64 {
    if p % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

fn binom_f(a: usize, b: usize) -> f64 {
    to_f64(&crate::exactalg::Rational::from_integer(binomial(a as u64, b as u64)))
}

/// `binom(2n, n)^(-1/(2n))`.
pub fn theta0_f64(n: usize) -> f64 {
    libm::pow(binom_f(2 * n, n), -1.0 / (2.0 * n as f64))
}

/// Unique positive root of
/// `sum_k (-1)^(n-k) C(2k,k) tau_k |s|^((k-n)/n) zeta^(2k) = 1`.
///
/// Safeguarded Newton from `theta_0` inside the bracket
/// `[theta_0 / 2, 2 theta_0]`; the defining polynomial must be increasing at
/// the root.
pub fn zeta0_solve(n: usize, taus: &[f64], s: f64, precision: f64) -> Result<f64, AsymptError> {
    if n == 0 || taus.len() + 1 != n {
        return Err(AsymptError::Domain("expected n >= 1 and n - 1 deformation parameters"));
    }
    if !(s < 0.0) {
        return Err(AsymptError::Regime("zeta_0 is defined for s < 0"));
    }
    let t = -s;
    let coef: Vec<f64> = (1..=n)
        .map(|k| sign(n - k) * binom_f(2 * k, k) * tau_f(taus, n, k) * libm::pow(t, (k as f64 - n as f64) / n as f64))
        .collect();
    let p = |z: f64| -> (f64, f64) {
        let mut v = -1.0;
        let mut d = 0.0;
        for (i, c) in coef.iter().enumerate() {
            let k = (i + 1) as i32;
            v += c * libm::pow(z, 2.0 * k as f64);
            d += c * 2.0 * k as f64 * libm::pow(z, 2.0 * k as f64 - 1.0);
        }
        (v, d)
    };
    let th = theta0_f64(n);
    let (mut lo, mut hi) = (th / 2.0, 2.0 * th);
    if !(p(lo).0 < 0.0 && p(hi).0 > 0.0) {
        return Err(AsymptError::Regime("no sign change of the zeta_0 equation near theta_0"));
    }
    let mut z = th;
    for _ in 0..200 {
        let (v, d) = p(z);
        if v < 0.0 {
            lo = z;
        } else {
            hi = z;
        }
        let newton = z - v / d;
        let next = if d > 0.0 && newton > lo && newton < hi { newton } else { 0.5 * (lo + hi) };
        let done = (next - z).abs() <= precision * next.abs() || hi - lo <= precision * z.abs();
        z = next;
        if done {
            break;
        }
    }
    if !(p(z).1 > 0.0) {
        return Err(AsymptError::Regime("zeta_0 equation is not increasing at the root"));
    }
    Ok(z)
}

/// Values of `c_1 .. c_n`, `zeta_0` and `g_1` at one `s`.
#[derive(Clone, Debug, PartialEq)]
pub struct GFunctionCoeffs {
    pub n: usize,
    pub s: f64,
    pub zeta0: f64,
    /// `c[j - 1] = c_j`.
    pub c: Vec<f64>,
    pub g1: f64,
}

/// `c_(n-m)` for `m = 0 .. n-1` and `g_1(s)`, from the closed forms in terms
/// of `zeta_0(s)`.
pub fn g_coeffs(n: usize, taus: &[f64], s: f64) -> Result<GFunctionCoeffs, AsymptError> {
    let z0 = zeta0_solve(n, taus, s, 1e-15)?;
    let t = -s;
    let nf = n as f64;
    let mut c = alloc::vec![0.0; n];
    for m in 0..n {
        let mut acc = 0.0;
        for k in 0..=m {
            let idx = n - m + k;
            let gam = to_f64(&half_gamma_ratio(idx as u32, (n - m + 1) as u32));
            let fact: f64 = (1..=k).map(|i| i as f64).product();
            acc += sign(m - k)
                * libm::pow(2.0, (2 * idx) as f64 - 1.0)
                * tau_f(taus, n, idx)
                * libm::pow(t, -((m - k) as f64) / nf)
                * gam
                / fact
                * libm::pow(z0, 2.0 * k as f64);
        }
        c[n - m - 1] = acc;
    }
    let g1 = 0.5
        * (1..=n)
            .map(|k| {
                sign(n - k)
                    * tau_f(taus, n, k)
                    * binom_f(2 * k, k - 1)
                    * libm::pow(t, (2 * k + 1) as f64 / (2.0 * nf))
                    * libm::pow(z0, (2 * k + 2) as f64)
            })
            .sum::<f64>();
    Ok(GFunctionCoeffs { n, s, zeta0: z0, c, g1 })
}
