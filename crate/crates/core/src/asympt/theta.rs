//! `theta_i` and `theta_i^[2]` as residues at infinity.

use alloc::vec::Vec;

use num_traits::Zero;

use crate::exactalg::rational::{binomial, int, Rational};
use crate::exactalg::{residue_of_power, AlgElem, AlgPoly, ExactError};

/// `tau_k` for `k = 1..n` with `tau_n = 1`; `tau_0 = 0`.
fn tau(taus: &[Rational], n: usize, k: usize) -> Rational {
    match k {
        0 => Rational::zero(),
        k if k == n => int(1),
        k => taus[k - 1].clone(),
    }
}

fn check_taus(n: usize, taus: &[Rational]) -> Result<u32, ExactError> {
    if n == 0 || taus.len() + 1 != n {
        return Err(ExactError::Domain("expected n >= 1 and n - 1 deformation parameters"));
    }
    u32::try_from(n).map_err(|_| ExactError::Domain("n out of range"))
}

/// `lambda(z) = sum_k (-1)^(n-k) C(2k, k) tau_k z^(2k)`.
pub fn lambda_poly(n: usize, taus: &[Rational]) -> Result<AlgPoly, ExactError> {
    let nf = check_taus(n, taus)?;
    let mut c = alloc::vec![Rational::zero(); 2 * n + 1];
    for k in 1..=n {
        c[2 * k] = signed_binom(n, k) * tau(taus, n, k);
    }
    Ok(AlgPoly::from_rationals(nf, &c))
}

/// `lambda~(z) = sum_k (-1)^(n-k) C(2k, k) tau_k z^k`.
pub fn lambda_tilde_poly(n: usize, taus: &[Rational]) -> Result<AlgPoly, ExactError> {
    let nf = check_taus(n, taus)?;
    let mut c = alloc::vec![Rational::zero(); n + 1];
    for k in 1..=n {
        c[k] = signed_binom(n, k) * tau(taus, n, k);
    }
    Ok(AlgPoly::from_rationals(nf, &c))
}

fn signed_binom(n: usize, k: usize) -> Rational {
    let b = Rational::from_integer(binomial(2 * k as u64, k as u64));
    if (n - k) % 2 == 0 {
        b
    } else {
        -b
    }
}

/// `theta_i = res lambda^((2i-1)/(2n)) / (2i - 1)`; `theta_0 = beta^-1`.
pub fn theta(n: usize, taus: &[Rational], i: usize) -> Result<AlgElem, ExactError> {
    let lam = lambda_poly(n, taus)?;
    let e = Rational::new((2 * i as i64 - 1).into(), (2 * n as i64).into());
    let r = residue_of_power(&lam, &e)?;
    Ok(r.scale(&Rational::new(1.into(), (2 * i as i64 - 1).into())))
}

/// `theta_i^[2]`, the coefficients of `zeta_0^2`.
///
/// `theta_0^[2] = theta_0^2`, `theta_1^[2] = tau_(n-1) / (4n - 2)` and
/// `theta_i^[2] = res lambda~^((i-1)/n) / (i - 1)` for `i >= 2`.
pub fn theta2(n: usize, taus: &[Rational], i: usize) -> Result<AlgElem, ExactError> {
    let nf = check_taus(n, taus)?;
    match i {
        0 => {
            let t0 = AlgElem::monomial(nf, int(1), -1);
            Ok(&t0 * &t0)
        }
        1 => Ok(AlgElem::from_rational(nf, tau(taus, n, n - 1) / int(4 * n as i64 - 2))),
        _ => {
            let lt = lambda_tilde_poly(n, taus)?;
            let e = Rational::new((i as i64 - 1).into(), (n as i64).into());
            let r = residue_of_power(&lt, &e)?;
            Ok(r.scale(&Rational::new(1.into(), (i as i64 - 1).into())))
        }
    }
}

/// Result of an exact identity sweep.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub passed: bool,
    pub first_failure: Option<usize>,
}

impl CheckOutcome {
    fn from_failure(first_failure: Option<usize>) -> Self {
        CheckOutcome { passed: first_failure.is_none(), first_failure }
    }
}

/// Checks `theta_j^[2] = sum_i theta_i theta_(j-i)` for `j <= max_i`.
pub fn theta2_convolution_check(n: usize, taus: &[Rational], max_i: usize) -> Result<CheckOutcome, ExactError> {
    let th: Vec<AlgElem> = (0..=max_i).map(|i| theta(n, taus, i)).collect::<Result<_, _>>()?;
    for j in 0..=max_i {
        let mut conv = AlgElem::zero(n as u32);
        for i in 0..=j {
            conv += &(&th[i] * &th[j - i]);
        }
        if conv != theta2(n, taus, j)? {
            return Ok(CheckOutcome::from_failure(Some(j)));
        }
    }
    Ok(CheckOutcome::from_failure(None))
}

/// Checks `theta_(kn+1)^[2] = 0` for `k = 1..=max_k`.
pub fn null_coefficients_check(n: usize, taus: &[Rational], max_k: usize) -> Result<CheckOutcome, ExactError> {
    for k in 1..=max_k {
        let i = k * n + 1;
        if !theta2(n, taus, i)?.is_zero() {
            return Ok(CheckOutcome::from_failure(Some(i)));
        }
    }
    Ok(CheckOutcome::from_failure(None))
}
