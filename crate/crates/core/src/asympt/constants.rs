//! The one closed-form constant available: `log C` for `n = 1`.

/// `zeta'(-1)` from the Euler-Maclaurin expansion of `sum_(k <= N) k log k`.
///
/// `log prod_(k<=N) k^k = (N^2/2 + N/2 + 1/12) log N - N^2/4 + 1/12 - zeta'(-1)
///  + 1/(720 N^2) - 1/(5040 N^4) + 1/(10080 N^6) + O(N^-8)`.
pub fn zeta_prime_minus_one() -> f64 {
    let n = 64.0_f64;
    let sum: f64 = (1..=64).map(|k| k as f64 * libm::log(k as f64)).sum();
    let n2 = n * n;
    let main = (n2 / 2.0 + n / 2.0 + 1.0 / 12.0) * libm::log(n) - n2 / 4.0;
    let tail = 1.0 / (720.0 * n2) - 1.0 / (5040.0 * n2 * n2) + 1.0 / (10080.0 * n2 * n2 * n2);
    1.0 / 12.0 - (sum - main - tail)
}

/// `log C = (1/24) log 2 + zeta'(-1)` for the Airy case.
pub fn log_c_airy() -> f64 {
    libm::log(2.0) / 24.0 + zeta_prime_minus_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn glaisher_value() {
        assert!((zeta_prime_minus_one() + 0.1654211437).abs() < 1e-10);
    }
}
