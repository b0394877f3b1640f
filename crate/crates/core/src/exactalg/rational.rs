//! Big rationals and a few helpers that `num-rational` does not provide.

use alloc::format;
use alloc::string::{String, ToString};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::ExactError;

/// Arbitrary precision rational, always stored in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Binomial coefficient `C(n, k)` as an exact integer.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Generalized binomial coefficient `C(r, k)` for rational `r`.
pub fn binomial_rational(r: &Rational, k: u64) -> Rational {
    let mut acc = Rational::one();
    for i in 0..k {
        acc = acc * (r - int(i as i64)) / int(i as i64 + 1);
    }
    acc
}

/// Exact positive `b`-th root of a positive rational, if it exists.
pub fn exact_root(x: &Rational, b: u32) -> Option<Rational> {
    if !x.is_positive() {
        return if x.is_zero() { Some(Rational::zero()) } else { None };
    }
    let root_of = |v: &BigInt| -> Option<BigInt> {
        let r = v.nth_root(b);
        if num_traits::pow(r.clone(), b as usize) == *v {
            Some(r)
        } else {
            None
        }
    };
    let num = root_of(x.numer())?;
    let den = root_of(x.denom())?;
    Some(Rational::new(num, den))
}

pub fn to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Parses `"3"`, `"-1/12"` or a plain decimal such as `"0.25"` / `"-1.5e-3"`
/// into an exact rational.
pub fn parse_rational(text: &str) -> Result<Rational, ExactError> {
    let t = text.trim();
    let bad = || ExactError::Parse(t.to_string());
    if t.is_empty() {
        return Err(bad());
    }
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(n, d));
    }
    let (mantissa, exp) = match t.find(['e', 'E']) {
        Some(pos) => {
            let e: i32 = t[pos + 1..].parse().map_err(|_| bad())?;
            (&t[..pos], e)
        }
        None => (t, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let all: String = format!("{}{}", int_part, frac_part);
    let mut value = Rational::from_integer(all.parse::<BigInt>().map_err(|_| bad())?);
    let scale = exp - frac_part.len() as i32;
    let ten = Rational::from_integer(BigInt::from(10));
    if scale >= 0 {
        value *= num_traits::pow(ten, scale as usize);
    } else {
        value /= num_traits::pow(ten, (-scale) as usize);
    }
    Ok(if neg { -value } else { value })
}

/// `"-1/12"`, `"3"`.
pub fn format_rational(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Falling factorial `e (e-1) ... (e-k+1)`.
pub fn falling(e: &Rational, k: u32) -> Rational {
    let mut acc = Rational::one();
    for i in 0..k {
        acc *= e - int(i as i64);
    }
    acc
}

/// Ratio `Gamma(a + 1/2) / Gamma(b + 1/2)` for non-negative integers `a, b`.
pub fn half_gamma_ratio(a: u32, b: u32) -> Rational {
    // Gamma(k + 1/2) = (2k)! sqrt(pi) / (4^k k!)
    let g = |k: u32| -> Rational {
        let k = k as u64;
        let num: BigInt = (1..=2 * k).map(BigInt::from).product();
        let den: BigInt = num_traits::pow(BigInt::from(4), k as usize) * (1..=k).map(BigInt::from).product::<BigInt>();
        Rational::new(num, den)
    };
    g(a) / g(b)
}

pub fn factorial(k: u64) -> BigInt {
    (1..=k).map(BigInt::from).product()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!(parse_rational("-1/12").unwrap(), rat(-1, 12));
        assert_eq!(parse_rational("0.25").unwrap(), rat(1, 4));
        assert_eq!(parse_rational("-1.5e-3").unwrap(), rat(-3, 2000));
        assert_eq!(parse_rational("2e2").unwrap(), int(200));
        assert_eq!(parse_rational(".5").unwrap(), rat(1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2), BigInt::from(6));
        assert_eq!(binomial(6, 3), BigInt::from(20));
        assert_eq!(binomial(8, 4), BigInt::from(70));
        assert_eq!(binomial_rational(&rat(1, 4), 1), rat(1, 4));
        assert_eq!(binomial_rational(&rat(1, 2), 2), rat(-1, 8));
    }

    #[test]
    fn roots() {
        assert_eq!(exact_root(&rat(16, 81), 4), Some(rat(2, 3)));
        assert_eq!(exact_root(&int(6), 2), None);
        assert_eq!(exact_root(&int(-8), 3), None);
    }

    #[test]
    fn gamma_ratios() {
        // Gamma(3/2) / Gamma(5/2) = 2/3
        assert_eq!(half_gamma_ratio(1, 2), rat(2, 3));
        assert_eq!(half_gamma_ratio(2, 2), int(1));
        // Gamma(5/2)/Gamma(1/2) = 3/4
        assert_eq!(half_gamma_ratio(2, 0), rat(3, 4));
    }
}
