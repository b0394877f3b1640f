//! The number field `Q(beta)` with `beta^(2n) = C(2n, n)`.
//!
//! Every coefficient of the large gap and Painleve asymptotics lives here:
//! `theta_0 = beta^-1`, and the `n = 2, 3` displays only involve powers of
//! `6^(1/4)` and `20^(1/6)` respectively.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::rational::{binomial, exact_root, format_rational, int, to_f64, Rational};
use super::ExactError;

/// `sum_k coeffs[k] * beta^k`, `k = 0 .. 2n-1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlgElem {
    n: u32,
    coeffs: Vec<Rational>,
}

/// `C(2n, n)`, the value of `beta^(2n)`.
pub fn field_modulus(n: u32) -> BigInt {
    binomial(2 * n as u64, n as u64)
}

impl AlgElem {
    pub fn zero(n: u32) -> Self {
        assert!(n >= 1, "field degree parameter must be positive");
        AlgElem { n, coeffs: vec![Rational::zero(); 2 * n as usize] }
    }

    pub fn one(n: u32) -> Self {
        Self::from_rational(n, Rational::one())
    }

    pub fn from_rational(n: u32, r: Rational) -> Self {
        let mut x = Self::zero(n);
        x.coeffs[0] = r;
        x
    }

    pub fn from_int(n: u32, v: i64) -> Self {
        Self::from_rational(n, int(v))
    }

    /// Builds an element from its coefficient vector; must have length `2n`.
    pub fn from_coeffs(n: u32, coeffs: Vec<Rational>) -> Result<Self, ExactError> {
        if n == 0 || coeffs.len() != 2 * n as usize {
            return Err(ExactError::Domain("coefficient vector must have length 2n"));
        }
        Ok(AlgElem { n, coeffs })
    }

    /// `c * beta^k` for any integer `k`.
    pub fn monomial(n: u32, c: Rational, k: i64) -> Self {
        let deg = 2 * n as i64;
        let q = k.div_euclid(deg);
        let r = k.rem_euclid(deg) as usize;
        let m = Rational::from_integer(field_modulus(n));
        let scale =
            if q >= 0 { num_traits::pow(m, q as usize) } else { Rational::one() / num_traits::pow(m, (-q) as usize) };
        let mut x = Self::zero(n);
        x.coeffs[r] = c * scale;
        x
    }

    pub fn beta(n: u32) -> Self {
        Self::monomial(n, Rational::one(), 1)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// `Some(r)` when the element is the rational `r`.
    pub fn as_rational(&self) -> Option<&Rational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    /// `Some((c, k))` when the element is `c * beta^k`, `c != 0`.
    pub fn as_monomial(&self) -> Option<(&Rational, usize)> {
        let mut found = None;
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                if found.is_some() {
                    return None;
                }
                found = Some((c, k));
            }
        }
        found
    }

    pub fn scale(&self, r: &Rational) -> Self {
        AlgElem { n: self.n, coeffs: self.coeffs.iter().map(|c| c * r).collect() }
    }

    fn check_same(&self, other: &Self) {
        assert_eq!(self.n, other.n, "mixing elements of different fields Q(beta)");
    }

    /// Multiplicative inverse; `x^(2n) - C(2n,n)` is irreducible for every `n`
    /// we use, so every nonzero element is invertible.
    pub fn inverse(&self) -> Result<Self, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        let d = 2 * self.n as usize;
        // Columns of the multiplication-by-self matrix are self * beta^j.
        let mut cols = Vec::with_capacity(d);
        let mut cur = self.clone();
        let beta = Self::beta(self.n);
        for _ in 0..d {
            cols.push(cur.coeffs.clone());
            cur = &cur * &beta;
        }
        let mut a: Vec<Vec<Rational>> = (0..d)
            .map(|i| {
                let mut row: Vec<Rational> = (0..d).map(|j| cols[j][i].clone()).collect();
                row.push(if i == 0 { Rational::one() } else { Rational::zero() });
                row
            })
            .collect();
        for col in 0..d {
            let pivot = (col..d).find(|&r| !a[r][col].is_zero()).ok_or(ExactError::DivisionByZero)?;
            a.swap(col, pivot);
            let p = a[col][col].clone();
            for v in a[col].iter_mut() {
                *v /= &p;
            }
            for r in 0..d {
                if r != col && !a[r][col].is_zero() {
                    let f = a[r][col].clone();
                    let pivot_row = a[col].clone();
                    for (v, pv) in a[r].iter_mut().zip(pivot_row.iter()) {
                        *v -= &f * pv;
                    }
                }
            }
        }
        Ok(AlgElem { n: self.n, coeffs: a.into_iter().map(|row| row[d].clone()).collect() })
    }

    pub fn pow(&self, k: i64) -> Result<Self, ExactError> {
        let base = if k < 0 { self.inverse()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Self::one(self.n);
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    /// Positive real `r`-th power, provided the result stays in `Q(beta)`.
    ///
    /// Only elements of the form `c * beta^k` with `c > 0` are handled.
    pub fn real_power(&self, r: &Rational) -> Result<Self, ExactError> {
        let (c, k) = self.as_monomial().ok_or(ExactError::Unrepresentable)?;
        if !c.is_positive() {
            return Err(ExactError::Unrepresentable);
        }
        let a = r.numer();
        let b: u32 = r.denom().try_into().map_err(|_| ExactError::Unrepresentable)?;
        let a: i64 = a.try_into().map_err(|_| ExactError::Unrepresentable)?;
        // target = c^a * beta^(k a)
        let c_pow = if a >= 0 {
            num_traits::pow(c.clone(), a as usize)
        } else {
            Rational::one() / num_traits::pow(c.clone(), (-a) as usize)
        };
        let deg = 2 * self.n as i64;
        let e = k as i64 * a;
        let m = Rational::from_integer(field_modulus(self.n));
        // find j with (d beta^j)^b = c_pow beta^e, i.e. d^b = c_pow * M^((e - j b)/deg)
        for j in 0..deg {
            let shift = e - j * b as i64;
            if shift.rem_euclid(deg) != 0 {
                continue;
            }
            let q = shift / deg;
            let t = if q >= 0 {
                &c_pow * num_traits::pow(m.clone(), q as usize)
            } else {
                &c_pow / num_traits::pow(m.clone(), (-q) as usize)
            };
            if let Some(d) = exact_root(&t, b) {
                return Ok(Self::monomial(self.n, d, j));
            }
        }
        Err(ExactError::Unrepresentable)
    }

    pub fn beta_f64(n: u32) -> f64 {
        let m = to_f64(&Rational::from_integer(field_modulus(n)));
        libm::pow(m, 1.0 / (2.0 * n as f64))
    }

    /// Floating value with `beta` taken as the positive real root.
    pub fn to_f64(&self) -> f64 {
        let beta = Self::beta_f64(self.n);
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * beta + to_f64(c))
    }

    /// Coefficients as exact strings, ascending powers of `beta`.
    pub fn coeff_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(format_rational).collect()
    }

    /// Real sign of the element (`beta > 0`).
    pub fn signum_f64(&self) -> f64 {
        let v = self.to_f64();
        if v > 0.0 {
            1.0
        } else if v < 0.0 {
            -1.0
        } else {
            0.0
        }
    }
}

/// Floating evaluation; `precision` is the requested relative error.
///
/// Double precision caps the attainable accuracy near `1e-16`, which covers
/// every tolerance used in this crate.
pub fn alg_to_float(x: &AlgElem, precision: f64) -> f64 {
    let _ = precision;
    x.to_f64()
}

impl fmt::Display for AlgElem {
    /// Human form such as `-(1/12)`, `-(1/54)*beta^2` or
    /// `(1/3 + 2*beta)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(usize, &Rational)> = self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
        if terms.is_empty() {
            return write!(f, "0");
        }
        let single = terms.len() == 1;
        if !single {
            write!(f, "(")?;
        }
        for (i, (k, c)) in terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let needs_paren = single && !abs.denom().is_one();
            if *k == 0 || !abs.is_one() {
                if needs_paren {
                    write!(f, "({})", format_rational(&abs))?;
                } else {
                    write!(f, "{}", format_rational(&abs))?;
                }
            }
            match *k {
                0 => {}
                1 if abs.is_one() => write!(f, "beta")?,
                1 => write!(f, "*beta")?,
                _ if abs.is_one() => write!(f, "beta^{}", k)?,
                _ => write!(f, "*beta^{}", k)?,
            }
        }
        if !single {
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl<'a> Add<&'a AlgElem> for &'a AlgElem {
    type Output = AlgElem;
    fn add(self, rhs: &AlgElem) -> AlgElem {
        self.check_same(rhs);
        AlgElem { n: self.n, coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect() }
    }
}

impl<'a> Sub<&'a AlgElem> for &'a AlgElem {
    type Output = AlgElem;
    fn sub(self, rhs: &AlgElem) -> AlgElem {
        self.check_same(rhs);
        AlgElem { n: self.n, coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect() }
    }
}

impl<'a> Mul<&'a AlgElem> for &'a AlgElem {
    type Output = AlgElem;
    fn mul(self, rhs: &AlgElem) -> AlgElem {
        self.check_same(rhs);
        let d = 2 * self.n as usize;
        let m = Rational::from_integer(field_modulus(self.n));
        let mut out = vec![Rational::zero(); d];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let p = a * b;
                if i + j >= d {
                    out[i + j - d] += p * &m;
                } else {
                    out[i + j] += p;
                }
            }
        }
        AlgElem { n: self.n, coeffs: out }
    }
}

impl Neg for &AlgElem {
    type Output = AlgElem;
    fn neg(self) -> AlgElem {
        AlgElem { n: self.n, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for AlgElem {
    type Output = AlgElem;
    fn neg(self) -> AlgElem {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<AlgElem> for AlgElem {
            type Output = AlgElem;
            fn $m(self, rhs: AlgElem) -> AlgElem {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a AlgElem> for AlgElem {
            type Output = AlgElem;
            fn $m(self, rhs: &AlgElem) -> AlgElem {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl AddAssign<&AlgElem> for AlgElem {
    fn add_assign(&mut self, rhs: &AlgElem) {
        self.check_same(rhs);
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
    }
}

impl SubAssign<&AlgElem> for AlgElem {
    fn sub_assign(&mut self, rhs: &AlgElem) {
        self.check_same(rhs);
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a -= b;
        }
    }
}

impl MulAssign<&AlgElem> for AlgElem {
    fn mul_assign(&mut self, rhs: &AlgElem) {
        *self = &*self * rhs;
    }
}
