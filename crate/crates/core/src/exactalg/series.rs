//! Polynomials over `Q(beta)`, truncated Laurent/Puiseux series at infinity
//! and the fractional power expansion used for all residue computations.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use super::field::AlgElem;
use super::rational::{binomial_rational, int, Rational};
use super::ExactError;

/// Largest number of series terms a single expansion may request.
pub const MAX_SERIES_TERMS: i64 = 512;

/// Polynomial in `z` with coefficients in `Q(beta)`, ascending powers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgPoly {
    n: u32,
    coeffs: Vec<AlgElem>,
}

impl AlgPoly {
    pub fn new(n: u32, mut coeffs: Vec<AlgElem>) -> Self {
        while coeffs.last().is_some_and(AlgElem::is_zero) {
            coeffs.pop();
        }
        AlgPoly { n, coeffs }
    }

    pub fn from_rationals(n: u32, coeffs: &[Rational]) -> Self {
        Self::new(n, coeffs.iter().map(|c| AlgElem::from_rational(n, c.clone())).collect())
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[AlgElem] {
        &self.coeffs
    }
}

/// Truncated expansion at `z = infinity` in the ramified variable
/// `w = z^(1/ramification)`.
///
/// Exponents are stored as integers `e`, meaning `z^(e / ramification)`.
/// Every exponent `>= order` is resolved; terms below `order` are unknown.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentSeries {
    variable: String,
    n: u32,
    ramification: u32,
    order: i64,
    terms: BTreeMap<i64, AlgElem>,
}

impl LaurentSeries {
    pub fn new(variable: &str, n: u32, ramification: u32, order: i64) -> Self {
        LaurentSeries { variable: variable.into(), n, ramification: ramification.max(1), order, terms: BTreeMap::new() }
    }

    pub fn variable(&self) -> &str {
        &self.variable
    }

    pub fn ramification(&self) -> u32 {
        self.ramification
    }

    /// Truncation order in units of `1/ramification`.
    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &AlgElem)> {
        self.terms.iter().rev().map(|(e, c)| (*e, c))
    }

    /// Coefficient of `z^exponent`; zero when absent but resolved.
    pub fn coeff(&self, exponent: &Rational) -> Result<AlgElem, ExactError> {
        let scaled = exponent * int(self.ramification as i64);
        if !scaled.is_integer() {
            return Err(ExactError::Domain("exponent is not on the series grid"));
        }
        let e: i64 = scaled.to_integer().try_into().map_err(|_| ExactError::Domain("exponent out of range"))?;
        if e < self.order {
            return Err(ExactError::InsufficientOrder);
        }
        Ok(self.terms.get(&e).cloned().unwrap_or_else(|| AlgElem::zero(self.n)))
    }

    pub fn insert(&mut self, exponent: i64, c: AlgElem) {
        if exponent < self.order {
            return;
        }
        let entry = self.terms.entry(exponent).or_insert_with(|| AlgElem::zero(c.n()));
        *entry += &c;
        if entry.is_zero() {
            self.terms.remove(&exponent);
        }
    }

    /// Highest exponent present (ramified units).
    pub fn leading_exponent(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Product, resolved down to the lowest exponent both truncations allow.
    pub fn mul(&self, other: &Self) -> Result<Self, ExactError> {
        if self.ramification != other.ramification || self.n != other.n {
            return Err(ExactError::Domain("series live on different grids"));
        }
        let lead_a = self.leading_exponent().unwrap_or(self.order);
        let lead_b = other.leading_exponent().unwrap_or(other.order);
        // unknown terms of either factor reach up to its order plus the other's lead
        let order = (lead_a + other.order).max(lead_b + self.order);
        let mut out = LaurentSeries::new(&self.variable, self.n, self.ramification, order);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                if ea + eb >= order {
                    out.insert(ea + eb, ca * cb);
                }
            }
        }
        Ok(out)
    }
}

/// Large-`z` expansion of `p(z)^r` on the branch positive for large real
/// `z`, resolved for every exponent `>= order` (in units of `z`).
pub fn frac_power_expand(p: &AlgPoly, r: &Rational, order: i64) -> Result<LaurentSeries, ExactError> {
    let n = p.n();
    let deg = p.degree().ok_or(ExactError::Domain("cannot expand a power of the zero polynomial"))?;
    let lead = &p.coeffs()[deg];
    let lead_pow = lead.real_power(r)?;
    let b = u32::try_from(r.denom()).map_err(|_| ExactError::Unrepresentable)?;
    let a = i64::try_from(r.numer()).map_err(|_| ExactError::Unrepresentable)?;
    let b64 = b as i64;
    let lead_exp = deg as i64 * a; // in units of 1/b
    let cutoff = order * b64;
    if lead_exp < cutoff {
        return Ok(LaurentSeries::new("z", n, b, cutoff));
    }
    // p^r = lead^r z^(deg r) (1 + u)^r with u = sum_k (p_{deg-k}/lead) z^-k
    let depth = (lead_exp - cutoff) / b64;
    if depth > MAX_SERIES_TERMS {
        return Err(ExactError::Domain("requested truncation order is too negative"));
    }
    let inv_lead = lead.inverse()?;
    let u: Vec<(i64, AlgElem)> =
        (1..=deg).map(|k| (k as i64, &p.coeffs()[deg - k] * &inv_lead)).filter(|(_, c)| !c.is_zero()).collect();

    // powers of u as dense vectors indexed by -exponent, truncated at depth
    let len = depth as usize + 1;
    let mut acc: Vec<AlgElem> = (0..len).map(|_| AlgElem::zero(n)).collect();
    acc[0] = AlgElem::one(n);
    let mut u_pow: Vec<AlgElem> = acc.clone();
    for j in 1..len {
        let mut next: Vec<AlgElem> = (0..len).map(|_| AlgElem::zero(n)).collect();
        let mut any = false;
        for (i, c) in u_pow.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (k, uk) in &u {
                let idx = i + *k as usize;
                if idx < len {
                    next[idx] += &(c * uk);
                    any = true;
                }
            }
        }
        if !any {
            break;
        }
        let bin = binomial_rational(r, j as u64);
        for (slot, c) in acc.iter_mut().zip(&next) {
            if !c.is_zero() {
                *slot += &c.scale(&bin);
            }
        }
        u_pow = next;
    }

    let mut out = LaurentSeries::new("z", n, b, cutoff);
    for (m, c) in acc.into_iter().enumerate() {
        if !c.is_zero() {
            out.insert(lead_exp - m as i64 * b64, &lead_pow * &c);
        }
    }
    Ok(out)
}

/// Residue at infinity: minus the coefficient of `z^-1`.
pub fn residue_at_infinity(series: &LaurentSeries) -> Result<AlgElem, ExactError> {
    let c = series.coeff(&int(-1))?;
    Ok(-c)
}

/// Convenience: `p(z)^r` residue with the order chosen automatically.
pub fn residue_of_power(p: &AlgPoly, r: &Rational) -> Result<AlgElem, ExactError> {
    let s = frac_power_expand(p, r, -1)?;
    residue_at_infinity(&s)
}
