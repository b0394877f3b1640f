//! Differential polynomials in one dependent variable with coefficients in
//! `Q[s]`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::exactalg::rational::{int, Rational};

/// `(s_power, [(derivative order, exponent)])`, factors sorted by order.
type Key = (u32, Vec<(u32, u32)>);

/// One term `coeff * s^s_power * prod (v^(k))^e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffMonomial {
    pub s_power: u32,
    pub factors: Vec<(u32, u32)>,
    pub coeff: Rational,
}

impl DiffMonomial {
    /// Total degree in the dependent variable and its derivatives.
    pub fn degree(&self) -> u32 {
        self.factors.iter().map(|(_, e)| e).sum()
    }

    /// Exponent of `v^(k)`.
    pub fn exponent_of(&self, k: u32) -> u32 {
        self.factors.iter().find(|(o, _)| *o == k).map_or(0, |(_, e)| *e)
    }

    pub fn max_order(&self) -> Option<u32> {
        self.factors.last().map(|(k, _)| *k)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffPoly {
    var: char,
    terms: BTreeMap<Key, Rational>,
}

fn mul_factors(a: &[(u32, u32)], b: &[(u32, u32)]) -> Vec<(u32, u32)> {
    let mut map: BTreeMap<u32, u32> = a.iter().copied().collect();
    for (k, e) in b {
        *map.entry(*k).or_insert(0) += e;
    }
    map.into_iter().collect()
}

impl DiffPoly {
    pub fn zero(var: char) -> Self {
        DiffPoly { var, terms: BTreeMap::new() }
    }

    pub fn constant(var: char, c: Rational) -> Self {
        let mut p = Self::zero(var);
        p.add_term(0, Vec::new(), c);
        p
    }

    /// The `k`-th derivative of the dependent variable.
    pub fn derivative_of_var(var: char, k: u32) -> Self {
        let mut p = Self::zero(var);
        p.add_term(0, alloc::vec![(k, 1)], Rational::one());
        p
    }

    /// The independent variable `s`.
    pub fn s(var: char) -> Self {
        let mut p = Self::zero(var);
        p.add_term(1, Vec::new(), Rational::one());
        p
    }

    pub fn from_monomials(var: char, monomials: impl IntoIterator<Item = DiffMonomial>) -> Self {
        let mut p = Self::zero(var);
        for m in monomials {
            let mut f: BTreeMap<u32, u32> = BTreeMap::new();
            for (k, e) in m.factors {
                if e > 0 {
                    *f.entry(k).or_insert(0) += e;
                }
            }
            p.add_term(m.s_power, f.into_iter().collect(), m.coeff);
        }
        p
    }

    fn add_term(&mut self, s_power: u32, factors: Vec<(u32, u32)>, c: Rational) {
        if c.is_zero() {
            return;
        }
        let key = (s_power, factors);
        let entry = self.terms.entry(key.clone()).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn var(&self) -> char {
        self.var
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Canonically sorted monomials.
    pub fn monomials(&self) -> Vec<DiffMonomial> {
        self.terms
            .iter()
            .map(|((s, f), c)| DiffMonomial { s_power: *s, factors: f.clone(), coeff: c.clone() })
            .collect()
    }

    /// Highest derivative order present; `None` if no dependent variable.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().filter_map(|(_, f)| f.last().map(|(k, _)| *k)).max()
    }

    /// Coefficient of the monomial `s^s_power * prod factors`.
    pub fn coeff(&self, s_power: u32, factors: &[(u32, u32)]) -> Rational {
        self.terms.get(&(s_power, factors.to_vec())).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.var);
        for ((s, f), v) in &self.terms {
            out.add_term(*s, f.clone(), v * c);
        }
        out
    }

    /// Same polynomial in a renamed dependent variable.
    pub fn with_var(&self, var: char) -> Self {
        DiffPoly { var, terms: self.terms.clone() }
    }

    /// `d/ds` by the Leibniz rule.
    pub fn total_derivative(&self) -> Self {
        let mut out = Self::zero(self.var);
        for ((s, f), c) in &self.terms {
            if *s > 0 {
                out.add_term(s - 1, f.clone(), c * int(*s as i64));
            }
            for (idx, (k, e)) in f.iter().enumerate() {
                let mut g = f.clone();
                if *e == 1 {
                    g.remove(idx);
                } else {
                    g[idx].1 -= 1;
                }
                let g = mul_factors(&g, &[(k + 1, 1)]);
                out.add_term(*s, g, c * int(*e as i64));
            }
        }
        out
    }

    /// `k`-fold total derivative.
    pub fn nth_derivative(&self, k: u32) -> Self {
        (0..k).fold(self.clone(), |p, _| p.total_derivative())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(self.var, Rational::one());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Evaluates at a point, given `s` and the values of `v^(k)`.
    pub fn eval(&self, s: f64, derivs: &[f64]) -> f64 {
        let mut total = 0.0;
        for ((sp, f), c) in &self.terms {
            let mut t = crate::exactalg::rational::to_f64(c) * libm::pow(s, *sp as f64);
            for (k, e) in f {
                t *= libm::pow(derivs[*k as usize], *e as f64);
            }
            total += t;
        }
        total
    }
}

impl Add for &DiffPoly {
    type Output = DiffPoly;
    fn add(self, rhs: &DiffPoly) -> DiffPoly {
        let mut out = self.clone();
        for ((s, f), c) in &rhs.terms {
            out.add_term(*s, f.clone(), c.clone());
        }
        out
    }
}

impl Sub for &DiffPoly {
    type Output = DiffPoly;
    fn sub(self, rhs: &DiffPoly) -> DiffPoly {
        let mut out = self.clone();
        for ((s, f), c) in &rhs.terms {
            out.add_term(*s, f.clone(), -c);
        }
        out
    }
}

impl Mul for &DiffPoly {
    type Output = DiffPoly;
    fn mul(self, rhs: &DiffPoly) -> DiffPoly {
        let mut out = DiffPoly::zero(self.var);
        for ((sa, fa), ca) in &self.terms {
            for ((sb, fb), cb) in &rhs.terms {
                out.add_term(sa + sb, mul_factors(fa, fb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &DiffPoly {
    type Output = DiffPoly;
    fn neg(self) -> DiffPoly {
        self.scale(&int(-1))
    }
}
