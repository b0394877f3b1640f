//! Finite asymptotic expansions in powers of `|s|` with exact coefficients.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::exactalg::rational::{format_rational, to_f64, Rational};
use crate::exactalg::AlgElem;

/// A constant the theory leaves undetermined; only ever filled by a fit.
#[derive(Clone, Debug, PartialEq)]
pub struct FittedConstant {
    pub label: &'static str,
    /// The constant multiplies `|s|^exponent`.
    pub exponent: Rational,
    pub value: Option<f64>,
}

/// `sum c_i |s|^(e_i) + log_coeff * log|s| + fitted`.
#[derive(Clone, Debug, PartialEq)]
pub struct AsymSeries {
    variable: String,
    n: u32,
    terms: Vec<(Rational, AlgElem)>,
    pub log_coeff: Option<Rational>,
    pub fitted: Option<FittedConstant>,
}

impl AsymSeries {
    pub fn new(variable: &str, n: u32) -> Self {
        AsymSeries { variable: variable.into(), n, terms: Vec::new(), log_coeff: None, fitted: None }
    }

    pub fn from_terms(variable: &str, n: u32, terms: Vec<(Rational, AlgElem)>) -> Self {
        let mut s = Self::new(variable, n);
        for (e, c) in terms {
            s.add_term(e, c);
        }
        s
    }

    /// Adds `c |s|^e`, merging equal exponents and dropping zeros.
    pub fn add_term(&mut self, e: Rational, c: AlgElem) {
        match self.terms.binary_search_by(|(x, _)| e.cmp(x)) {
            Ok(i) => {
                self.terms[i].1 += &c;
                if self.terms[i].1.is_zero() {
                    self.terms.remove(i);
                }
            }
            Err(i) => {
                if !c.is_zero() {
                    self.terms.insert(i, (e, c));
                }
            }
        }
    }

    pub fn variable(&self) -> &str {
        &self.variable
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Terms with strictly decreasing exponents.
    pub fn terms(&self) -> impl Iterator<Item = (&Rational, &AlgElem)> {
        self.terms.iter().map(|(e, c)| (e, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `|s|^e` (zero when absent).
    pub fn coeff(&self, e: &Rational) -> AlgElem {
        self.terms.iter().find(|(x, _)| x == e).map(|(_, c)| c.clone()).unwrap_or_else(|| AlgElem::zero(self.n))
    }

    /// Value of the power and log terms at `|s| = t`, fitted constant excluded.
    pub fn eval_without_constant(&self, t: f64) -> f64 {
        let powers: f64 = self.terms.iter().map(|(e, c)| c.to_f64() * libm::pow(t, to_f64(e))).sum();
        let log = self.log_coeff.as_ref().map_or(0.0, |c| to_f64(c) * libm::log(t));
        powers + log
    }

    /// Full value; a fitted constant without a value counts as zero.
    pub fn eval(&self, t: f64) -> f64 {
        let c =
            self.fitted.as_ref().and_then(|f| f.value.map(|v| v * libm::pow(t, to_f64(&f.exponent)))).unwrap_or(0.0);
        self.eval_without_constant(t) + c
    }
}

fn power(var: &str, e: &Rational) -> String {
    if e.is_zero() {
        String::new()
    } else if e.is_one() {
        String::from(var)
    } else if e.denom().is_one() && !e.numer().sign().eq(&num_bigint::Sign::Minus) {
        format!("{}^{}", var, e.numer())
    } else {
        format!("{}^({})", var, format_rational(e))
    }
}

fn push_signed(out: &mut String, first: bool, body: &str) {
    match (first, body.strip_prefix('-')) {
        (true, _) => out.push_str(body),
        (false, Some(rest)) => {
            out.push_str(" - ");
            out.push_str(rest);
        }
        (false, None) => {
            out.push_str(" + ");
            out.push_str(body);
        }
    }
}

impl fmt::Display for AsymSeries {
    /// `-(1/12)*|s|^3 - (1/8)*log|s| + logC[fitted]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        let mut first = true;
        for (e, c) in &self.terms {
            let p = power(&self.variable, e);
            let body = if p.is_empty() { format!("{}", c) } else { format!("{}*{}", c, p) };
            push_signed(&mut out, first, &body);
            first = false;
        }
        if let Some(c) = &self.log_coeff {
            let body = format!("{}*log{}", AlgElem::from_rational(self.n, c.clone()), self.variable);
            push_signed(&mut out, first, &body);
            first = false;
        }
        if let Some(fc) = &self.fitted {
            let p = power(&self.variable, &fc.exponent);
            let body =
                if p.is_empty() { format!("{}[fitted]", fc.label) } else { format!("{}[fitted]*{}", fc.label, p) };
            push_signed(&mut out, first, &body);
            first = false;
        }
        if first {
            out.push('0');
        }
        f.write_str(&out)
    }
}
