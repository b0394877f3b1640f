//! Members of the Painleve II hierarchy and their text/LaTeX rendering.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use super::diffpoly::{DiffMonomial, DiffPoly};
use super::lenard::{lenard_all, substitute, DEFAULT_MAX_LENARD};
use super::HierarchyError;
use crate::exactalg::rational::{format_rational, int, Rational};

/// `E(q) = 0` for the `n`-th member.
///
/// `lhs_minus_rhs` is the fully expanded `E`, including `alpha` when it is
/// numeric. A symbolic `alpha` is kept out of the polynomial and only shows
/// up in the rendering.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HierarchyEq {
    pub n: usize,
    pub taus: Vec<Rational>,
    pub alpha: Option<Rational>,
    pub lhs_minus_rhs: DiffPoly,
    /// `(D + 2q) L_n[q' - q^2]`.
    pub principal: DiffPoly,
    /// `(l, (D + 2q) L_l[q' - q^2])` for `l = 1 .. n-1`.
    pub tau_parts: Vec<(usize, DiffPoly)>,
}

fn q(k: u32) -> DiffPoly {
    DiffPoly::derivative_of_var('q', k)
}

/// Builds `(D + 2q) L_n[q' - q^2] + sum tau_l (D + 2q) L_l[q' - q^2] - s q + alpha`.
pub fn build_hierarchy_eq(n: usize, taus: &[Rational], alpha: Option<Rational>) -> Result<HierarchyEq, HierarchyError> {
    if n == 0 {
        return Err(HierarchyError::Domain("hierarchy index must be at least 1"));
    }
    if taus.len() != n - 1 {
        return Err(HierarchyError::Domain("expected n - 1 deformation parameters"));
    }
    if n > DEFAULT_MAX_LENARD {
        return Err(HierarchyError::LenardOutOfRange { j: n, max: DEFAULT_MAX_LENARD });
    }
    let ls = lenard_all(n)?;
    let arg = &q(1) - &q(0).pow(2);
    let apply = |l: &DiffPoly| {
        let inner = substitute(l, &arg);
        &inner.total_derivative() + &(&q(0) * &inner).scale(&int(2))
    };
    let principal = apply(&ls[n]);
    let tau_parts: Vec<(usize, DiffPoly)> = (1..n).rev().map(|l| (l, apply(&ls[l]))).collect();
    let mut e = principal.clone();
    for (l, part) in &tau_parts {
        e = &e + &part.scale(&taus[l - 1]);
    }
    e = &e - &(&DiffPoly::s('q') * &q(0));
    if let Some(a) = &alpha {
        e = &e + &DiffPoly::constant('q', a.clone());
    }
    Ok(HierarchyEq { n, taus: taus.to_vec(), alpha, lhs_minus_rhs: e, principal, tau_parts })
}

impl HierarchyEq {
    /// Highest derivative order in `E`.
    pub fn order(&self) -> u32 {
        self.lhs_minus_rhs.order().unwrap_or(0)
    }

    /// Plain text such as
    /// `q'''' - 10*q*q'^2 - 10*q^2*q'' + 6*q^5 + 1*(q'' - 2*q^3) - s*q + alpha = 0`.
    ///
    /// With `symbolic_taus` the parameters print as `tau1`, `tau2`, ...
    pub fn render_text(&self, symbolic_taus: bool) -> String {
        self.render(&TEXT, symbolic_taus)
    }

    pub fn render_latex(&self, symbolic_taus: bool) -> String {
        self.render(&LATEX, symbolic_taus)
    }

    fn render(&self, style: &Style, symbolic_taus: bool) -> String {
        let mut out = render_poly(&self.principal, style);
        for (l, part) in &self.tau_parts {
            let body = render_poly(part, style);
            if symbolic_taus {
                out.push_str(&format!(" + {}({})", (style.tau)(*l), body));
                continue;
            }
            let t = &self.taus[l - 1];
            let sign = if t.is_negative() { "-" } else { "+" };
            out.push_str(&format!(" {} {}{}({})", sign, style_rational(&t.abs(), style), style.times, body));
        }
        out.push_str(&format!(" - s{}q", style.times));
        match &self.alpha {
            None => out.push_str(&format!(" + {}", style.alpha)),
            Some(a) if a.is_zero() => {}
            Some(a) => {
                let sign = if a.is_negative() { "-" } else { "+" };
                out.push_str(&format!(" {} {}", sign, style_rational(&a.abs(), style)));
            }
        }
        out.push_str(" = 0");
        out
    }
}

struct Style {
    times: &'static str,
    alpha: &'static str,
    tau: fn(usize) -> String,
    factor: fn(u32, u32) -> String,
    frac: fn(&Rational) -> String,
}

const TEXT: Style = Style {
    times: "*",
    alpha: "alpha",
    tau: |l| format!("tau{}*", l),
    factor: |k, e| {
        let base = if k <= 4 { format!("q{}", "'".repeat(k as usize)) } else { format!("q^({})", k) };
        match (e, k > 4) {
            (1, _) => base,
            (_, false) => format!("{}^{}", base, e),
            (_, true) => format!("({})^{}", base, e),
        }
    },
    frac: |r| format!("({})", format_rational(r)),
};

const LATEX: Style = Style {
    times: " ",
    alpha: "\\alpha",
    tau: |l| format!("\\tau_{{{}}}", l),
    factor: |k, e| {
        let base = match k {
            0 => String::from("q"),
            1..=3 => format!("q{}", "'".repeat(k as usize)),
            _ => format!("q^{{({})}}", k),
        };
        match (e, k) {
            (1, _) => base,
            (_, 0) => format!("q^{{{}}}", e),
            _ => format!("({})^{{{}}}", base, e),
        }
    },
    frac: |r| format!("\\frac{{{}}}{{{}}}", r.numer(), r.denom()),
};

fn style_rational(r: &Rational, style: &Style) -> String {
    if r.denom().is_one() {
        format_rational(r)
    } else {
        (style.frac)(r)
    }
}

/// Degree ascending, then exponent vector `(e_0, e_1, ...)` ascending.
fn render_order(m: &DiffMonomial) -> (u32, Vec<u32>, u32) {
    let top = m.max_order().unwrap_or(0);
    (m.degree(), (0..=top).map(|k| m.exponent_of(k)).collect(), m.s_power)
}

fn render_poly(p: &DiffPoly, style: &Style) -> String {
    let mut monos = p.monomials();
    if monos.is_empty() {
        return String::from("0");
    }
    monos.sort_by_key(render_order);
    let mut out = String::new();
    for (i, m) in monos.iter().enumerate() {
        let neg = m.coeff.is_negative();
        let abs = m.coeff.abs();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mut parts: Vec<String> = Vec::new();
        if !abs.is_one() || (m.factors.is_empty() && m.s_power == 0) {
            parts.push(style_rational(&abs, style));
        }
        match m.s_power {
            0 => {}
            1 => parts.push(String::from("s")),
            a => parts.push(format!("s^{}", a)),
        }
        for (k, e) in &m.factors {
            parts.push((style.factor)(*k, *e));
        }
        out.push_str(&parts.join(style.times));
    }
    out
}
