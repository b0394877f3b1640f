//! Formal integration and the Lenard recursion.

use alloc::vec::Vec;

use super::diffpoly::{DiffMonomial, DiffPoly};
use super::HierarchyError;
use crate::exactalg::rational::{int, rat};

/// Largest Lenard index computed unless the caller raises the bound.
pub const DEFAULT_MAX_LENARD: usize = 6;

const MAX_INTEGRATION_STEPS: usize = 100_000;

/// Antiderivative with zero constant term.
///
/// The monomial of highest derivative order `k` in a total derivative is
/// linear in `v^(k)`; writing it as `c s^a v^(k) (v^(k-1))^f R` with `R` of
/// order at most `k-2`, the candidate `c s^a (v^(k-1))^(f+1) R / (f+1)`
/// removes it and only leaves terms of lower order.
pub fn integrate_diffpoly(p: &DiffPoly) -> Result<DiffPoly, HierarchyError> {
    let var = p.var();
    let mut rest = p.clone();
    let mut acc = DiffPoly::zero(var);
    for _ in 0..MAX_INTEGRATION_STEPS {
        if rest.is_zero() {
            return Ok(acc);
        }
        let monos = rest.monomials();
        let top = match rest.order() {
            None => {
                // pure polynomial in s
                let mut anti = DiffPoly::zero(var);
                for m in monos {
                    let a = m.s_power + 1;
                    anti = &anti
                        + &DiffPoly::from_monomials(
                            var,
                            [DiffMonomial { s_power: a, factors: Vec::new(), coeff: m.coeff / int(a as i64) }],
                        );
                }
                return Ok(&acc + &anti);
            }
            Some(k) => k,
        };
        if top == 0 {
            return Err(HierarchyError::NotTotalDerivative);
        }
        let m =
            monos.into_iter().find(|m| m.max_order() == Some(top)).expect("order() reported a monomial of this order");
        if m.exponent_of(top) != 1 {
            return Err(HierarchyError::NotTotalDerivative);
        }
        let f = m.exponent_of(top - 1);
        let mut factors: Vec<(u32, u32)> =
            m.factors.iter().copied().filter(|(k, _)| *k != top && *k != top - 1).collect();
        factors.push((top - 1, f + 1));
        let cand = DiffPoly::from_monomials(
            var,
            [DiffMonomial { s_power: m.s_power, factors, coeff: m.coeff * rat(1, f as i64 + 1) }],
        );
        rest = &rest - &cand.total_derivative();
        acc = &acc + &cand;
    }
    Err(HierarchyError::NotTotalDerivative)
}

/// `L_j f` for `j <= DEFAULT_MAX_LENARD`.
pub fn lenard(j: usize) -> Result<DiffPoly, HierarchyError> {
    lenard_with_max(j, DEFAULT_MAX_LENARD)
}

/// `L_j f` with an explicit bound on `j`.
///
/// `L_0 = 1/2` and `d/ds L_(j+1) = (D^3 + 4 f D + 2 f') L_j`, every
/// integration constant set to zero.
pub fn lenard_with_max(j: usize, max: usize) -> Result<DiffPoly, HierarchyError> {
    if j > max {
        return Err(HierarchyError::LenardOutOfRange { j, max });
    }
    Ok(lenard_all(j)?.pop().expect("nonempty"))
}

/// `[L_0, ..., L_j]`.
pub fn lenard_all(j: usize) -> Result<Vec<DiffPoly>, HierarchyError> {
    let f = |k| DiffPoly::derivative_of_var('f', k);
    let mut out = Vec::with_capacity(j + 1);
    out.push(DiffPoly::constant('f', rat(1, 2)));
    for _ in 0..j {
        let l = out.last().expect("seeded");
        let rhs =
            &(&l.nth_derivative(3) + &(&f(0) * &l.total_derivative()).scale(&int(4))) + &(&f(1) * l).scale(&int(2));
        let next = integrate_diffpoly(&rhs)
            .map_err(|_| HierarchyError::Internal("Lenard density is not a total derivative"))?;
        debug_assert!((&next.total_derivative() - &rhs).is_zero());
        out.push(next);
    }
    Ok(out)
}

/// Replaces every `f^(k)` by the `k`-th total derivative of `expr`.
pub fn substitute(p: &DiffPoly, expr: &DiffPoly) -> DiffPoly {
    let var = expr.var();
    let order = p.order().unwrap_or(0);
    let mut derivs = Vec::with_capacity(order as usize + 1);
    derivs.push(expr.clone());
    for k in 1..=order as usize {
        let next = derivs[k - 1].total_derivative();
        derivs.push(next);
    }
    let mut out = DiffPoly::zero(var);
    for m in p.monomials() {
        let mut term = DiffPoly::from_monomials(
            var,
            [DiffMonomial { s_power: m.s_power, factors: Vec::new(), coeff: m.coeff.clone() }],
        );
        for (k, e) in &m.factors {
            term = &term * &derivs[*k as usize].pow(*e);
        }
        out = &out + &term;
    }
    out
}
