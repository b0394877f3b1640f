//! Numeric and exact residuals of a hierarchy member.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::Zero;

use super::equation::HierarchyEq;
use super::HierarchyError;
use crate::asympt::AsymSeries;
use crate::exactalg::rational::{falling, int, to_f64, Rational};
use crate::exactalg::AlgElem;
use crate::quad::{fd_stencil, fd_weights};

/// `E(q)(s_i)` on the interior of a uniform grid `s_i = s0 + i h`.
///
/// Derivatives use centred stencils of accuracy `acc_order`; the returned
/// pairs are `(s_i, residual)` for every index where all stencils fit.
pub fn eval_residual(
    eq: &HierarchyEq,
    s0: f64,
    h: f64,
    samples: &[f64],
    acc_order: usize,
) -> Result<Vec<(f64, f64)>, HierarchyError> {
    if eq.alpha.is_none() {
        return Err(HierarchyError::Domain("alpha must be numeric for evaluation"));
    }
    if !(h > 0.0) || acc_order == 0 || acc_order % 2 == 1 {
        return Err(HierarchyError::Domain("need h > 0 and an even accuracy order"));
    }
    let dmax = eq.order() as usize;
    let widths: Vec<usize> = (0..=dmax).map(|d| if d == 0 { 1 } else { 2 * d.div_ceil(2) - 1 + acc_order }).collect();
    let half = widths.iter().max().copied().unwrap_or(1) / 2;
    let len = samples.len();
    if len < 2 * half + 1 {
        return Err(HierarchyError::Domain("grid too small for the finite difference stencil"));
    }
    let stencils: Vec<(Vec<i64>, Vec<f64>)> = (0..=dmax)
        .map(|d| {
            if d == 0 {
                return (alloc::vec![0], alloc::vec![1.0]);
            }
            let offsets = fd_stencil(d, acc_order, half, len).expect("length checked");
            let w = fd_weights(&offsets, d).iter().map(to_f64).collect();
            (offsets, w)
        })
        .collect();
    let mut out = Vec::with_capacity(len - 2 * half);
    let mut derivs = alloc::vec![0.0; dmax + 1];
    for i in half..len - half {
        for (d, (offsets, w)) in stencils.iter().enumerate() {
            let sum: f64 = offsets.iter().zip(w).map(|(o, wj)| wj * samples[(i as i64 + o) as usize]).sum();
            derivs[d] = sum / libm::pow(h, d as f64);
        }
        let s = s0 + i as f64 * h;
        out.push((s, eq.lhs_minus_rhs.eval(s, &derivs)));
    }
    Ok(out)
}

type Grid = BTreeMap<i64, AlgElem>;

fn truncated_mul(a: &Grid, b: &Grid, floor: i64) -> Grid {
    let mut out = Grid::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e = ea + eb;
            if e < floor {
                continue;
            }
            let slot = out.entry(e).or_insert_with(|| AlgElem::zero(ca.n()));
            *slot += &(ca * cb);
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Coefficients of the top `check_depth` powers of `|s|` after substituting
/// a series for `q((-1)^(n+1) s)` as `s -> -infinity`.
///
/// With `t = |s|` and `y = (-1)^(n+1) s = (-1)^n t`, the derivative becomes
/// `d/dy = (-1)^n d/dt` and the explicit variable becomes `(-1)^n t`.
/// Powers are stepped by `1/(2n)` from the largest exponent any monomial can
/// produce before cancellation. Returns `(exponent, coefficient)` pairs.
pub fn series_residual(
    eq: &HierarchyEq,
    series: &AsymSeries,
    check_depth: usize,
) -> Result<Vec<(Rational, AlgElem)>, HierarchyError> {
    let n = eq.n as i64;
    let field = series.n();
    let alpha = eq.alpha.clone().ok_or(HierarchyError::Domain("alpha must be numeric"))?;
    let unit = int(2 * n);
    let mut q: Grid = Grid::new();
    for (e, c) in series.terms() {
        let g = e * &unit;
        if !g.is_integer() {
            return Err(HierarchyError::Domain("series exponent is off the 1/(2n) grid"));
        }
        let g: i64 = g.to_integer().try_into().map_err(|_| HierarchyError::Domain("exponent out of range"))?;
        q.insert(g, c.clone());
    }
    let sign = |p: i64| if (n * p).rem_euclid(2) == 0 { int(1) } else { int(-1) };
    let dmax = eq.order() as i64;
    let derivs: Vec<Grid> = (0..=dmax)
        .map(|k| {
            let mut d = Grid::new();
            for (g, c) in &q {
                let gamma = Rational::new((*g).into(), (2 * n).into());
                let f = falling(&gamma, k as u32) * sign(k);
                if !f.is_zero() {
                    d.insert(g - 2 * n * k, c.scale(&f));
                }
            }
            d
        })
        .collect();
    let lead = |k: u32| derivs[k as usize].keys().next_back().copied();

    let monos = eq.lhs_minus_rhs.monomials();
    let mut top: Option<i64> = None;
    for m in &monos {
        let mut e = 2 * n * m.s_power as i64;
        let mut alive = true;
        for (k, p) in &m.factors {
            match lead(*k) {
                Some(l) => e += l * *p as i64,
                None => alive = false,
            }
        }
        if alive {
            top = Some(top.map_or(e, |t: i64| t.max(e)));
        }
    }
    let top = top.unwrap_or(0).max(if alpha.is_zero() { i64::MIN } else { 0 });
    let floor = top - check_depth as i64 + 1;

    let mut total = Grid::new();
    for m in &monos {
        let shift = 2 * n * m.s_power as i64;
        let mut acc: Grid = Grid::new();
        acc.insert(shift, AlgElem::from_rational(field, m.coeff.clone() * sign(m.s_power as i64)));
        let mut factors: Vec<u32> = Vec::new();
        for (k, p) in &m.factors {
            factors.extend(core::iter::repeat(*k).take(*p as usize));
        }
        for (idx, k) in factors.iter().enumerate() {
            let remaining: i64 = factors[idx + 1..].iter().map(|j| lead(*j).unwrap_or(i64::MIN / 4)).sum();
            acc = truncated_mul(&acc, &derivs[*k as usize], floor - remaining);
            if acc.is_empty() {
                break;
            }
        }
        for (e, c) in acc {
            if e >= floor {
                let slot = total.entry(e).or_insert_with(|| AlgElem::zero(field));
                *slot += &c;
            }
        }
    }
    Ok((0..check_depth as i64)
        .map(|j| {
            let e = top - j;
            let c = total.get(&e).cloned().unwrap_or_else(|| AlgElem::zero(field));
            (Rational::new(e.into(), (2 * n).into()), c)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational::rat;
    use crate::hierarchy::build_hierarchy_eq;

    #[test]
    fn zero_function_has_zero_residual() {
        for n in 1..=3 {
            let eq = build_hierarchy_eq(n, &alloc::vec![int(1); n - 1], Some(int(0))).unwrap();
            let r = eval_residual(&eq, -5.0, 0.1, &[0.0; 40], 4).unwrap();
            assert!(r.iter().all(|(_, v)| *v == 0.0));
        }
    }

    #[test]
    fn root_profile_residual_is_q_second_derivative() {
        // q = sqrt(-s/2) cancels 2q^3 + s q exactly; what is left is q''
        let eq = build_hierarchy_eq(1, &[], Some(int(0))).unwrap();
        let h = 0.01;
        let s0 = -40.0;
        let samples: Vec<f64> = (0..=1000).map(|i| libm::sqrt(-(s0 + i as f64 * h) / 2.0)).collect();
        for (s, r) in eval_residual(&eq, s0, h, &samples, 6).unwrap() {
            let exact = -libm::sqrt(2.0) / 8.0 * libm::pow(-s, -1.5);
            assert!((r - exact).abs() < 1e-9 * (1.0 + s * s), "s={s} r={r} exact={exact}");
        }
    }

    #[test]
    fn stencil_too_wide() {
        let eq = build_hierarchy_eq(2, &[int(0)], Some(int(0))).unwrap();
        assert!(eval_residual(&eq, 0.0, 0.1, &[0.0; 5], 4).is_err());
        let sym = build_hierarchy_eq(1, &[], None).unwrap();
        assert!(eval_residual(&sym, 0.0, 0.1, &[0.0; 50], 4).is_err());
    }

    #[test]
    fn dominant_balance() {
        let eq = build_hierarchy_eq(1, &[], Some(int(0))).unwrap();
        let theta0 = AlgElem::monomial(1, rat(1, 2), 1);
        let s = AsymSeries::from_terms("|s|", 1, alloc::vec![(rat(1, 2), theta0)]);
        let r = series_residual(&eq, &s, 1).unwrap();
        assert_eq!(r[0].0, rat(3, 2));
        assert!(r[0].1.is_zero());
        let wrong = AsymSeries::from_terms("|s|", 1, alloc::vec![(rat(1, 2), AlgElem::one(1))]);
        let r = series_residual(&eq, &wrong, 1).unwrap();
        assert_eq!(r[0].1, AlgElem::from_int(1, -1));
        let off = AsymSeries::from_terms("|s|", 1, alloc::vec![(rat(1, 3), AlgElem::one(1))]);
        assert!(series_residual(&eq, &off, 1).is_err());
    }
}
