//! Quadrature rules and finite difference weights shared by the numeric
//! modules.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_traits::{One, Zero};

use crate::exactalg::rational::{int, to_f64, Rational};

/// Gauss-Legendre nodes and weights on `[-1, 1]`, nodes ascending.
pub fn gauss_legendre(m: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; m];
    let mut w = vec![0.0; m];
    let mf = m as f64;
    for i in 0..m.div_ceil(2) {
        // Tricomi initial guess, then Newton on P_m
        let mut z = libm::cos(PI * (i as f64 + 0.75) / (mf + 0.5));
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(m, z);
            dp = d;
            let dz = p / d;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(m, z);
        if d != 0.0 {
            dp = d;
        }
        let wi = 2.0 / ((1.0 - z * z) * dp * dp);
        x[i] = -z;
        x[m - 1 - i] = z;
        w[i] = wi;
        w[m - 1 - i] = wi;
    }
    if m % 2 == 1 {
        x[m / 2] = 0.0;
    }
    (x, w)
}

fn legendre_with_derivative(m: usize, z: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = z;
    if m == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=m {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * z * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = m as f64 * (z * p1 - p0) / (z * z - 1.0);
    (p1, d)
}

/// Gauss-Legendre rule mapped to `[a, b]`.
pub fn gauss_legendre_on(m: usize, a: f64, b: f64) -> (Vec<f64>, Vec<f64>) {
    let (x, w) = gauss_legendre(m);
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    (x.iter().map(|t| mid + half * t).collect(), w.iter().map(|v| v * half).collect())
}

/// Tanh-sinh nodes and weights on `[-1, 1]` with `m` points.
pub fn tanh_sinh(m: usize) -> (Vec<f64>, Vec<f64>) {
    let m = m.max(3) | 1;
    let half = (m / 2) as f64;
    let tmax = 3.2;
    let h = tmax / half;
    let mut xs = Vec::with_capacity(m);
    let mut ws = Vec::with_capacity(m);
    for k in 0..m {
        let t = (k as f64 - half) * h;
        let u = 0.5 * PI * libm::sinh(t);
        let c = libm::cosh(u);
        xs.push(libm::tanh(u));
        ws.push(h * 0.5 * PI * libm::cosh(t) / (c * c));
    }
    (xs, ws)
}

/// Exact weights `w` with `f^(d)(x0) ~ sum_j w_j f(x0 + offsets_j h) / h^d`.
pub fn fd_weights(offsets: &[i64], d: usize) -> Vec<Rational> {
    // Fornberg's recursion in exact arithmetic, centred at 0
    let nodes: Vec<Rational> = offsets.iter().map(|&o| int(o)).collect();
    let np = nodes.len();
    let mut c = vec![vec![vec![Rational::zero(); np]; np]; d + 1];
    c[0][0][0] = Rational::one();
    let mut c1 = Rational::one();
    for i in 1..np {
        let mut c2 = Rational::one();
        for j in 0..i {
            let c3 = &nodes[i] - &nodes[j];
            c2 *= &c3;
            for k in 0..=d.min(i) {
                let prev_k = if k > 0 { c[k - 1][i - 1][j].clone() } else { Rational::zero() };
                c[k][i][j] = (&nodes[i] * &c[k][i - 1][j] - int(k as i64) * prev_k) / &c3;
            }
        }
        for k in 0..=d.min(i) {
            let prev_k = if k > 0 { c[k - 1][i - 1][i - 1].clone() } else { Rational::zero() };
            c[k][i][i] = &c1 / &c2 * (int(k as i64) * prev_k - &nodes[i - 1] * &c[k][i - 1][i - 1]);
        }
        c1 = c2;
    }
    (0..np).map(|j| c[d][np - 1][j].clone()).collect()
}

/// Offsets of the stencil used for derivative `d` with accuracy `p` at index
/// `i` of a grid of length `len`: centred if it fits, otherwise shifted.
pub fn fd_stencil(d: usize, p: usize, i: usize, len: usize) -> Option<Vec<i64>> {
    let centred = 2 * d.div_ceil(2) - 1 + p;
    let half = (centred / 2) as i64;
    let npts = centred as i64;
    if (len as i64) < npts {
        return None;
    }
    let mut start = i as i64 - half;
    start = start.clamp(0, len as i64 - npts);
    let shifted = start != i as i64 - half;
    // one-sided stencils lose an order; add a point to compensate
    let npts = if shifted { (npts + 1).min(len as i64) } else { npts };
    let start = start.clamp(0, len as i64 - npts);
    Some((0..npts).map(|k| start + k - i as i64).collect())
}

/// Float finite difference weights for derivative `d`, accuracy `p`, at
/// index `i` of a uniform grid with step `h`.
pub fn fd_apply(values: &[f64], d: usize, p: usize, i: usize, h: f64) -> Option<f64> {
    let offsets = fd_stencil(d, p, i, values.len())?;
    let w = fd_weights(&offsets, d);
    let sum: f64 = offsets.iter().zip(&w).map(|(o, wj)| to_f64(wj) * values[(i as i64 + o) as usize]).sum();
    Some(sum / libm::pow(h, d as f64))
}

/// Weights for `int_{x_i}^{x_{i+1}} f` using the degree-`deg` interpolant
/// on nearby uniform nodes; returned as (offsets, weights in units of h).
pub fn panel_weights(i: usize, len: usize, deg: usize) -> (Vec<i64>, Vec<f64>) {
    let npts = (deg + 1).min(len);
    let half = (npts as i64 - 1) / 2;
    let start = (i as i64 - half).clamp(0, len as i64 - npts as i64);
    let offsets: Vec<i64> = (0..npts as i64).map(|k| start + k - i as i64).collect();
    // integrate Lagrange basis over [0, 1] exactly
    let weights = offsets
        .iter()
        .enumerate()
        .map(|(j, _)| {
            let mut poly = vec![Rational::one()];
            let mut denom = Rational::one();
            for (k, ok) in offsets.iter().enumerate() {
                if k == j {
                    continue;
                }
                let mut next = vec![Rational::zero(); poly.len() + 1];
                for (e, c) in poly.iter().enumerate() {
                    next[e + 1] += c;
                    next[e] -= c * int(*ok);
                }
                poly = next;
                denom *= int(offsets[j] - ok);
            }
            let integral: Rational =
                poly.iter().enumerate().map(|(e, c)| c / int(e as i64 + 1)).fold(Rational::zero(), |a, b| a + b);
            to_f64(&(integral / denom))
        })
        .collect();
    (offsets, weights)
}
