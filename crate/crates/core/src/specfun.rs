//! The deformed Airy function
//! `phi(x) = (1/2pi) int exp(i(l^(2n+1)/(2n+1) + sum (-1)^(n+j) tau_j l^(2j+1)/(2j+1) + x l)) dl`
//! and its derivatives, by quadrature on a V-shaped contour through the
//! origin with arms at `theta_0` and `pi - theta_0`, `theta_0 = pi/(2(2n+1))`.

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use crate::quad::{gauss_legendre_on, tanh_sinh};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SpecfunError {
    #[error("invalid parameters: {0}")]
    Params(&'static str),
    #[error("contour quadrature is not real: relative imaginary part {0:e}")]
    NotReal(f64),
    #[error("non-finite value in contour quadrature")]
    Overflow,
}

/// `(n, tau_1 .. tau_(n-1), rho)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ModelParams {
    pub n: usize,
    pub taus: Vec<f64>,
    pub rho: f64,
}

impl ModelParams {
    /// `rho = 0` is accepted as the degenerate empty-process limit.
    pub fn new(n: usize, taus: Vec<f64>, rho: f64) -> Result<Self, SpecfunError> {
        if n == 0 {
            return Err(SpecfunError::Params("n must be at least 1"));
        }
        if taus.len() + 1 != n {
            return Err(SpecfunError::Params("expected n - 1 deformation parameters"));
        }
        if taus.iter().any(|t| !t.is_finite()) {
            return Err(SpecfunError::Params("deformation parameters must be finite"));
        }
        if !(0.0..=1.0).contains(&rho) {
            return Err(SpecfunError::Params("rho must lie in [0, 1]"));
        }
        Ok(ModelParams { n, taus, rho })
    }

    pub fn monomial(n: usize) -> Self {
        ModelParams { n, taus: alloc::vec![0.0; n.saturating_sub(1)], rho: 1.0 }
    }

    pub fn is_monomial(&self) -> bool {
        self.taus.iter().all(|t| *t == 0.0)
    }

    pub fn with_rho(&self, rho: f64) -> Self {
        ModelParams { rho, ..self.clone() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuadRule {
    GaussLegendre,
    TanhSinh,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ContourSpec {
    /// Argument of the right arm; the left arm sits at `pi - angle`.
    pub angle: f64,
    /// Truncation radius; `None` picks it from the decay of the integrand.
    pub radius: Option<f64>,
    /// Nodes per arm.
    pub nodes: usize,
    pub rule: QuadRule,
}

impl ContourSpec {
    pub fn for_degree(n: usize) -> Self {
        ContourSpec { angle: PI / (2.0 * (2 * n + 1) as f64), radius: None, nodes: 200, rule: QuadRule::GaussLegendre }
    }

    fn validate(&self, n: usize) -> Result<(), SpecfunError> {
        if !(self.angle > 0.0 && self.angle < PI / (2 * n + 1) as f64) {
            return Err(SpecfunError::Params("contour angle must lie in (0, pi/(2n+1))"));
        }
        if self.nodes < 4 {
            return Err(SpecfunError::Params("need at least 4 nodes per arm"));
        }
        if self.radius.is_some_and(|r| !(r > 0.0)) {
            return Err(SpecfunError::Params("truncation radius must be positive"));
        }
        Ok(())
    }
}

/// Value with its error estimate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub err: f64,
}

/// Coefficients `a_k` of the phase `sum a_k l^k` (odd `k` only).
fn phase_coeffs(p: &ModelParams) -> Vec<f64> {
    let n = p.n;
    let mut a = alloc::vec![0.0; 2 * n + 2];
    a[2 * n + 1] = 1.0 / (2 * n + 1) as f64;
    for (j, tau) in p.taus.iter().enumerate() {
        let j = j + 1;
        let sign = if (n + j) % 2 == 0 { 1.0 } else { -1.0 };
        a[2 * j + 1] = sign * tau / (2 * j + 1) as f64;
    }
    a
}

fn poly(a: &[f64], z: Complex64) -> Complex64 {
    a.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + *c)
}

/// Radius beyond which the integrand is below `e^-45` on a ray of the given
/// direction, for every `x >= x_min`.
fn cut_radius(a: &[f64], dir: Complex64, x_min: f64, deriv: u32) -> f64 {
    let i = Complex64::new(0.0, 1.0);
    let g = |r: f64| {
        let z = dir * r;
        (i * (poly(a, z) + z * x_min)).re + deriv as f64 * libm::log(r.max(1.0))
    };
    let mut r = 1.0;
    while !(g(r) < -45.0 && g(1.05 * r) < g(r)) && r < 1.0e4 {
        r *= 1.05;
    }
    r
}

/// Precomputed contour rule for repeated evaluation of `phi^(deriv)`.
///
/// `phi(x) = Re sum_j w_j exp(i x l_j)` with the phase and `(i l)^deriv`
/// folded into the complex weights `w_j`. Both arms are kept explicitly so
/// the imaginary part measures the quality of the rule.
#[derive(Clone, Debug)]
pub struct PhiEvaluator {
    deriv: u32,
    x_min: f64,
    full: Vec<(Complex64, Complex64)>,
    coarse: Vec<(Complex64, Complex64)>,
}

impl PhiEvaluator {
    /// Valid for every `x >= x_min`.
    pub fn new(params: &ModelParams, contour: &ContourSpec, x_min: f64, deriv: u32) -> Result<Self, SpecfunError> {
        contour.validate(params.n)?;
        let a = phase_coeffs(params);
        let right = Complex64::from_polar(1.0, contour.angle);
        let left = Complex64::from_polar(1.0, PI - contour.angle);
        let radius = contour
            .radius
            .unwrap_or_else(|| cut_radius(&a, right, x_min, deriv).max(cut_radius(&a, left, x_min, deriv)));
        let build = |m: usize| -> Vec<(Complex64, Complex64)> {
            let (r, w) = match contour.rule {
                QuadRule::GaussLegendre => gauss_legendre_on(m, 0.0, radius),
                QuadRule::TanhSinh => {
                    let (t, w) = tanh_sinh(m);
                    (t.iter().map(|t| 0.5 * radius * (t + 1.0)).collect(), w.iter().map(|w| 0.5 * radius * w).collect())
                }
            };
            let i = Complex64::new(0.0, 1.0);
            let mut out = Vec::with_capacity(2 * r.len());
            // integral from infinity to 0 along the left arm, then out along the right arm
            for (dir, orient) in [(left, -1.0), (right, 1.0)] {
                for (rk, wk) in r.iter().zip(&w) {
                    let l = dir * *rk;
                    let weight = (i * poly(&a, l)).exp() * (i * l).powu(deriv) * dir * (orient * wk / (2.0 * PI));
                    out.push((l, weight));
                }
            }
            out
        };
        Ok(PhiEvaluator { deriv, x_min, full: build(contour.nodes), coarse: build(contour.nodes / 2) })
    }

    pub fn deriv(&self) -> u32 {
        self.deriv
    }

    fn sum(rule: &[(Complex64, Complex64)], x: f64) -> (Complex64, f64) {
        let i = Complex64::new(0.0, 1.0);
        let mut acc = Complex64::new(0.0, 0.0);
        let mut mag = 0.0;
        for (l, w) in rule {
            let t = *w * (i * x * *l).exp();
            mag += t.norm();
            acc += t;
        }
        (acc, mag)
    }

    /// `phi^(deriv)(x)` with error estimate.
    pub fn eval(&self, x: f64) -> Result<Estimate, SpecfunError> {
        if x < self.x_min - 1e-12 * (1.0 + self.x_min.abs()) {
            return Err(SpecfunError::Params("x below the validity window of this evaluator"));
        }
        let (v, mag) = Self::sum(&self.full, x);
        if !v.re.is_finite() || !v.im.is_finite() {
            return Err(SpecfunError::Overflow);
        }
        let rel_im = v.im.abs() / (1.0 + v.re.abs());
        if rel_im > 1e-10 {
            return Err(SpecfunError::NotReal(rel_im));
        }
        let (c, _) = Self::sum(&self.coarse, x);
        let err = (v.re - c.re).abs().max(4.0 * f64::EPSILON * mag);
        Ok(Estimate { value: v.re, err })
    }

    /// Value only, for assembly loops.
    pub fn value(&self, x: f64) -> Result<f64, SpecfunError> {
        if x < self.x_min - 1e-12 * (1.0 + self.x_min.abs()) {
            return Err(SpecfunError::Params("x below the validity window of this evaluator"));
        }
        let (v, _) = Self::sum(&self.full, x);
        if !v.re.is_finite() {
            return Err(SpecfunError::Overflow);
        }
        let rel_im = v.im.abs() / (1.0 + v.re.abs());
        if rel_im > 1e-10 {
            return Err(SpecfunError::NotReal(rel_im));
        }
        Ok(v.re)
    }
}

/// `phi^(deriv)(x)`.
pub fn phi(params: &ModelParams, x: f64, deriv: u32, contour: &ContourSpec) -> Result<Estimate, SpecfunError> {
    PhiEvaluator::new(params, contour, x, deriv)?.eval(x)
}

/// `Ai_(2n+1)(x)`: `phi` for the given parameters, which is the generalized
/// Airy function in the monomial case and the classical `Ai` for `n = 1`.
pub fn ai_gen(params: &ModelParams, x: f64, contour: &ContourSpec) -> Result<Estimate, SpecfunError> {
    phi(params, x, 0, contour)
}

/// `f^(2n)(x) - (-1)^(n+1) x f(x)` on a grid, all derivatives by quadrature.
pub fn ode_residual_ai(params: &ModelParams, xs: &[f64], contour: &ContourSpec) -> Result<Vec<f64>, SpecfunError> {
    if !params.is_monomial() {
        return Err(SpecfunError::Params("the Airy-type equation holds for the monomial case only"));
    }
    let x_min = xs.iter().copied().fold(f64::INFINITY, f64::min);
    let n = params.n;
    let f = PhiEvaluator::new(params, contour, x_min, 0)?;
    let d = PhiEvaluator::new(params, contour, x_min, 2 * n as u32)?;
    let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
    xs.iter().map(|&x| Ok(d.value(x)? - sign * x * f.value(x)?)).collect()
}

/// `phi(0)` for the monomial case:
/// `N^(1/N - 1) Gamma(1/N) cos(pi/(2N)) / pi`, `N = 2n + 1`.
pub fn phi_at_zero_monomial(n: usize) -> f64 {
    let big = (2 * n + 1) as f64;
    libm::pow(big, 1.0 / big - 1.0) * libm::tgamma(1.0 / big) * libm::cos(PI / (2.0 * big)) / PI
}

#[cfg(test)]
mod tests {
    use super::*;

    // Maclaurin series of Ai, summed far enough for |x| <= 8
    fn airy_series(x: f64) -> (f64, f64) {
        let c1 = 1.0 / (libm::pow(3.0, 2.0 / 3.0) * libm::tgamma(2.0 / 3.0));
        let c2 = 1.0 / (libm::pow(3.0, 1.0 / 3.0) * libm::tgamma(1.0 / 3.0));
        let (mut f, mut g) = (1.0, x);
        let (mut tf, mut tg) = (1.0, x);
        let (mut df, mut dg) = (0.0, 1.0);
        let x3 = x * x * x;
        for k in 1..200 {
            let k3 = 3.0 * k as f64;
            let prev_tf = tf;
            let prev_tg = tg;
            tf *= x3 / ((k3 - 1.0) * k3);
            tg *= x3 / (k3 * (k3 + 1.0));
            f += tf;
            g += tg;
            df += prev_tf * x * x / (k3 - 1.0);
            dg += prev_tg * x * x / k3;
        }
        (c1 * f - c2 * g, c1 * df - c2 * dg)
    }

    #[test]
    fn airy_at_zero_and_series_agreement() {
        let p = ModelParams::monomial(1);
        let c = ContourSpec::for_degree(1);
        let v = ai_gen(&p, 0.0, &c).unwrap();
        assert!((v.value - 0.3550280538878172).abs() < 1e-12);
        for i in 0..=24 {
            let x = -8.0 + 0.5 * i as f64;
            let got = phi(&p, x, 0, &c).unwrap().value;
            let d = phi(&p, x, 1, &c).unwrap().value;
            let (ai, aip) = airy_series(x);
            assert!((got - ai).abs() < 1e-8, "x={x}: {got} vs {ai}");
            assert!((d - aip).abs() < 1e-8, "x={x}: {d} vs {aip}");
        }
    }

    #[test]
    fn closed_form_at_zero() {
        for n in 1..=3 {
            let v = phi(&ModelParams::monomial(n), 0.0, 0, &ContourSpec::for_degree(n)).unwrap();
            assert!((v.value - phi_at_zero_monomial(n)).abs() < 1e-12, "n={n}");
        }
        let n1 = phi_at_zero_monomial(1);
        let reflection = libm::pow(3.0, -2.0 / 3.0) / libm::tgamma(2.0 / 3.0);
        assert!((n1 - reflection).abs() < 1e-14);
    }

    #[test]
    fn right_decay() {
        let v = phi(&ModelParams::monomial(1), 10.0, 0, &ContourSpec::for_degree(1)).unwrap().value;
        let tail = libm::exp(-2.0 / 3.0 * libm::pow(10.0, 1.5)) / (2.0 * libm::sqrt(PI) * libm::pow(10.0, 0.25));
        assert!(v.abs() < 1e-9);
        assert!((v / tail - 1.0).abs() < 0.02);
    }

    #[test]
    fn first_airy_zero() {
        let v = ai_gen(&ModelParams::monomial(1), -2.338107410459767, &ContourSpec::for_degree(1)).unwrap();
        assert!(v.value.abs() < 1e-7);
    }

    #[test]
    fn ode_residuals() {
        let xs: Vec<f64> = (0..=40).map(|i| -5.0 + 0.25 * i as f64).collect();
        let r = ode_residual_ai(&ModelParams::monomial(1), &xs, &ContourSpec::for_degree(1)).unwrap();
        assert!(r.iter().all(|v| v.abs() < 1e-6));
        let xs: Vec<f64> = (0..=24).map(|i| -3.0 + 0.25 * i as f64).collect();
        let r = ode_residual_ai(&ModelParams::monomial(2), &xs, &ContourSpec::for_degree(2)).unwrap();
        assert!(r.iter().all(|v| v.abs() < 1e-5));
    }

    #[test]
    fn contour_independence_and_rules() {
        let p = ModelParams::new(2, alloc::vec![0.5], 1.0).unwrap();
        let base = ContourSpec::for_degree(2);
        let a = phi(&p, -1.5, 0, &base).unwrap();
        let more = ContourSpec { nodes: 400, ..base.clone() };
        let b = phi(&p, -1.5, 0, &more).unwrap();
        assert!((a.value - b.value).abs() <= a.err.max(1e-14));
        let ts = ContourSpec { rule: QuadRule::TanhSinh, nodes: 301, ..base.clone() };
        let c = phi(&p, -1.5, 0, &ts).unwrap();
        assert!((a.value - c.value).abs() < 1e-10);
        let tilted = ContourSpec { angle: 0.7 * base.angle, nodes: 300, ..base };
        let d = phi(&p, -1.5, 0, &tilted).unwrap();
        assert!((a.value - d.value).abs() < 1e-10);
    }

    #[test]
    fn invalid_inputs() {
        assert!(ModelParams::new(0, alloc::vec![], 1.0).is_err());
        assert!(ModelParams::new(2, alloc::vec![], 1.0).is_err());
        assert!(ModelParams::new(1, alloc::vec![], 1.5).is_err());
        let bad = ContourSpec { angle: 1.2, ..ContourSpec::for_degree(1) };
        assert!(phi(&ModelParams::monomial(1), 0.0, 0, &bad).is_err());
        let ev = PhiEvaluator::new(&ModelParams::monomial(1), &ContourSpec::for_degree(1), 0.0, 0).unwrap();
        assert!(ev.eval(-1.0).is_err());
    }
}
