//! The correlation kernel `K(x, y) = int_0^inf phi(x+u) phi(y+u) du`, its
//! double contour form, and the determinantal-process hypotheses.

use alloc::vec::Vec;
use core::f64::consts::PI;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::quad::gauss_legendre_on;
use crate::specfun::{ContourSpec, ModelParams, PhiEvaluator, SpecfunError};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum KernelError {
    #[error(transparent)]
    Specfun(#[from] SpecfunError),
    #[error("invalid argument: {0}")]
    Domain(&'static str),
    #[error("eigenvalue computation failed")]
    Eigen,
}

/// Map from reference nodes `t in (-1, 1)` onto `[s, inf)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum DomainMap {
    /// `x = s + L (1 + t) / (1 - t)`.
    Rational { scale: f64 },
    /// `x in [s, s + T]`; `None` takes `T` from the decay of the kernel diagonal.
    Truncated { length: Option<f64> },
}

impl Default for DomainMap {
    fn default() -> Self {
        DomainMap::Rational { scale: 2.0 }
    }
}

/// Nodes `x_i` and weights `w_i J_i` on `[s, inf)`.
pub fn half_line_rule(s: f64, m: usize, map: DomainMap, x_right: f64) -> (Vec<f64>, Vec<f64>) {
    match map {
        DomainMap::Rational { scale } => {
            let (t, w) = crate::quad::gauss_legendre(m);
            t.iter()
                .zip(&w)
                .map(|(t, w)| (s + scale * (1.0 + t) / (1.0 - t), w * 2.0 * scale / ((1.0 - t) * (1.0 - t))))
                .unzip()
        }
        DomainMap::Truncated { length } => {
            let len = length.unwrap_or((x_right - s).max(1.0));
            gauss_legendre_on(m, s, s + len)
        }
    }
}

/// `phi` together with the quadrature for the `u` integral.
#[derive(Clone, Debug)]
pub struct KernelEval {
    pub params: ModelParams,
    pub contour: ContourSpec,
    /// Nodes of the `u` rule.
    pub u_nodes: usize,
    phi: PhiEvaluator,
    table: ChebTable,
    x_min: f64,
    x_right: f64,
}

/// Piecewise Chebyshev interpolant of `phi` on `[x_min, x_right]`.
#[derive(Clone, Debug)]
struct ChebTable {
    start: f64,
    width: f64,
    coeffs: Vec<Vec<f64>>,
}

const CHEB_DEGREE: usize = 28;

impl ChebTable {
    fn build(phi: &PhiEvaluator, start: f64, end: f64) -> Result<Self, SpecfunError> {
        let width = 0.5;
        let panels = libm::ceil((end - start) / width).max(1.0) as usize;
        let np = CHEB_DEGREE + 1;
        let theta: Vec<f64> = (0..np).map(|k| PI * (k as f64 + 0.5) / np as f64).collect();
        let mut coeffs = Vec::with_capacity(panels);
        for p in 0..panels {
            let a = start + p as f64 * width;
            let vals = theta
                .iter()
                .map(|t| phi.value(a + 0.5 * width * (1.0 - libm::cos(*t))))
                .collect::<Result<Vec<_>, _>>()?;
            // discrete cosine transform at the Chebyshev points of the first kind
            let c = (0..np)
                .map(|j| {
                    let f = if j == 0 { 1.0 } else { 2.0 } / np as f64;
                    // nodes run from a to b, so t = -cos(theta)
                    let sgn = if j % 2 == 0 { 1.0 } else { -1.0 };
                    f * sgn * vals.iter().zip(&theta).map(|(v, t)| v * libm::cos(j as f64 * t)).sum::<f64>()
                })
                .collect();
            coeffs.push(c);
        }
        Ok(ChebTable { start, width, coeffs })
    }

    fn eval(&self, x: f64) -> Option<f64> {
        let pos = (x - self.start) / self.width;
        if pos < -1e-12 {
            return None;
        }
        let p = (libm::floor(pos.max(0.0)) as usize).min(self.coeffs.len() - 1);
        let t = 2.0 * (pos - p as f64) - 1.0;
        let c = &self.coeffs[p];
        // Clenshaw
        let (mut b1, mut b2) = (0.0, 0.0);
        for ck in c.iter().skip(1).rev() {
            let b0 = ck + 2.0 * t * b1 - b2;
            b2 = b1;
            b1 = b0;
        }
        Some(c[0] + t * b1 - b2)
    }
}

/// Beyond this point `|phi|` stays below `1e-17`.
fn right_cut(phi: &PhiEvaluator, start: f64) -> Result<f64, SpecfunError> {
    let mut x = start.max(0.0);
    loop {
        let mut peak: f64 = 0.0;
        for k in 0..8 {
            peak = peak.max(phi.value(x + 0.125 * k as f64)?.abs());
        }
        if peak < 1e-17 || x > 200.0 {
            return Ok(x);
        }
        x += 0.5;
    }
}

impl KernelEval {
    /// Valid for arguments `>= x_min`.
    pub fn new(params: &ModelParams, contour: &ContourSpec, x_min: f64) -> Result<Self, KernelError> {
        let phi = PhiEvaluator::new(params, contour, x_min, 0)?;
        let x_right = right_cut(&phi, x_min)?;
        let table = ChebTable::build(&phi, x_min, x_right)?;
        Ok(KernelEval { params: params.clone(), contour: contour.clone(), u_nodes: 80, phi, table, x_min, x_right })
    }

    pub fn with_defaults(params: &ModelParams, x_min: f64) -> Result<Self, KernelError> {
        Self::new(params, &ContourSpec::for_degree(params.n), x_min)
    }

    pub fn x_min(&self) -> f64 {
        self.x_min
    }

    /// Point beyond which `phi` is treated as zero.
    pub fn x_right(&self) -> f64 {
        self.x_right
    }

    /// `phi(x)` from the interpolation table.
    pub fn phi(&self, x: f64) -> Result<f64, KernelError> {
        if x >= self.x_right {
            return Ok(0.0);
        }
        self.table.eval(x).ok_or(KernelError::Domain("argument below the validity window"))
    }

    /// `phi(x)` by contour quadrature.
    pub fn phi_direct(&self, x: f64) -> Result<f64, KernelError> {
        Ok(self.phi.value(x)?)
    }

    /// Rows `sqrt(v_k) phi(x_i + u_k)` on a shared `u` rule over
    /// `[0, x_right - min x]`, so that `K = B B^T`.
    pub fn factor_rows(&self, xs: &[f64]) -> Result<DMatrix<f64>, KernelError> {
        let lo = xs.iter().copied().fold(f64::INFINITY, f64::min);
        let (u, v) = gauss_legendre_on(self.u_nodes, 0.0, (self.x_right - lo).max(0.0));
        let mut b = DMatrix::zeros(xs.len(), u.len());
        for (i, x) in xs.iter().enumerate() {
            for (k, (uk, vk)) in u.iter().zip(&v).enumerate() {
                b[(i, k)] = libm::sqrt(*vk) * self.phi(x + uk)?;
            }
        }
        Ok(b)
    }
}

/// `K(x, y)` by Gauss-Legendre in `u` on `[0, U]`, `U` from the right decay of `phi`.
pub fn kernel_factored(ke: &KernelEval, x: f64, y: f64) -> Result<f64, KernelError> {
    let (lo, hi) = if x <= y { (x, y) } else { (y, x) };
    if lo < ke.x_min {
        return Err(KernelError::Domain("argument below the validity window"));
    }
    let upper = ke.x_right - lo;
    if upper <= 0.0 {
        return Ok(0.0);
    }
    let (u, w) = gauss_legendre_on(ke.u_nodes, 0.0, upper);
    let mut acc = 0.0;
    for (uk, wk) in u.iter().zip(&w) {
        acc += wk * ke.phi(lo + uk)? * ke.phi(hi + uk)?;
    }
    Ok(acc)
}

fn p_poly(params: &ModelParams, z: Complex64) -> Complex64 {
    let n = params.n;
    let mut acc = z.powu(2 * n as u32 + 1) / (2 * n + 1) as f64;
    for (j, tau) in params.taus.iter().enumerate() {
        let j = j + 1;
        acc += z.powu(2 * j as u32 + 1) * (tau / (2 * j + 1) as f64);
    }
    acc
}

/// Nodes `z` and weights `dz` of one contour made of two rays from `apex`
/// leaving at angles `-psi` (outgoing) and `psi` (incoming), or reversed.
fn two_rays(apex: f64, psi: f64, radius: f64, m: usize, upward: bool) -> Vec<(Complex64, Complex64)> {
    let (r, w) = gauss_legendre_on(m, 0.0, radius);
    let mut out = Vec::with_capacity(2 * m);
    let (first, second) = if upward { (-psi, psi) } else { (psi, -psi) };
    // incoming ray traversed towards the apex, then the outgoing ray
    for (ang, orient) in [(first, -1.0), (second, 1.0)] {
        let dir = Complex64::from_polar(1.0, ang);
        for (rk, wk) in r.iter().zip(&w) {
            out.push((apex + dir * *rk, dir * (orient * wk)));
        }
    }
    out
}

/// `K(x, y)` from the double contour integral over `gamma_R` (apex 1, rays at
/// `+-n pi/(2n+1)`, oriented downward) and `gamma_L` (apex -1, rays at
/// `+-(n+1) pi/(2n+1)`, oriented upward). Quadratic cost; an oracle only.
pub fn kernel_contour(ke: &KernelEval, x: f64, y: f64) -> Result<f64, KernelError> {
    let p = &ke.params;
    let n = p.n;
    let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
    let psi_r = n as f64 * PI / (2 * n + 1) as f64;
    let psi_l = (n + 1) as f64 * PI / (2 * n + 1) as f64;
    let expo_r = |mu: Complex64| sign * p_poly(p, mu) - x * mu;
    let expo_l = |la: Complex64| -sign * p_poly(p, la) + y * la;
    let radius = |f: &dyn Fn(Complex64) -> Complex64, apex: f64, psi: f64| {
        let mut r = 1.0;
        loop {
            let worst =
                [psi, -psi].iter().map(|a| f(apex + Complex64::from_polar(r, *a)).re).fold(f64::NEG_INFINITY, f64::max);
            if worst < -45.0 || r > 1e3 {
                return r;
            }
            r *= 1.05;
        }
    };
    let m = ke.contour.nodes.max(60);
    let rr = radius(&expo_r, 1.0, psi_r);
    let rl = radius(&expo_l, -1.0, psi_l);
    let gr = two_rays(1.0, psi_r, rr, m, false);
    let gl = two_rays(-1.0, psi_l, rl, m, true);
    let er: Vec<Complex64> = gr.iter().map(|(mu, d)| expo_r(*mu).exp() * d).collect();
    let el: Vec<Complex64> = gl.iter().map(|(la, d)| expo_l(*la).exp() * d).collect();
    let mut acc = Complex64::new(0.0, 0.0);
    for ((mu, _), a) in gr.iter().zip(&er) {
        for ((la, _), b) in gl.iter().zip(&el) {
            acc += a * b / (la - mu);
        }
    }
    let two_pi_i = Complex64::new(0.0, 2.0 * PI);
    let v = acc / (two_pi_i * two_pi_i);
    if !v.re.is_finite() {
        return Err(KernelError::Specfun(SpecfunError::Overflow));
    }
    if v.im.abs() > 1e-8 * (1.0 + v.re.abs()) {
        return Err(KernelError::Specfun(SpecfunError::NotReal(v.im.abs())));
    }
    Ok(v.re)
}

/// Symmetrized Nystrom matrix `sqrt(w_i) K(x_i, x_j) sqrt(w_j)` for the
/// given rule.
pub fn nystrom_matrix(ke: &KernelEval, xs: &[f64], ws: &[f64]) -> Result<DMatrix<f64>, KernelError> {
    let mut b = ke.factor_rows(xs)?;
    for (i, w) in ws.iter().enumerate() {
        let sw = libm::sqrt(*w);
        for v in b.row_mut(i).iter_mut() {
            *v *= sw;
        }
    }
    Ok(&b * b.transpose())
}

/// Eigenvalues in increasing order.
pub fn sym_eigenvalues(m: DMatrix<f64>) -> Result<Vec<f64>, KernelError> {
    let eig = SymmetricEigen::try_new(m, 1e-15, 10_000).ok_or(KernelError::Eigen)?;
    let mut v: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    if v.iter().any(|x| !x.is_finite()) {
        return Err(KernelError::Eigen);
    }
    v.sort_by(f64::total_cmp);
    Ok(v)
}

#[derive(Clone, Debug, PartialEq)]
pub struct DppReport {
    pub min_eig: f64,
    pub max_eig: f64,
    /// `max_i sum_j |(M^2 - M)_ij|` on the symmetric window; reported only.
    pub projection_defect: f64,
}

/// Spectrum of the discretized operator on `[s, inf)` and the projection
/// defect of the discretization on `[-T, T]`, `T = x_right`.
pub fn dpp_hypotheses_check(ke: &KernelEval, s: f64, m: usize) -> Result<DppReport, KernelError> {
    if m < 10 {
        return Err(KernelError::Domain("need at least 10 nodes"));
    }
    if s < ke.x_min {
        return Err(KernelError::Domain("s below the validity window"));
    }
    let (xs, ws) = half_line_rule(s, m, DomainMap::default(), ke.x_right);
    let a = nystrom_matrix(ke, &xs, &ws)? * ke.params.rho;
    let eig = sym_eigenvalues(a)?;
    let t = ke.x_right;
    let projection_defect = if -t >= ke.x_min {
        let (xs, ws) = gauss_legendre_on(m, -t, t);
        let mm = nystrom_matrix(ke, &xs, &ws)?;
        let d = &mm * &mm - &mm;
        d.row_iter().map(|r| r.iter().map(|v| v.abs()).sum::<f64>()).fold(0.0, f64::max)
    } else {
        f64::NAN
    };
    Ok(DppReport { min_eig: eig[0], max_eig: eig[eig.len() - 1], projection_defect })
}

/// `det [K(x_i, x_j)]` for a small tuple, by Gaussian elimination.
pub fn correlation_minor(ke: &KernelEval, xs: &[f64]) -> Result<f64, KernelError> {
    let k = xs.len();
    let mut m = DMatrix::zeros(k, k);
    for i in 0..k {
        for j in 0..=i {
            let v = kernel_factored(ke, xs[i], xs[j])?;
            m[(i, j)] = v;
            m[(j, i)] = v;
        }
    }
    Ok(m.determinant())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::phi;

    fn airy_ke() -> KernelEval {
        KernelEval::with_defaults(&ModelParams::monomial(1), -4.0).unwrap()
    }

    #[test]
    fn table_matches_quadrature() {
        for (p, lo) in [(ModelParams::monomial(1), -8.0), (ModelParams::new(2, alloc::vec![1.0], 1.0).unwrap(), -6.0)] {
            let ke = KernelEval::with_defaults(&p, lo).unwrap();
            let mut x = lo;
            while x < ke.x_right() {
                let d = ke.phi_direct(x).unwrap();
                assert!((ke.phi(x).unwrap() - d).abs() < 1e-13, "x={x}");
                x += 0.0737;
            }
        }
    }

    #[test]
    fn airy_kernel_values() {
        let ke = airy_ke();
        let aip0 = -libm::pow(3.0, -1.0 / 3.0) / libm::tgamma(1.0 / 3.0);
        let k00 = kernel_factored(&ke, 0.0, 0.0).unwrap();
        assert!((k00 - aip0 * aip0).abs() < 1e-10, "{k00}");
        let p = ModelParams::monomial(1);
        let c = ContourSpec::for_degree(1);
        let a = |x: f64, d: u32| phi(&p, x, d, &c).unwrap().value;
        let want = (a(0.0, 0) * a(1.0, 1) - a(1.0, 0) * a(0.0, 1)) / (0.0 - 1.0);
        let k01 = kernel_factored(&ke, 0.0, 1.0).unwrap();
        assert!((k01 - want).abs() < 1e-10);
        assert_eq!(k01, kernel_factored(&ke, 1.0, 0.0).unwrap());
        // diagonal at a negative point
        let x = -2.5;
        let want = a(x, 1) * a(x, 1) - x * a(x, 0) * a(x, 0);
        assert!((kernel_factored(&ke, x, x).unwrap() - want).abs() < 1e-10);
    }

    #[test]
    fn contour_form_agrees() {
        let ke = airy_ke();
        let f = kernel_factored(&ke, 0.0, 0.0).unwrap();
        let c = kernel_contour(&ke, 0.0, 0.0).unwrap();
        assert!((f - c).abs() < 1e-7, "{f} vs {c}");
        let p = ModelParams::new(2, alloc::vec![0.5], 1.0).unwrap();
        let ke = KernelEval::with_defaults(&p, -2.0).unwrap();
        let f = kernel_factored(&ke, 1.0, -1.0).unwrap();
        let c = kernel_contour(&ke, 1.0, -1.0).unwrap();
        assert!((f - c).abs() < 1e-6, "{f} vs {c}");
    }

    #[test]
    fn shared_rule_matches_pairwise() {
        let ke = airy_ke();
        let xs = [-4.0, -1.0, 0.5, 3.0];
        let b = ke.factor_rows(&xs).unwrap();
        let k = &b * b.transpose();
        for i in 0..4 {
            for j in 0..4 {
                let direct = kernel_factored(&ke, xs[i], xs[j]).unwrap();
                assert!((k[(i, j)] - direct).abs() < 1e-10, "{i} {j}");
            }
        }
    }

    #[test]
    fn spectrum_bounds() {
        let r = dpp_hypotheses_check(&airy_ke(), 0.0, 40).unwrap();
        assert!(r.min_eig >= -1e-8 && r.max_eig <= 1.0 + 1e-8);
        let p = ModelParams::monomial(2);
        let ke = KernelEval::with_defaults(&p, -1.0).unwrap();
        let r = dpp_hypotheses_check(&ke, -1.0, 40).unwrap();
        assert!(r.min_eig >= -1e-8 && r.max_eig <= 1.0 + 1e-8);
        let ke0 = KernelEval::with_defaults(&ModelParams::monomial(1).with_rho(0.0), 0.0).unwrap();
        let r = dpp_hypotheses_check(&ke0, 0.0, 12).unwrap();
        assert_eq!((r.min_eig, r.max_eig), (0.0, 0.0));
    }
}
