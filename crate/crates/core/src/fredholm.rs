//! `F(s; rho) = det(I - rho K)` on `L^2(s, inf)` by Nystrom discretization,
//! the profile `log F, (log F)', q^2 = -(log F)''` on a grid, and the
//! identities tying them together.

use alloc::vec::Vec;

use nalgebra::DMatrix;

use crate::exactalg::rational::to_f64;
use crate::kernel::{half_line_rule, nystrom_matrix, sym_eigenvalues, DomainMap, KernelError, KernelEval};
use crate::quad::{fd_stencil, fd_weights, panel_weights};
use crate::specfun::{ai_gen, ContourSpec, ModelParams, SpecfunError};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FredholmError {
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error("1 - rho*lambda = {0:e} is not positive; the discretization failed")]
    DeterminantSign(f64),
    #[error("q^2 = {value:e} < 0 at s = {s}")]
    Consistency { s: f64, value: f64 },
    #[error("invalid argument: {0}")]
    Domain(&'static str),
}

impl From<SpecfunError> for FredholmError {
    fn from(e: SpecfunError) -> Self {
        FredholmError::Kernel(KernelError::Specfun(e))
    }
}

/// Discretized operator for one `s`.
#[derive(Clone, Debug)]
pub struct NystromSystem {
    pub s: f64,
    pub params: ModelParams,
    pub map: DomainMap,
    pub nodes: Vec<f64>,
    /// Weights including the Jacobian of the map.
    pub weights: Vec<f64>,
    /// `sqrt(w_i) K(x_i, x_j) sqrt(w_j)`, without `rho`.
    pub matrix: DMatrix<f64>,
}

impl NystromSystem {
    pub fn assemble(ke: &KernelEval, s: f64, m: usize, map: DomainMap) -> Result<Self, FredholmError> {
        if m < 10 {
            return Err(FredholmError::Domain("need at least 10 nodes"));
        }
        if s < ke.x_min() {
            return Err(FredholmError::Domain("s below the kernel validity window"));
        }
        let (nodes, weights) = half_line_rule(s, m, map, ke.x_right());
        let matrix = nystrom_matrix(ke, &nodes, &weights)?;
        Ok(NystromSystem { s, params: ke.params.clone(), map, nodes, weights, matrix })
    }

    pub fn eigenvalues(&self) -> Result<Vec<f64>, FredholmError> {
        Ok(sym_eigenvalues(self.matrix.clone())?)
    }

    /// `sum log(1 - rho lambda_i)`.
    pub fn logdet(&self, rho: f64) -> Result<f64, FredholmError> {
        logdet_from_eigenvalues(&self.eigenvalues()?, rho)
    }
}

pub fn logdet_from_eigenvalues(eig: &[f64], rho: f64) -> Result<f64, FredholmError> {
    let mut acc = 0.0;
    for l in eig {
        let f = 1.0 - rho * l;
        if !(f > 0.0) {
            return Err(FredholmError::DeterminantSign(f));
        }
        acc += libm::log1p(-rho * l);
    }
    Ok(acc)
}

/// Value with error estimate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LogDet {
    pub value: f64,
    pub err: f64,
}

/// `log F(s; rho)` with `m` nodes; the error estimate compares with `2m`.
pub fn logdet_with(ke: &KernelEval, s: f64, m: usize, map: DomainMap) -> Result<LogDet, FredholmError> {
    let rho = ke.params.rho;
    let value = NystromSystem::assemble(ke, s, m, map)?.logdet(rho)?;
    let fine = NystromSystem::assemble(ke, s, 2 * m, map)?.logdet(rho)?;
    Ok(LogDet { value, err: (value - fine).abs() })
}

/// `log F(s; rho)` with default contour and map.
pub fn fredholm_logdet(params: &ModelParams, s: f64, m: usize) -> Result<LogDet, FredholmError> {
    let ke = KernelEval::with_defaults(params, s)?;
    logdet_with(&ke, s, m, DomainMap::default())
}

/// `log F` and its first two derivatives on a uniform grid. `s` here is the
/// argument of `F`, so `q[k]` approximates `q((-1)^(n+1) s_k)`.
#[derive(Clone, Debug, PartialEq)]
pub struct GapProfile {
    pub params: ModelParams,
    pub s: Vec<f64>,
    pub log_f: Vec<f64>,
    pub dlog_f: Vec<f64>,
    pub q2: Vec<f64>,
    /// `sqrt(max(q2, 0))`.
    pub q: Vec<f64>,
    /// Determinant error estimates.
    pub err: Vec<f64>,
    pub fd_order: usize,
}

impl GapProfile {
    pub fn step(&self) -> f64 {
        self.s[1] - self.s[0]
    }

    pub fn len(&self) -> usize {
        self.s.len()
    }

    pub fn is_empty(&self) -> bool {
        self.s.is_empty()
    }
}

/// Tolerance below zero accepted for `q^2` at interior nodes.
pub const Q2_TOLERANCE: f64 = 1e-6;

fn check_grid(s: &[f64]) -> Result<f64, FredholmError> {
    if s.len() < 10 {
        return Err(FredholmError::Domain("grid needs at least 10 points"));
    }
    let h = s[1] - s[0];
    if !(h > 0.0) {
        return Err(FredholmError::Domain("grid must be increasing"));
    }
    if s.windows(2).any(|w| ((w[1] - w[0]) - h).abs() > 1e-9 * h.max(1.0)) {
        return Err(FredholmError::Domain("grid must be uniform"));
    }
    Ok(h)
}

fn derivative(values: &[f64], d: usize, p: usize, h: f64) -> Result<Vec<f64>, FredholmError> {
    let mut out = Vec::with_capacity(values.len());
    let mut cache: Option<(Vec<i64>, Vec<f64>)> = None;
    for i in 0..values.len() {
        let offsets =
            fd_stencil(d, p, i, values.len()).ok_or(FredholmError::Domain("grid too short for the stencil"))?;
        if cache.as_ref().is_none_or(|(o, _)| *o != offsets) {
            let w = fd_weights(&offsets, d).iter().map(to_f64).collect();
            cache = Some((offsets.clone(), w));
        }
        let w = &cache.as_ref().unwrap().1;
        let v: f64 = offsets.iter().zip(w).map(|(o, wj)| wj * values[(i as i64 + o) as usize]).sum();
        out.push(v / libm::pow(h, d as f64));
    }
    Ok(out)
}

/// Profile from precomputed determinants on a uniform grid.
pub fn profile_from_logdets(
    params: &ModelParams,
    s: &[f64],
    logdets: &[LogDet],
    fd_order: usize,
) -> Result<GapProfile, FredholmError> {
    if ![4, 6, 8].contains(&fd_order) {
        return Err(FredholmError::Domain("fd order must be 4, 6 or 8"));
    }
    if s.len() != logdets.len() {
        return Err(FredholmError::Domain("grid and determinant lengths differ"));
    }
    let h = check_grid(s)?;
    let log_f: Vec<f64> = logdets.iter().map(|l| l.value).collect();
    let dlog_f = derivative(&log_f, 1, fd_order, h)?;
    let q2: Vec<f64> = derivative(&log_f, 2, fd_order, h)?.into_iter().map(|v| -v).collect();
    for i in 1..s.len() - 1 {
        if q2[i] < -Q2_TOLERANCE {
            return Err(FredholmError::Consistency { s: s[i], value: q2[i] });
        }
    }
    let q = q2.iter().map(|v| libm::sqrt(v.max(0.0))).collect();
    Ok(GapProfile {
        params: params.clone(),
        s: s.to_vec(),
        log_f,
        dlog_f,
        q2,
        q,
        err: logdets.iter().map(|l| l.err).collect(),
        fd_order,
    })
}

/// Determinants over the grid, then the profile. One kernel evaluator covers
/// the whole grid.
pub fn gap_profile(params: &ModelParams, s: &[f64], m: usize, fd_order: usize) -> Result<GapProfile, FredholmError> {
    check_grid(s)?;
    let ke = KernelEval::new(params, &ContourSpec::for_degree(params.n), s[0])?;
    let dets = s.iter().map(|&sk| logdet_with(&ke, sk, m, DomainMap::default())).collect::<Result<Vec<_>, _>>()?;
    profile_from_logdets(params, s, &dets, fd_order)
}

/// `int_{s_i}^{s_end} f` for every grid index, by degree-7 panels.
fn tail_integrals(f: &[f64], h: f64) -> Vec<f64> {
    let len = f.len();
    let mut out = alloc::vec![0.0; len];
    for i in (0..len - 1).rev() {
        let (offs, w) = panel_weights(i, len, 7);
        let panel: f64 = offs.iter().zip(&w).map(|(o, w)| w * f[(i as i64 + o) as usize]).sum();
        out[i] = out[i + 1] + h * panel;
    }
    out
}

/// Largest tail correction accepted before the grid is declared too short.
pub const TAIL_LIMIT: f64 = 1e-4;

/// `int_S^inf (x - s) q^2 = -log F(S) + (S - s) (log F)'(S)` at the grid end
/// `S`, for every grid point `s`.
fn tail_corrections(profile: &GapProfile) -> Result<Vec<f64>, FredholmError> {
    let last = profile.len() - 1;
    let end = profile.s[last];
    let out: Vec<f64> = profile.s.iter().map(|s| -profile.log_f[last] + (end - s) * profile.dlog_f[last]).collect();
    if out.iter().any(|v| v.abs() > TAIL_LIMIT) {
        return Err(FredholmError::Domain("grid does not extend far enough right: tail correction above 1e-4"));
    }
    Ok(out)
}

/// `max |log F(s) + int_s^inf (x - s) q^2 dx|` over the grid, the integral
/// taken over the grid plus the endpoint tail correction.
pub fn tw_identity_check(profile: &GapProfile) -> Result<f64, FredholmError> {
    let tail = tail_corrections(profile)?;
    let h = profile.step();
    // int_s (x - s) q^2 = int_s x q^2 - s int_s q^2
    let xq2: Vec<f64> = profile.s.iter().zip(&profile.q2).map(|(x, q)| x * q).collect();
    let a = tail_integrals(&xq2, h);
    let b = tail_integrals(&profile.q2, h);
    Ok(profile
        .s
        .iter()
        .enumerate()
        .map(|(i, s)| (profile.log_f[i] + (a[i] - s * b[i] + tail[i])).abs())
        .fold(0.0, f64::max))
}

/// `max |(log F)'(s) - int_s^inf q^2|` over the grid, the tail beyond the
/// grid end taken as `(log F)'(S)`.
pub fn first_derivative_check(profile: &GapProfile) -> Result<f64, FredholmError> {
    tail_corrections(profile)?;
    let last = profile.len() - 1;
    let b = tail_integrals(&profile.q2, profile.step());
    Ok(profile.dlog_f.iter().zip(&b).map(|(d, i)| (d - i - profile.dlog_f[last]).abs()).fold(0.0, f64::max))
}

#[derive(Clone, Debug, PartialEq)]
pub struct TailPoint {
    pub s: f64,
    pub q: f64,
    pub airy: f64,
    /// `|q / (sqrt(rho) |Ai|) - 1|`.
    pub rel_err: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TailReport {
    pub points: Vec<TailPoint>,
    pub max_rel_err: f64,
}

/// Compares `q` with `sqrt(rho) Ai_(2n+1)(s)` on the grid points inside
/// `[lo, hi]`. Magnitudes are compared since `q` is recovered from `q^2`.
pub fn tail_check(profile: &GapProfile, lo: f64, hi: f64) -> Result<TailReport, FredholmError> {
    let params = &profile.params;
    if !params.is_monomial() {
        return Err(FredholmError::Domain("tail relation holds in the monomial case only"));
    }
    let contour = ContourSpec::for_degree(params.n);
    let mut points = Vec::new();
    for (s, q) in profile.s.iter().zip(&profile.q) {
        if *s < lo - 1e-12 || *s > hi + 1e-12 {
            continue;
        }
        let airy = ai_gen(params, *s, &contour)?.value;
        if airy.abs() < 1e-150 {
            return Err(FredholmError::Domain("Airy value underflows in the tail window"));
        }
        let rel_err = (q / (libm::sqrt(params.rho) * airy.abs()) - 1.0).abs();
        points.push(TailPoint { s: *s, q: *q, airy, rel_err });
    }
    if points.is_empty() {
        return Err(FredholmError::Domain("tail window contains no grid points"));
    }
    let max_rel_err = points.iter().map(|p| p.rel_err).fold(0.0, f64::max);
    Ok(TailReport { points, max_rel_err })
}

/// Uniform grid `a, a + h, ..., b`.
pub fn uniform_grid(a: f64, b: f64, h: f64) -> Result<Vec<f64>, FredholmError> {
    if !(h > 0.0) || !(b > a) {
        return Err(FredholmError::Domain("empty range or non-positive step"));
    }
    let k = libm::round((b - a) / h) as usize;
    if ((a + k as f64 * h) - b).abs() > 1e-9 * h {
        return Err(FredholmError::Domain("step does not divide the range"));
    }
    Ok((0..=k).map(|i| a + i as f64 * h).collect())
}
