//! Acceptance criteria A1 to A10, one result line each.
//!
//! Exact criteria compare against hand-typed displays or closed forms kept
//! in this file; numeric criteria run the library at fixed settings.
//! Random parameters come from seeded generators, so output is reproducible.

use std::fmt;
use std::time::Instant;

use gapprob_core::asympt::{
    asympt_vs_numeric_with, largegap_series, log_c_airy, null_coefficients_check, q_series, theta2_convolution_check,
    zeta_prime_minus_one, AsymSeries, LogCoefficient,
};
use gapprob_core::exactalg::rational::{int, rat};
use gapprob_core::exactalg::{AlgElem, Rational};
use gapprob_core::fredholm::{fredholm_logdet, tail_check, tw_identity_check, uniform_grid, GapProfile};
use gapprob_core::hierarchy::{build_hierarchy_eq, eval_residual, series_residual, DiffMonomial, DiffPoly};
use gapprob_core::kernel::{dpp_hypotheses_check, kernel_contour, kernel_factored, KernelEval};
use gapprob_core::specfun::{ode_residual_ai, ContourSpec, ModelParams};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::commands::profile_par;

/// Criteria expected to fail, with the reason recorded in the decisions
/// ledger: A6 uses the displayed `log|s|` coefficient `-1/2` for `n = 2`,
/// which the hierarchy contradicts (it forces `-5/48`).
pub const KNOWN_FAILURES: &[&str] = &["A6"];

#[derive(Clone, Debug, PartialEq)]
pub struct CriterionResult {
    pub id: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.id, if self.passed { "PASS" } else { "FAIL" }, self.detail)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Exact,
    Asympt,
    Numeric,
    All,
}

impl Suite {
    pub fn parse(s: &str) -> Option<Suite> {
        match s {
            "exact" => Some(Suite::Exact),
            "asympt" => Some(Suite::Asympt),
            "numeric" => Some(Suite::Numeric),
            "all" => Some(Suite::All),
            _ => None,
        }
    }
}

type Check = Result<(bool, String), String>;

fn result(id: &'static str, check: Check) -> CriterionResult {
    match check {
        Ok((passed, detail)) => CriterionResult { id, passed, detail },
        Err(e) => CriterionResult { id, passed: false, detail: format!("error: {e}") },
    }
}

/// Runs the criteria of a suite in order, calling `each` after every one.
pub fn run_suite(suite: Suite, mut each: impl FnMut(&CriterionResult)) -> Vec<CriterionResult> {
    let mut jobs: Vec<(&'static str, fn() -> Check)> = Vec::new();
    match suite {
        Suite::Exact => jobs.extend([("A1", a1 as fn() -> Check), ("A2", a2), ("A3", a3), ("A9", a9_exact)]),
        Suite::Asympt => jobs.extend([("A2", a2 as fn() -> Check), ("A3", a3), ("A9", a9_exact)]),
        Suite::Numeric => jobs.extend([
            ("A4", a4 as fn() -> Check),
            ("A5", a5),
            ("A6", a6),
            ("A7", a7),
            ("A8", a8),
            ("A9", a9_numeric),
            ("A10", a10),
        ]),
        Suite::All => jobs.extend([
            ("A1", a1 as fn() -> Check),
            ("A2", a2),
            ("A3", a3),
            ("A4", a4),
            ("A5", a5),
            ("A6", a6),
            ("A7", a7),
            ("A8", a8),
            ("A9", a9),
            ("A10", a10),
        ]),
    }
    jobs.into_iter()
        .map(|(id, f)| {
            let r = result(id, f());
            each(&r);
            r
        })
        .collect()
}

fn e<E: fmt::Display>(err: E) -> String {
    err.to_string()
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    rat(rng.gen_range(-9..=9), rng.gen_range(1..=7))
}

fn poly(terms: &[(Rational, u32, &[(u32, u32)])]) -> DiffPoly {
    DiffPoly::from_monomials(
        'q',
        terms.iter().map(|(c, s, f)| DiffMonomial { s_power: *s, factors: f.to_vec(), coeff: c.clone() }),
    )
}

/// The first three members, typed in from their displayed form.
fn displayed_member(n: usize, t: &[Rational], alpha: &Rational) -> DiffPoly {
    let first = |c: Rational| poly(&[(c.clone(), 0, &[(2, 1)]), (-c * int(2), 0, &[(0, 3)])]);
    let second = |c: Rational| {
        poly(&[
            (c.clone(), 0, &[(4, 1)]),
            (&c * int(-10), 0, &[(0, 1), (1, 2)]),
            (&c * int(-10), 0, &[(0, 2), (2, 1)]),
            (&c * int(6), 0, &[(0, 5)]),
        ])
    };
    let lhs = match n {
        1 => first(int(1)),
        2 => &second(int(1)) + &first(t[0].clone()),
        _ => {
            let p = poly(&[
                (int(1), 0, &[(6, 1)]),
                (int(-14), 0, &[(0, 2), (4, 1)]),
                (int(-56), 0, &[(0, 1), (1, 1), (3, 1)]),
                (int(-70), 0, &[(1, 2), (2, 1)]),
                (int(-42), 0, &[(0, 1), (2, 2)]),
                (int(70), 0, &[(0, 4), (2, 1)]),
                (int(140), 0, &[(0, 3), (1, 2)]),
                (int(-20), 0, &[(0, 7)]),
            ]);
            &(&p + &second(t[1].clone())) + &first(t[0].clone())
        }
    };
    &lhs + &poly(&[(int(-1), 1, &[(0, 1)]), (alpha.clone(), 0, &[])])
}

fn a1() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let mut cases = 0;
    for n in 1..=3 {
        for k in 0..4 {
            let taus: Vec<Rational> =
                if k == 0 { vec![int(1); n - 1] } else { (1..n).map(|_| random_rational(&mut rng)).collect() };
            let alpha = random_rational(&mut rng);
            let eq = build_hierarchy_eq(n, &taus, Some(alpha.clone())).map_err(e)?;
            if eq.lhs_minus_rhs != displayed_member(n, &taus, &alpha) {
                return Ok((false, format!("member n={n} differs for taus {taus:?}")));
            }
            cases += 1;
        }
    }
    let text = build_hierarchy_eq(2, &[int(1)], None).map_err(e)?.render_text(false);
    let want = "q'''' - 10*q*q'^2 - 10*q^2*q'' + 6*q^5 + 1*(q'' - 2*q^3) - s*q + alpha = 0";
    if text != want {
        return Ok((false, format!("rendering differs: {text}")));
    }
    Ok((true, format!("members n=1..3 equal the displays exactly ({cases} parameter sets)")))
}

/// The large gap expansions as displayed for `n = 1, 2, 3`.
fn displayed_largegap(n: usize, t: &[Rational]) -> AsymSeries {
    let nb = n as u32;
    let b = |c: Rational, k: i64| AlgElem::monomial(nb, c, k);
    let p = |r: &Rational, k: i32| r.pow(k);
    let terms = match n {
        1 => vec![(int(3), b(rat(-1, 12), 0))],
        2 => {
            let t1 = &t[0];
            vec![
                (rat(5, 2), b(rat(-2, 45), 2)),
                (int(2), b(-t1 / int(12), 0)),
                (rat(3, 2), b(-p(t1, 2) / int(54), 2)),
                (rat(1, 2), b(-p(t1, 4) / int(432), 2)),
            ]
        }
        _ => {
            let (t1, t2) = (&t[0], &t[1]);
            vec![
                (rat(7, 3), b(rat(-9, 560), 4)),
                (int(2), b(-t2 / int(20), 0)),
                (rat(5, 3), b(rat(3, 1000) * (int(10) * t1 - int(3) * p(t2, 2)), 2)),
                (rat(4, 3), b(rat(3, 2000) * t2 * (int(5) * t1 - p(t2, 2)), 4)),
                (
                    rat(2, 3),
                    b(rat(-1, 5000) * t2 * (int(50) * p(t1, 2) - int(25) * p(t2, 2) * t1 + int(3) * p(t2, 4)), 2),
                ),
                (
                    rat(1, 3),
                    b(
                        rat(1, 900000)
                            * (int(1000) * p(t1, 3) - int(1800) * p(t2, 2) * p(t1, 2) + int(630) * p(t2, 4) * t1
                                - int(63) * p(t2, 6)),
                        4,
                    ),
                ),
            ]
        }
    };
    AsymSeries::from_terms("|s|", nb, terms)
}

fn a2() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(202);
    let mut cases = 0;
    for n in 1..=3usize {
        let mut sets = vec![vec![int(1); n - 1]];
        for _ in 0..3 {
            sets.push((1..n).map(|_| random_rational(&mut rng)).collect());
        }
        for taus in sets {
            let got = largegap_series(n, &taus).map_err(e)?;
            let want = displayed_largegap(n, &taus);
            if !got.terms().eq(want.terms()) {
                return Ok((false, format!("n={n}, taus {taus:?}: {got}")));
            }
            let log = if n == 1 { rat(-1, 8) } else { rat(-1, 2) };
            if got.log_coeff != Some(log) {
                return Ok((false, format!("n={n}: log coefficient {:?}", got.log_coeff)));
            }
            cases += 1;
        }
    }
    Ok((true, format!("n=1..3 power coefficients equal the displays exactly ({cases} parameter sets)")))
}

fn a3() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(303);
    for n in 1..=4usize {
        for _ in 0..20 {
            let taus: Vec<Rational> = (1..n).map(|_| random_rational(&mut rng)).collect();
            let conv = theta2_convolution_check(n, &taus, 8).map_err(e)?;
            if !conv.passed {
                return Ok((false, format!("convolution fails at i={:?}, n={n}, taus {taus:?}", conv.first_failure)));
            }
            let null = null_coefficients_check(n, &taus, 3).map_err(e)?;
            if !null.passed {
                return Ok((false, format!("null coefficient at i={:?}, n={n}, taus {taus:?}", null.first_failure)));
            }
        }
    }
    Ok((true, "convolution (i<=8) and null coefficients (k<=3) hold for n=1..4, 20 parameter vectors each".into()))
}

fn grid(a: f64, b: f64, h: f64) -> Result<Vec<f64>, String> {
    uniform_grid(a, b, h).map_err(e)
}

fn profile(params: &ModelParams, a: f64, b: f64, h: f64, m: usize) -> Result<GapProfile, String> {
    profile_par(params, &grid(a, b, h)?, m, 6).map_err(e)
}

fn a4() -> Check {
    let start = Instant::now();
    let p = profile(&ModelParams::monomial(1), -4.0, 6.0, 0.05, 60)?;
    let defect = tw_identity_check(&p).map_err(e)?;
    let fast = start.elapsed().as_secs_f64() < 60.0;
    let passed = defect <= 1e-6 && fast;
    Ok((passed, format!("defect {defect:.2e} (tol 1e-6), runtime {} 60 s", if fast { "<" } else { ">=" })))
}

fn a5() -> Check {
    let zeta = zeta_prime_minus_one();
    let log_c = 2f64.ln() / 24.0 + zeta;
    if (log_c - log_c_airy()).abs() > 1e-14 {
        return Ok((false, "log C disagrees with its closed form".into()));
    }
    let s = -6.0_f64;
    let l = fredholm_logdet(&ModelParams::monomial(1), s, 80).map_err(e)?;
    let dev = (l.value + 216.0 / 12.0 + 6f64.ln() / 8.0 - log_c).abs();
    Ok((dev <= 1e-2, format!("|log F(-6) + 18 + log(6)/8 - log C| = {dev:.2e} (tol 1e-2), zeta'(-1) = {zeta:.15}")))
}

fn a6() -> Check {
    let mut passed = true;
    let mut parts = Vec::new();
    for tau in [0i64, 1] {
        let params = ModelParams::new(2, vec![tau as f64], 1.0).map_err(e)?;
        let p = profile(&params, -6.0, -3.0, 0.05, 100)?;
        let taus = [int(tau)];
        let shown = asympt_vs_numeric_with(&taus, &p, true, LogCoefficient::Displayed).map_err(e)?;
        let forced = asympt_vs_numeric_with(&taus, &p, true, LogCoefficient::Hierarchy).map_err(e)?;
        let (a, b) = (shown.spread.unwrap_or(f64::NAN), forced.spread.unwrap_or(f64::NAN));
        passed &= a <= 2e-2;
        parts.push(format!("tau={tau}: spread {a:.2e} with -1/2, {b:.2e} with -5/48"));
    }
    Ok((passed, format!("{} (tol 2e-2)", parts.join("; "))))
}

fn a7() -> Check {
    let mut passed = true;
    let mut parts = Vec::new();
    for (n, s, tol) in [(1usize, 4.0, 0.05), (2, 3.0, 0.10)] {
        let mut q = Vec::new();
        for rho in [1.0, 0.25] {
            let params = ModelParams::monomial(n).with_rho(rho);
            let p = profile(&params, s - 1.0, s + 1.0, 0.05, 60)?;
            let r = tail_check(&p, s, s).map_err(e)?;
            passed &= r.max_rel_err <= tol;
            q.push(r.points[0].q);
            parts.push(format!("n={n} rho={rho}: {:.2e}", r.max_rel_err));
        }
        let ratio = q[1] / q[0];
        passed &= (ratio / 0.5 - 1.0).abs() <= tol;
        parts.push(format!("n={n} q(1/4)/q(1) = {ratio:.4}"));
    }
    Ok((passed, format!("relative errors {} (tol 5% at s=4, 10% at s=3)", parts.join(", "))))
}

fn a8() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(808);
    let cases = [
        (ModelParams::monomial(1), -1.0),
        (ModelParams::monomial(2), -1.0),
        (ModelParams::new(2, vec![0.5], 1.0).map_err(e)?, -1.0),
    ];
    let mut passed = true;
    let (mut lo, mut hi, mut sym, mut diff) = (f64::INFINITY, f64::NEG_INFINITY, 0.0_f64, 0.0_f64);
    for (params, s) in cases {
        let ke = KernelEval::with_defaults(&params, -3.0).map_err(e)?;
        let r = dpp_hypotheses_check(&ke, s, 40).map_err(e)?;
        lo = lo.min(r.min_eig);
        hi = hi.max(r.max_eig);
        for _ in 0..4 {
            let x = rng.gen_range(-2.5..2.5);
            let y = rng.gen_range(-2.5..2.5);
            let kxy = kernel_factored(&ke, x, y).map_err(e)?;
            sym = sym.max((kxy - kernel_factored(&ke, y, x).map_err(e)?).abs());
            diff = diff.max((kxy - kernel_contour(&ke, x, y).map_err(e)?).abs());
        }
    }
    passed &= lo >= -1e-8 && hi <= 1.0 + 1e-8 && sym <= 1e-6 && diff <= 1e-6;
    Ok((
        passed,
        format!("eigenvalues in [{lo:.3e}, {hi:.12}], asymmetry {sym:.1e}, factored vs contour {diff:.1e} (tol 1e-6)"),
    ))
}

fn a9_exact() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(909);
    for n in 1..=3usize {
        for k in 0..3 {
            let taus: Vec<Rational> =
                if k == 0 { vec![int(1); n - 1] } else { (1..n).map(|_| random_rational(&mut rng)).collect() };
            let eq = build_hierarchy_eq(n, &taus, Some(int(0))).map_err(e)?;
            let q = q_series(n, &taus, 2 * n + 1).map_err(e)?;
            let r = series_residual(&eq, &q, 4 * n + 2).map_err(e)?;
            if let Some((ex, c)) = r.iter().find(|(_, c)| !c.is_zero()) {
                return Ok((false, format!("n={n}: coefficient of |s|^({ex}) is {c}")));
            }
        }
    }
    Ok((true, "q series residual vanishes exactly through the theta orders for n=1..3".into()))
}

fn a9_numeric() -> Check {
    let p = profile(&ModelParams::monomial(1), -4.0, 3.0, 0.05, 60)?;
    let eq = build_hierarchy_eq(1, &[], Some(int(0))).map_err(e)?;
    let r = eval_residual(&eq, p.s[0], p.step(), &p.q, 6).map_err(e)?;
    let max =
        r.iter().filter(|(s, _)| (-3.0 - 1e-9..=2.0 + 1e-9).contains(s)).map(|(_, v)| v.abs()).fold(0.0, f64::max);
    Ok((max <= 1e-3, format!("max residual of extracted q on [-3, 2] {max:.2e} (tol 1e-3)")))
}

fn a9() -> Check {
    let (ok1, d1) = a9_exact()?;
    let (ok2, d2) = a9_numeric()?;
    Ok((ok1 && ok2, format!("{d1}; {d2}")))
}

fn a10() -> Check {
    let mut parts = Vec::new();
    let mut passed = true;
    for (n, half, tol) in [(1usize, 5.0, 1e-6), (2, 3.0, 1e-5)] {
        let params = ModelParams::monomial(n);
        let xs = grid(-half, half, 0.25)?;
        let r = ode_residual_ai(&params, &xs, &ContourSpec::for_degree(n)).map_err(e)?;
        let max = r.iter().map(|v| v.abs()).fold(0.0, f64::max);
        passed &= max <= tol;
        parts.push(format!("n={n}: {max:.2e} (tol {tol:.0e})"));
    }
    Ok((passed, format!("ODE residuals {}", parts.join(", "))))
}

/// `true` when the failing criteria are exactly the known failures.
pub fn matches_known(results: &[CriterionResult]) -> bool {
    let failed: Vec<&str> = results.iter().filter(|r| !r.passed).map(|r| r.id).collect();
    let expected: Vec<&str> = KNOWN_FAILURES.iter().copied().filter(|k| results.iter().any(|r| r.id == *k)).collect();
    failed == expected
}
