use gapprob_core::asympt::{
    g1_series, g_coeffs, largegap_series, null_coefficients_check, q_series, theta, theta2, theta2_convolution_check,
    zeta0_series, zeta0_solve, AsymSeries,
};
use gapprob_core::exactalg::rational::{binomial, int, rat};
use gapprob_core::exactalg::{residue_of_power, AlgElem, AlgPoly, Rational};
use gapprob_core::hierarchy::{build_hierarchy_eq, series_residual, DiffMonomial, DiffPoly};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn poly(terms: &[(Rational, u32, &[(u32, u32)])]) -> DiffPoly {
    DiffPoly::from_monomials(
        'q',
        terms.iter().map(|(c, s, f)| DiffMonomial { s_power: *s, factors: f.to_vec(), coeff: c.clone() }),
    )
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    rat(rng.gen_range(-9..=9), rng.gen_range(1..=7))
}

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
        3 => {
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
        _ => unreachable!(),
    };
    &lhs + &poly(&[(int(-1), 1, &[(0, 1)]), (alpha.clone(), 0, &[])])
}

#[test]
fn hierarchy_members_match_the_displayed_equations() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in 1..=3 {
        for _ in 0..4 {
            let taus: Vec<Rational> = (1..n).map(|_| random_rational(&mut rng)).collect();
            let alpha = random_rational(&mut rng);
            let eq = build_hierarchy_eq(n, &taus, Some(alpha.clone())).unwrap();
            assert_eq!(eq.lhs_minus_rhs, displayed_member(n, &taus, &alpha), "n = {n}");
            assert_eq!(eq.order(), 2 * n as u32);
            assert_eq!(eq.lhs_minus_rhs.coeff(0, &[(2 * n as u32, 1)]), int(1));
        }
    }
}

fn expected_largegap(n: usize, t: &[Rational]) -> AsymSeries {
    let nb = n as u32;
    let b = |c: Rational, k: i64| AlgElem::monomial(nb, c, k);
    let terms = match n {
        1 => vec![(int(3), b(rat(-1, 12), 0))],
        2 => {
            let t1 = &t[0];
            let t2 = t1 * t1;
            vec![
                (rat(5, 2), b(rat(-2, 45), 2)),
                (int(2), b(-t1 / int(12), 0)),
                (rat(3, 2), b(-&t2 / int(54), 2)),
                (rat(1, 2), b(-&t2 * &t2 / int(432), 2)),
            ]
        }
        3 => {
            let (t1, t2) = (&t[0], &t[1]);
            let p = |r: &Rational, k: u32| num_traits::pow(r.clone(), k as usize);
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
        _ => unreachable!(),
    };
    AsymSeries::from_terms("|s|", nb, terms)
}

#[test]
fn large_gap_series_match_the_displayed_expansions() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for n in 1..=3usize {
        let mut tau_sets = vec![vec![int(1); n - 1]];
        for _ in 0..3 {
            tau_sets.push((1..n).map(|_| random_rational(&mut rng)).collect());
        }
        for taus in tau_sets {
            let got = largegap_series(n, &taus).unwrap();
            let want = expected_largegap(n, &taus);
            let g: Vec<_> = got.terms().collect();
            let w: Vec<_> = want.terms().collect();
            assert_eq!(g, w, "n = {n}, taus = {taus:?}");
            assert_eq!(got.log_coeff, Some(if n == 1 { rat(-1, 8) } else { rat(-1, 2) }));
        }
    }
}

#[test]
fn monomial_leading_coefficient() {
    for n in 1..=4usize {
        let taus = vec![int(0); n - 1];
        let s = largegap_series(n, &taus).unwrap();
        let (e, c) = s.terms().next().unwrap();
        assert_eq!(*e, rat(2 * n as i64 + 1, n as i64));
        // -n^2/((n+1)(2n+1)) binom(2n,n)^(-1/n) = ... * beta^-2
        let want = AlgElem::monomial(n as u32, rat(-((n * n) as i64), ((n + 1) * (2 * n + 1)) as i64), -2);
        assert_eq!(*c, want);
        // beta^(-2n) = 1 / binom(2n, n)
        let m = AlgElem::from_rational(n as u32, Rational::from_integer(binomial(2 * n as u64, n as u64)));
        assert_eq!(&AlgElem::monomial(n as u32, int(1), -2 * n as i64) * &m, AlgElem::one(n as u32));
    }
}

#[test]
fn theta_identities_for_random_parameters() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for n in 1..=4usize {
        for _ in 0..3 {
            let taus: Vec<Rational> = (1..n).map(|_| random_rational(&mut rng)).collect();
            assert!(theta2_convolution_check(n, &taus, 8).unwrap().passed, "n={n} {taus:?}");
            assert!(null_coefficients_check(n, &taus, 3).unwrap().passed);
        }
    }
}

#[test]
fn even_residues_vanish() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for n in 1..=3usize {
        let taus: Vec<Rational> = (1..n).map(|_| random_rational(&mut rng)).collect();
        let lam = gapprob_core::asympt::lambda_poly(n, &taus).unwrap();
        for i in 1..6 {
            let r = residue_of_power(&lam, &rat(2 * i, 2 * n as i64)).unwrap();
            assert!(r.is_zero());
        }
    }
}

#[test]
fn q_series_solves_the_hierarchy_through_the_theta_orders() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for n in 1..=3usize {
        for _ in 0..2 {
            let taus: Vec<Rational> = (1..n).map(|_| random_rational(&mut rng)).collect();
            let eq = build_hierarchy_eq(n, &taus, Some(int(0))).unwrap();
            let q = q_series(n, &taus, 2 * n + 1).unwrap();
            let r = series_residual(&eq, &q, 4 * n + 2).unwrap();
            assert_eq!(r[0].0, rat(2 * n as i64 + 1, 2 * n as i64));
            for (e, c) in r {
                assert!(c.is_zero(), "n={n} exponent {e}: {c}");
            }
        }
    }
}

#[test]
fn hierarchy_forces_the_next_q_coefficient() {
    // the |s|^(-2-1/(2n)) coefficient forced by the equation is
    // theta_(2n+1) - (2n+1)/(48n) beta; for n = 1 this is c/(2 theta_0) with c = -1/8
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for n in 1..=3usize {
        let taus: Vec<Rational> = (1..n).map(|_| random_rational(&mut rng)).collect();
        let eq = build_hierarchy_eq(n, &taus, Some(int(0))).unwrap();
        let mut q = q_series(n, &taus, 2 * n).unwrap();
        let forced = &theta(n, &taus, 2 * n + 1).unwrap()
            + &AlgElem::monomial(n as u32, rat(-(2 * n as i64 + 1), 48 * n as i64), 1);
        q.add_term(rat(-4 * n as i64 - 1, 2 * n as i64), forced);
        let r = series_residual(&eq, &q, 4 * n + 4).unwrap();
        assert!(r.iter().all(|(_, c)| c.is_zero()), "n={n}");
    }
    let q1 = q_series(1, &[], 3).unwrap();
    assert_eq!(q1.coeff(&rat(-5, 2)), AlgElem::monomial(1, rat(-3, 48), 1));
}

#[test]
fn zeta0_root_agrees_with_its_series() {
    let s = -1.0e6;
    let series = zeta0_series(2, &[int(1)], 6).unwrap();
    let root = zeta0_solve(2, &[1.0], s, 1e-15).unwrap();
    assert!((series.eval(-s) - root).abs() < 1e-8);
    // error of the depth-d truncation scales like |s|^(-(d+1)/n)
    let taus = [rat(1, 2), rat(-1, 3)];
    let series = zeta0_series(3, &taus, 2).unwrap();
    let err = |t: f64| (series.eval(t) - zeta0_solve(3, &[0.5, -1.0 / 3.0], -t, 1e-15).unwrap()).abs();
    let ratio = err(1.0e4) / err(8.0e4);
    assert!((ratio - 8.0).abs() < 0.5, "ratio {ratio}");
}

#[test]
fn g1_numeric_matches_series() {
    let s = -1.0e6_f64;
    let g = g_coeffs(2, &[1.0], s).unwrap();
    let series = g1_series(2, &[int(1)], 4).unwrap();
    let approx = series.eval_without_constant(-s);
    // next omitted power is |s|^(-1/4) (the kappa slot) and |s|^(-3/4)
    assert!((g.g1 - approx).abs() < 10.0 * libm::pow(-s, -0.25), "{} vs {}", g.g1, approx);
    let leading = theta2(2, &[int(1)], 0).unwrap();
    assert!(leading == AlgElem::monomial(2, rat(1, 6), 2));
}

#[test]
fn residue_examples_match_binomial_series() {
    let p = AlgPoly::from_rationals(2, &[int(0), int(-2), int(6)]);
    assert_eq!(residue_of_power(&p, &rat(1, 2)).unwrap(), AlgElem::monomial(2, rat(1, 72), 2));
    assert_eq!(theta(2, &[int(1)], 1).unwrap(), AlgElem::monomial(2, rat(1, 12), 1));
}
