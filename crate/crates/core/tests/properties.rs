use std::sync::OnceLock;

use gapprob_core::exactalg::rational::{format_rational, int, parse_rational, rat};
use gapprob_core::exactalg::{frac_power_expand, residue_at_infinity, AlgElem, AlgPoly, LaurentSeries, Rational};
use gapprob_core::fredholm::{logdet_with, NystromSystem};
use gapprob_core::hierarchy::{lenard_all, substitute, DiffMonomial, DiffPoly};
use gapprob_core::kernel::{correlation_minor, kernel_factored, DomainMap, KernelEval};
use gapprob_core::specfun::ModelParams;
use proptest::prelude::*;

fn small_rational() -> impl Strategy<Value = Rational> {
    (-12i64..=12, 1i64..=9).prop_map(|(a, b)| rat(a, b))
}

fn alg_elem(n: u32) -> impl Strategy<Value = AlgElem> {
    proptest::collection::vec(small_rational(), 2 * n as usize)
        .prop_map(move |c| AlgElem::from_coeffs(n, c).expect("length matches"))
}

fn triple() -> impl Strategy<Value = (AlgElem, AlgElem, AlgElem)> {
    (1u32..=3).prop_flat_map(|n| (alg_elem(n), alg_elem(n), alg_elem(n)))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn field_axioms((a, b, c) in triple()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        if !a.is_zero() {
            let inv = a.inverse().unwrap();
            prop_assert_eq!(&a * &inv, AlgElem::one(a.n()));
        }
        let x = a.to_f64() * b.to_f64();
        prop_assert!(((&a * &b).to_f64() - x).abs() <= 1e-9 * (1.0 + x.abs()));
    }

    #[test]
    fn rational_text_roundtrip(r in small_rational()) {
        prop_assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
    }

    #[test]
    fn complementary_powers_multiply_back(
        root in 1i64..=2,
        lower in proptest::collection::vec(-6i64..=6, 1..4),
        (num, den) in (2i64..=5).prop_flat_map(|d| (1..d, Just(d))),
    ) {
        // lead^r must lie in the field: take a perfect power
        let mut coeffs: Vec<Rational> = lower.iter().map(|c| int(*c)).collect();
        coeffs.push(int(root.pow(den as u32)));
        let deg = coeffs.len() as i64 - 1;
        let p = AlgPoly::from_rationals(2, &coeffs);
        let r = rat(num, den);
        let one_minus = int(1) - &r;
        let a = frac_power_expand(&p, &r, -4).unwrap();
        let b = frac_power_expand(&p, &one_minus, -4).unwrap();
        let prod: LaurentSeries = a.mul(&b).unwrap();
        let ram = prod.ramification() as i64;
        prop_assert!(prod.order() <= 0);
        for (e, c) in prod.terms() {
            if e % ram == 0 && (0..=deg).contains(&(e / ram)) {
                prop_assert_eq!(c, &AlgElem::from_rational(2, coeffs[(e / ram) as usize].clone()));
            } else {
                prop_assert!(c.is_zero(), "exponent {}/{}", e, ram);
            }
        }
        for (k, ck) in coeffs.iter().enumerate() {
            let got = prod.coeff(&int(k as i64)).unwrap();
            prop_assert_eq!(got, AlgElem::from_rational(2, ck.clone()));
        }
    }

    #[test]
    fn residue_is_linear(
        a in small_rational(),
        b in small_rational(),
        p1 in proptest::collection::vec(small_rational(), 4),
        p2 in proptest::collection::vec(small_rational(), 4),
    ) {
        let mk = |c: &[Rational]| {
            let mut s = LaurentSeries::new("z", 2, 2, -6);
            for (k, ck) in c.iter().enumerate() {
                s.insert(-2 * k as i64 + 1, AlgElem::from_rational(2, ck.clone()));
                s.insert(-2 * k as i64, AlgElem::from_rational(2, ck.clone() * int(3)));
            }
            s
        };
        let (s1, s2) = (mk(&p1), mk(&p2));
        let mut comb = LaurentSeries::new("z", 2, 2, -6);
        for e in -6..=1 {
            let c1 = s1.coeff(&rat(e, 2)).unwrap().scale(&a);
            let c2 = s2.coeff(&rat(e, 2)).unwrap().scale(&b);
            comb.insert(e, &c1 + &c2);
        }
        let lhs = residue_at_infinity(&comb).unwrap();
        let rhs = &residue_at_infinity(&s1).unwrap().scale(&a) + &residue_at_infinity(&s2).unwrap().scale(&b);
        prop_assert_eq!(lhs, rhs);
    }
}

fn diffpoly(terms: &[(i64, u32, Vec<(u32, u32)>)]) -> DiffPoly {
    DiffPoly::from_monomials(
        'q',
        terms.iter().map(|(c, s, f)| DiffMonomial { s_power: *s, factors: f.clone(), coeff: int(*c) }),
    )
}

fn monomial_strategy() -> impl Strategy<Value = (i64, u32, Vec<(u32, u32)>)> {
    (-5i64..=5, 0u32..=1, proptest::collection::btree_map(0u32..=2, 1u32..=2, 0..=2))
        .prop_map(|(c, s, f)| (c, s, f.into_iter().collect()))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn substitution_commutes_with_total_derivative(
        p in proptest::collection::vec(monomial_strategy(), 1..4),
        e in proptest::collection::vec(monomial_strategy(), 1..3),
    ) {
        let p = diffpoly(&p).with_var('f');
        let e = diffpoly(&e);
        prop_assert_eq!(substitute(&p, &e).total_derivative(), substitute(&p.total_derivative(), &e));
    }

    #[test]
    fn lenard_recursion_closes(j in 0usize..5) {
        let l = lenard_all(j + 1).unwrap();
        let f = |k| DiffPoly::derivative_of_var('f', k);
        let rhs = &(&l[j].nth_derivative(3) + &(&f(0) * &l[j].total_derivative()).scale(&int(4)))
            + &(&f(1) * &l[j]).scale(&int(2));
        prop_assert_eq!(l[j + 1].total_derivative(), rhs);
        // L_j has no constant term for j >= 1
        if j >= 1 {
            prop_assert!(l[j].coeff(0, &[]) == int(0));
        }
    }
}

fn airy() -> &'static KernelEval {
    static KE: OnceLock<KernelEval> = OnceLock::new();
    KE.get_or_init(|| KernelEval::with_defaults(&ModelParams::monomial(1), -5.0).unwrap())
}

fn deformed() -> &'static KernelEval {
    static KE: OnceLock<KernelEval> = OnceLock::new();
    KE.get_or_init(|| KernelEval::with_defaults(&ModelParams::new(2, vec![0.7], 1.0).unwrap(), -4.0).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    #[test]
    fn kernel_is_symmetric(x in -4.0f64..4.0, y in -4.0f64..4.0, which in 0usize..2) {
        let ke = if which == 0 { airy() } else { deformed() };
        prop_assert_eq!(kernel_factored(ke, x, y).unwrap(), kernel_factored(ke, y, x).unwrap());
    }

    #[test]
    fn correlation_minors_are_nonnegative(
        mut xs in proptest::collection::vec(-3.5f64..3.5, 1..=4),
        which in 0usize..2,
    ) {
        xs.sort_by(f64::total_cmp);
        let ke = if which == 0 { airy() } else { deformed() };
        let d = correlation_minor(ke, &xs).unwrap();
        prop_assert!(d >= -1e-6, "det = {}", d);
    }

    #[test]
    fn thinning_increases_the_gap_probability(s in -3.0f64..2.0, r1 in 0.0f64..1.0, r2 in 0.0f64..1.0) {
        let (lo, hi) = if r1 <= r2 { (r1, r2) } else { (r2, r1) };
        let sys = NystromSystem::assemble(airy(), s, 30, DomainMap::default()).unwrap();
        prop_assert!(sys.logdet(lo).unwrap() >= sys.logdet(hi).unwrap());
        let eig = sys.eigenvalues().unwrap();
        prop_assert!(eig.iter().all(|l| *l >= -1e-6 && *l <= 1.0 + 1e-6));
    }
}

#[test]
fn nystrom_converges_quickly() {
    let ke = airy();
    let errs: Vec<f64> =
        [10usize, 16, 24].iter().map(|&m| logdet_with(ke, -3.0, m, DomainMap::default()).unwrap().err).collect();
    assert!(errs[0] > errs[1] && errs[1] > errs[2], "{errs:?}");
    // faster than any fixed power: the ratio of successive errors grows
    assert!(errs[2] < 1e-6, "{errs:?}");
}
