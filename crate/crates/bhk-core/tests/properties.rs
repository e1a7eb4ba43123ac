use bhk_core::algebra::{q, Matrix, Poly, Rational};
use bhk_core::auxode::{
    brute_force_polynomial_solutions, build_auxiliary, chandrasekhar_coeffs, solve_low_degree, AuxiliaryODE,
};
use bhk_core::evidence::{det_sequence, recurrence_block_determinant, ScanFamily};
use bhk_core::hautot::{
    assemble, basis_terms, closed_form_coefficients, det_a, determinant_equality_check, kummer_poly, laguerre_poly,
    Basis,
};
use bhk_core::kovacic::{
    enumerate_families_n1, enumerate_families_n2, family_by_label, retain_families, theta, Affine,
};
use bhk_core::master::{self, ModeSpec, PerturbationKind};
use bhk_core::Error;
use num_integer::Integer;
use num_traits::{One, Signed};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-60i64..=60, 1i64..=12).prop_map(|(n, d)| q(n, d))
}

fn nonzero_rational() -> impl Strategy<Value = Rational> {
    rational().prop_filter("nonzero", |r| !r.is_zero())
}

fn poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec(rational(), 0..6).prop_map(Poly::from_coeffs)
}

fn kind() -> impl Strategy<Value = PerturbationKind> {
    prop_oneof![
        Just(PerturbationKind::Gravitational),
        Just(PerturbationKind::Electromagnetic),
        Just(PerturbationKind::Scalar),
    ]
}

fn mode() -> impl Strategy<Value = ModeSpec> {
    (kind(), 0u32..8, rational()).prop_map(|(k, l, s)| ModeSpec::new(k, l.max(k.min_l()), s).unwrap())
}

fn reduced(r: &Rational) -> bool {
    r.denom().is_positive() && r.numer().gcd(r.denom()).is_one()
}

fn g7(l: u32, s: Rational) -> AuxiliaryODE {
    let mode = ModeSpec::gravitational(l, s).unwrap();
    build_auxiliary(&family_by_label(&mode, "G7").unwrap(), &mode).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rationals_stay_reduced(a in rational(), b in nonzero_rational()) {
        for r in [&a + &b, &a - &b, &a * &b, &a / &b, Rational::new(a.numer() * 6, b.numer() * 4)] {
            prop_assert!(reduced(&r));
        }
    }

    #[test]
    fn ring_laws(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &a * &b + &a * &c);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!((&a * &b).derivative(), a.derivative() * &b + &a * b.derivative());
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn products_and_powers_evaluate_pointwise(a in poly(), b in poly(), x in rational(), e in 0u32..6) {
        prop_assert_eq!((&a * &b).eval(&x), a.eval(&x) * b.eval(&x));
        prop_assert_eq!(a.pow(e).eval(&x), a.eval(&x).pow(e as i32));
    }

    #[test]
    fn shift_inverse_and_pointwise(p in poly(), c in rational(), x in rational()) {
        prop_assert_eq!(p.shift(&c).shift(&-&c), p.clone());
        prop_assert_eq!(p.shift(&c).eval(&x), p.eval(&(&x + &c)));
    }

    #[test]
    fn compose_linear_pointwise(p in poly(), a in nonzero_rational(), b in rational(), x in rational()) {
        prop_assert_eq!(p.compose_linear(&a, &b).eval(&x), p.eval(&(&a * &x + &b)));
    }

    #[test]
    fn nullspace_vectors_are_annihilated(rows in prop::collection::vec(prop::collection::vec(-5i64..=5, 4), 1..4)) {
        let m = Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| q(v, 1)).collect()).collect());
        let null = m.nullspace();
        prop_assert_eq!(null.len() + m.rank(), 4);
        for v in null {
            prop_assert!(m.mul_vec(&v).iter().all(Rational::is_zero));
        }
    }

    #[test]
    fn partial_fractions_recombine(m in mode()) {
        let (num, _) = master::build_nu(&m);
        prop_assert_eq!(master::partial_fractions(&m).recombine(), num);
    }

    #[test]
    fn nu_is_even_in_s(m in mode()) {
        let flipped = m.with_s(-m.s.clone());
        prop_assert_eq!(master::build_nu(&m), master::build_nu(&flipped));
    }

    #[test]
    fn special_frequency_is_even(l in 2u32..400) {
        let s = master::special_frequency(l).unwrap();
        prop_assert!(s.is_integer() && s.is_positive());
        prop_assert_eq!(s.to_i64().unwrap() % 2, 0);
    }

    #[test]
    fn family_degree_law(k in kind(), l in 0u32..8) {
        let m = ModeSpec::new(k, l.max(k.min_l()), Rational::one()).unwrap();
        for f in enumerate_families_n1(&m).unwrap() {
            let sum = &(&f.e0 + &f.e2) + &f.einf;
            prop_assert_eq!(&f.degree, &(&Affine::constant(Rational::one()) - &sum));
        }
    }

    #[test]
    fn retention_drops_negative_degrees(k in kind(), l in 0u32..6) {
        let l = l.max(k.min_l());
        let m = ModeSpec::new(k, l, Rational::one()).unwrap();
        for rec in retain_families(&enumerate_families_n1(&m).unwrap(), l).unwrap() {
            let d = &rec.family.degree;
            let never_nonnegative = d.constant.is_negative() && !d.slope.is_positive();
            prop_assert!(!(rec.retained() && never_nonnegative), "{}", rec.family.label);
            if rec.retained() {
                let t = theta(&rec.family).unwrap();
                let half = q(rec.family.sign_inf as i64, 2);
                prop_assert_eq!(&t.c0, &rec.family.e0);
                prop_assert_eq!(&t.c2, &rec.family.e2);
                prop_assert_eq!(t.cinf, Affine::s().scale(&half));
            }
        }
    }

    #[test]
    fn second_order_branch_is_empty(k in kind(), l in 0u32..8) {
        let m = ModeSpec::new(k, l.max(k.min_l()), Rational::one()).unwrap();
        prop_assert!(enumerate_families_n2(&m).unwrap().retained().is_empty());
    }

    #[test]
    fn frames_commute_with_the_operator(l in 2u32..5, s in nonzero_rational(), p in poly()) {
        let ode = g7(l, s.clone());
        let image = ode.apply(&p);
        let w = ode.to_w().unwrap();
        prop_assert_eq!(w.apply(&p.shift(&q(2, 1))), image.shift(&q(2, 1)));
        let z = ode.to_z().unwrap();
        prop_assert_eq!(z.apply(&p.compose_linear(&q(2, 1), &q(0, 1))), image.compose_linear(&q(2, 1), &q(0, 1)));
        // w = -u/s: coefficients in u are those in w over (-s)^n
        let pw = p.shift(&q(2, 1));
        let back = -s.recip();
        let pu = pw.compose_linear(&back, &q(0, 1));
        for (n, c) in pu.coeffs().iter().enumerate() {
            prop_assert_eq!(c, &(pw.coeff(n) / (-&s).pow(n as i32)));
        }
        let u = ode.to_u().unwrap();
        prop_assert_eq!(u.apply(&pu), w.apply(&pw).compose_linear(&back, &q(0, 1)));
    }

    #[test]
    fn indicial_data(l in 2u32..6, s in nonzero_rational()) {
        let ode = g7(l, s.clone());
        let mut at0 = ode.indicial(&q(0, 1)).rational_roots().unwrap();
        at0.sort();
        prop_assert_eq!(at0, vec![q(0, 1), q(4, 1)]);
        let mut at2 = ode.indicial(&q(2, 1)).rational_roots().unwrap();
        at2.sort();
        let mut want = vec![q(0, 1), q(2, 1) * &s];
        want.sort();
        want.dedup();
        prop_assert_eq!(at2, want);
        prop_assert_eq!(ode.degree_at_infinity(), Some(q(2, 1) * &s + q(1, 1)));
        let sm = ModeSpec::new(PerturbationKind::Scalar, l, s.clone()).unwrap();
        let s3 = build_auxiliary(&family_by_label(&sm, "S3").unwrap(), &sm).unwrap();
        prop_assert_eq!(s3.degree_at_infinity(), Some(q(2, 1) * &s - q(1, 1)));
    }

    #[test]
    fn kummer_laguerre_bridge(n in 0u64..12, alpha in rational()) {
        let lag = laguerre_poly(n, &alpha);
        match kummer_poly(n, &(&alpha + q(1, 1))) {
            Ok(k) => {
                let mut binom = Rational::one();
                for i in 0..n {
                    binom = binom * (&alpha + Rational::from(n - i)) / Rational::from(i + 1);
                }
                prop_assert_eq!(lag.poly, k.poly.scale(&binom));
            }
            Err(e) => prop_assert!(matches!(e, Error::Obstruction { .. }), "unexpected error"),
        }
    }

    #[test]
    fn expansion_is_homogeneous(l in 2u32..4, c in nonzero_rational(), laguerre in any::<bool>()) {
        let basis = if laguerre { Basis::Laguerre } else { Basis::Kummer };
        let terms = basis_terms(l, basis).unwrap();
        let coeffs = closed_form_coefficients(l, basis).unwrap();
        let scaled: Vec<Rational> = coeffs.iter().map(|a| a * &c).collect();
        prop_assert_eq!(assemble(&terms, &scaled), assemble(&terms, &coeffs).scale(&c));
    }

    #[test]
    fn determinant_blocks_agree(j in 0usize..5, seed in any::<u64>()) {
        let report = determinant_equality_check(j, 1, seed);
        prop_assert!(report.passed(), "{:?}", report.witness());
    }

    #[test]
    fn recurrence_fidelity(fi in 0usize..3, l in 2u32..6, d in 0u64..16) {
        let f = ScanFamily::ALL[fi];
        let seq = det_sequence(f, l, d);
        for n in 1..=(d as usize + 1).min(12) {
            prop_assert_eq!(&recurrence_block_determinant(f, l, d, n).unwrap(), &seq.values[n]);
        }
    }
}

#[test]
fn det_a_is_even_with_special_roots() {
    for l in 2..=10 {
        let det = det_a(l);
        let s = master::special_frequency(l).unwrap();
        assert_eq!(det.degree().unwrap() % 2, 0, "l = {l}");
        assert!(det.eval(&s).is_zero() && det.eval(&-&s).is_zero());
    }
}

#[test]
fn naive_sum_obstructs_exactly_at_the_first_two_terms() {
    for two_s in 3..=12u64 {
        let low = Rational::one() - Rational::from(two_s);
        for k in 0..=3u64 {
            let obstructed = matches!(kummer_poly(two_s + 1 - k, &low), Err(Error::Obstruction { .. }));
            assert_eq!(obstructed, k <= 1, "2s = {two_s}, k = {k}");
        }
    }
}

#[test]
fn oracle_contains_closed_forms() {
    for l in 2..=3 {
        let s = master::special_frequency(l).unwrap();
        let ode = g7(l, s.clone());
        let degree = (q(2, 1) * &s + q(1, 1)).to_i64().unwrap() as usize;
        let null = brute_force_polynomial_solutions(&ode, degree);
        assert_eq!(null.len(), 1);
        assert_eq!(null[0].monic(), chandrasekhar_coeffs(l).unwrap().shift(&q(-2, 1)).monic());

        let mode = ModeSpec::gravitational(l, s.clone()).unwrap();
        let g8 = family_by_label(&mode, "G8").unwrap();
        let ode = build_auxiliary(&g8, &mode).unwrap();
        let null = brute_force_polynomial_solutions(&ode, 1);
        let sol = solve_low_degree(&g8, l, 1).unwrap();
        assert_eq!(null.len(), 1);
        assert_eq!(null[0].monic(), sol[0].poly);
    }
}

#[test]
fn g3_at_the_special_frequency_has_no_vanishing_determinant() {
    for l in 2..=4 {
        let s = master::special_frequency(l).unwrap();
        let d = (q(2, 1) * &s - q(3, 1)).to_i64().unwrap() as u64;
        let seq = det_sequence(ScanFamily::G3, l, d);
        assert_eq!(seq.s, s);
        assert!(seq.values.iter().all(|v| !v.is_zero()));
        assert!(seq.final_sign_ok);
    }
}
