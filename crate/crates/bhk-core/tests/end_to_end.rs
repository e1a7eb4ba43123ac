//! Module chains run the way a caller would use them.

use bhk_core::algebra::{q, Poly, Rational};
use bhk_core::auxode::{
    build_auxiliary, chandrasekhar_coeffs, solve_low_degree, to_heun_form, verify_chandrasekhar,
};
use bhk_core::evidence::{det_sequence, scan, ScanConfig, ScanFamily};
use bhk_core::hautot::{extended_expansion, hautot_sufficiency_check, Basis};
use bhk_core::kovacic::{enumerate_families_n1, family_by_label, liouvillian_form, retain_families};
use bhk_core::master::{self, ModeSpec, PerturbationKind};
use bhk_core::Error;

#[test]
fn g8_solution_becomes_a_master_equation_solution() {
    for l in 2..=5 {
        let mode = ModeSpec::gravitational(l, Rational::one()).unwrap();
        let g8 = family_by_label(&mode, "G8").unwrap();
        let sol = solve_low_degree(&g8, l, 1).unwrap().remove(0);
        let at = mode.with_s(sol.s.clone());
        let form = liouvillian_form(&g8, &at, &sol.poly).unwrap();
        assert!(form.master_residual().is_zero(), "l = {l}");
        // sqrt(r/(r-2)) shifts the exponents by one half
        assert_eq!(&form.master_form.r_power - &form.normal_form.r_power, q(1, 2));
    }
}

#[test]
fn non_solutions_are_rejected() {
    let mode = ModeSpec::gravitational(2, q(4, 1)).unwrap();
    let g7 = family_by_label(&mode, "G7").unwrap();
    let bad = chandrasekhar_coeffs(2).unwrap().shift(&q(-2, 1)) + Poly::one();
    assert!(matches!(liouvillian_form(&g7, &mode, &bad), Err(Error::NotASolution { .. })));
    assert!(matches!(liouvillian_form(&g7, &mode, &Poly::zero()), Err(Error::NotASolution { .. })));
}

#[test]
fn retained_family_reaches_hautot_and_expansions() {
    for l in 2..=4 {
        let s = master::special_frequency(l).unwrap();
        let mode = ModeSpec::gravitational(l, s.clone()).unwrap();
        let retained: Vec<String> = retain_families(&enumerate_families_n1(&mode).unwrap(), l)
            .unwrap()
            .into_iter()
            .filter(|r| r.retained())
            .map(|r| r.family.label)
            .collect();
        assert!(retained.contains(&"G7".to_string()));

        let heun = to_heun_form(&build_auxiliary(&family_by_label(&mode, "G7").unwrap(), &mode).unwrap()).unwrap();
        let n = (q(2, 1) * &s + q(1, 1)).to_i64().unwrap() as u64;
        assert!(hautot_sufficiency_check(&heun, n).unwrap().satisfied);

        let rec = verify_chandrasekhar(l).unwrap();
        for basis in [Basis::Kummer, Basis::Laguerre] {
            let exp = extended_expansion(l, basis).unwrap();
            assert!(exp.passed());
            assert_eq!(exp.target, rec.poly_w, "{basis} l = {l}");
        }
    }
}

#[test]
fn off_frequency_g7_has_no_polynomial_of_the_predicted_degree() {
    let s = q(9, 2);
    let mode = ModeSpec::gravitational(2, s).unwrap();
    let ode = build_auxiliary(&family_by_label(&mode, "G7").unwrap(), &mode).unwrap();
    assert!(bhk_core::auxode::brute_force_polynomial_solutions(&ode, 10).is_empty());
}

#[test]
fn scan_is_deterministic_and_matches_sequences() {
    let config = ScanConfig::new(vec![ScanFamily::E3, ScanFamily::E7], 3, 30);
    let a = scan(&config).unwrap();
    let b = scan(&config).unwrap();
    assert_eq!(a, b);
    assert!(a.passed());
    for cell in &a.cells {
        let seq = det_sequence(cell.family, cell.l, cell.d);
        assert_eq!(seq.final_sign_ok, cell.sign_ok);
        assert_eq!(seq.s, cell.s);
    }
}

#[test]
fn mode_validation() {
    assert!(ModeSpec::new(PerturbationKind::Gravitational, 1, q(1, 1)).is_err());
    assert!(ModeSpec::new(PerturbationKind::Electromagnetic, 0, q(1, 1)).is_err());
    assert!(ModeSpec::new(PerturbationKind::Scalar, 0, q(1, 1)).is_ok());
    assert!(master::special_frequency(1).is_err());
}
