//! Truncated Kummer functions, associated Laguerre polynomials, Hautot's
//! determinant conditions and the finite expansions of the special
//! polynomial in both bases.

mod conditions;
mod expansion;
mod identities;

use serde::Serialize;

pub use conditions::{
    det_a, determinant_equality_check, hautot_sufficiency_check, tridiag_block, tridiag_coeffs, EqualityReport,
    EqualityTrial, SufficiencyVerdict, TridiagParams, TridiagRow, TridiagSource,
};
pub use expansion::{
    assemble, basis_terms, closed_form_coefficients, extended_expansion, Basis, BasisTerm, ExpansionReport, SystemRow,
};
pub use identities::{recurrence_identity_suite, IdentityRecord, IdentityReport};

use crate::algebra::{Poly, Rational};
use crate::{Error, Result};

/// `F(-n, q; u)` as a polynomial of degree `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KummerPoly {
    pub n: u64,
    pub q: Rational,
    pub poly: Poly,
}

/// `L_n^(alpha)(u)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LaguerrePoly {
    pub n: u64,
    pub alpha: Rational,
    pub poly: Poly,
}

/// Truncated Kummer function. Undefined when `(q)_k` vanishes for some
/// `k < n`, i.e. `q` in `{0, -1, ..., -(n-1)}`.
pub fn kummer_poly(n: u64, q: &Rational) -> Result<KummerPoly> {
    if q.is_integer() && !q.is_positive() {
        let k = (-q).to_i64().and_then(|k| u64::try_from(k).ok()).unwrap_or(u64::MAX);
        if k < n {
            return Err(Error::Obstruction { n, q: q.clone(), k: k + 1 });
        }
    }
    let minus_n = -Rational::from(n);
    let mut coeffs = Vec::with_capacity(n as usize + 1);
    let mut term = Rational::one();
    for k in 0..=n {
        if k > 0 {
            let kk = Rational::from(k - 1);
            term = term * (&minus_n + &kk) / ((q + &kk) * Rational::from(k));
        }
        coeffs.push(term.clone());
    }
    Ok(KummerPoly { n, q: q.clone(), poly: Poly::from_coeffs(coeffs) })
}

/// `sum_k binom(n + alpha, n - k) (-u)^k / k!`, defined for every `alpha`.
pub fn laguerre_poly(n: u64, alpha: &Rational) -> LaguerrePoly {
    let top = Rational::from(n) + alpha;
    // binom(top, m) for m = 0..=n
    let mut binoms = Vec::with_capacity(n as usize + 1);
    let mut b = Rational::one();
    for m in 0..=n {
        binoms.push(b.clone());
        b = b * (&top - Rational::from(m)) / Rational::from(m + 1);
    }
    let mut fact = Rational::one();
    let coeffs = (0..=n)
        .map(|k| {
            if k > 0 {
                fact = &fact * Rational::from(k);
            }
            let sign = if k % 2 == 0 { Rational::one() } else { -Rational::one() };
            sign * &binoms[(n - k) as usize] / &fact
        })
        .collect();
    LaguerrePoly { n, alpha: alpha.clone(), poly: Poly::from_coeffs(coeffs) }
}

/// `2s` as a natural number.
pub(crate) fn two_s(s: &Rational) -> Result<u64> {
    (Rational::from(2) * s)
        .to_i64()
        .filter(|_| (Rational::from(2) * s).is_integer())
        .and_then(|v| u64::try_from(v).ok())
        .ok_or_else(|| Error::domain(format!("2s must be a natural number, got s = {s}")))
}

/// `u^(2s) F(-(m+1), 2s+1; u)`, which stands in for the undefined
/// `F(-(2s+1+m), 1-2s; u)`; `m = 0` and `m = -1` give the two basis members.
pub fn phi(s: &Rational, m: i64) -> Result<Poly> {
    let order = u64::try_from(m + 1).map_err(|_| Error::domain("phi needs m >= -1"))?;
    let shift = two_s(s)? as usize;
    let f = kummer_poly(order, &(Rational::from(2) * s + Rational::one()))?;
    Ok(f.poly.shift_up(shift))
}

/// `u^(2s) L_(m+1)^(2s)(u)`, the Laguerre counterpart of [`phi`].
pub fn phi_laguerre(s: &Rational, m: i64) -> Result<Poly> {
    let order = u64::try_from(m + 1).map_err(|_| Error::domain("phi needs m >= -1"))?;
    let shift = two_s(s)? as usize;
    Ok(laguerre_poly(order, &(Rational::from(2) * s)).poly.shift_up(shift))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{factorial, q};
    use crate::auxode::{build_auxiliary, to_heun_form, HeunForm};
    use crate::kovacic::family_by_label;
    use crate::master::{ModeSpec, PerturbationKind};

    #[test]
    fn kummer_small_cases() {
        let f = kummer_poly(1, &q(5, 2)).unwrap();
        assert_eq!(f.poly, Poly::from_coeffs(vec![q(1, 1), q(-2, 5)]));
        assert_eq!(kummer_poly(0, &q(-3, 1)).unwrap().poly, Poly::one());
    }

    #[test]
    fn obstruction_at_special_frequency() {
        let s = q(4, 1);
        let lower = q(1, 1) - q(2, 1) * &s;
        for n in [9, 8] {
            assert!(matches!(kummer_poly(n, &lower), Err(Error::Obstruction { .. })));
        }
        for n in [7, 6] {
            assert!(kummer_poly(n, &lower).is_ok());
        }
    }

    #[test]
    fn laguerre_small_cases() {
        let a = q(7, 3);
        assert_eq!(laguerre_poly(0, &a).poly, Poly::one());
        assert_eq!(laguerre_poly(1, &a).poly, Poly::from_coeffs(vec![q(10, 3), q(-1, 1)]));
    }

    #[test]
    fn laguerre_negative_alpha_is_exponential_partial_sum() {
        // L_7^(-8)(-4w) = -(1 - 4w + (4w)^2/2! - ... - (4w)^7/7!)
        let l = laguerre_poly(7, &q(-8, 1)).poly.compose_linear(&q(-4, 1), &q(0, 1));
        let expect: Vec<Rational> = (0..=7u64)
            .map(|k| {
                let sign = if k % 2 == 0 { q(-1, 1) } else { q(1, 1) };
                sign * Rational::from(4i64).pow(k as i32) / Rational::int(factorial(k))
            })
            .collect();
        assert_eq!(l, Poly::from_coeffs(expect));
    }

    #[test]
    fn phi_members() {
        let s = q(4, 1);
        assert_eq!(phi(&s, -1).unwrap(), Poly::monomial(8, q(1, 1)));
        assert_eq!(
            phi(&s, 0).unwrap(),
            Poly::monomial(8, q(1, 1)) - Poly::monomial(9, q(1, 9))
        );
        assert!(phi(&q(1, 3), 0).is_err());
    }

    fn heun(kind: PerturbationKind, label: &str, l: u32, s: Rational) -> HeunForm {
        // built directly so that l may sit below the radiating minimum
        let mode = ModeSpec { kind, l, s };
        to_heun_form(&build_auxiliary(&family_by_label(&mode, label).unwrap(), &mode).unwrap()).unwrap()
    }

    #[test]
    fn sufficiency_on_families() {
        let g7 = heun(PerturbationKind::Gravitational, "G7", 2, q(4, 1));
        let v = hautot_sufficiency_check(&g7, 9).unwrap();
        assert!(v.satisfied && v.j == 3);
        let g7 = heun(PerturbationKind::Gravitational, "G7", 2, q(3, 1));
        assert!(!hautot_sufficiency_check(&g7, 7).unwrap().satisfied);
        for s in [q(1, 2), q(3, 1), q(7, 2)] {
            let e7 = heun(PerturbationKind::Electromagnetic, "E7", 0, s.clone());
            let n = two_s(&s).unwrap();
            assert!(hautot_sufficiency_check(&e7, n).unwrap().satisfied);
            let e7 = heun(PerturbationKind::Electromagnetic, "E7", 1, s);
            assert!(!hautot_sufficiency_check(&e7, n).unwrap().satisfied);
        }
        for (kind, label) in [
            (PerturbationKind::Gravitational, "G3"),
            (PerturbationKind::Electromagnetic, "E3"),
            (PerturbationKind::Scalar, "S3"),
        ] {
            let h = heun(kind, label, 2, q(4, 1));
            assert!(matches!(hautot_sufficiency_check(&h, 3), Err(Error::NotApplicable(_))));
        }
    }
}
