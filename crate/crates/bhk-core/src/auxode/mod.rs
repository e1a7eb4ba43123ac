//! Auxiliary equations `p2 P'' + p1 P' + p0 P = 0` for the polynomial factor
//! of a Kovacic candidate, their coordinate frames and three-term
//! recurrences.

mod chandra;
mod heun;
mod solve;

use std::fmt;

use serde::Serialize;

pub use chandra::{
    chandrasekhar_coeffs, verify_chandrasekhar, verify_chandrasekhar_poly, CheckOutcome, VerificationRecord,
    CHECK_INTEGRAL, CHECK_ODE, CHECK_RECURRENCE, CHECK_SIGNS,
};
pub use heun::{homotopic_equivalence_check, to_heun_form, HeunForm, HomotopicCase, HomotopicReport};
pub use solve::{brute_force_polynomial_solutions, monomial_action_matrix, solve_low_degree, LowDegreeSolution};

use crate::algebra::{Poly, Rational};
use crate::kovacic::{self, Family};
use crate::master::{self, ModeSpec};
use crate::{Error, Result};

/// Independent variable of an auxiliary equation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Frame {
    /// The areal radius.
    R,
    /// `w = r - 2`.
    W,
    /// `z = r / 2`.
    Z,
    /// `u = -s w`.
    U,
}

impl Frame {
    pub fn var(self) -> &'static str {
        match self {
            Frame::R => "r",
            Frame::W => "w",
            Frame::Z => "z",
            Frame::U => "u",
        }
    }
}

impl fmt::Display for Frame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.var())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuxiliaryODE {
    pub frame: Frame,
    pub p2: Poly,
    pub p1: Poly,
    pub p0: Poly,
    pub label: String,
    pub mode: ModeSpec,
}

/// `P'' + 2 theta P' + (theta^2 + theta' - nu) P = 0` multiplied by `r(r-2)`.
pub fn build_auxiliary(family: &Family, mode: &ModeSpec) -> Result<AuxiliaryODE> {
    if family.kind != mode.kind {
        return Err(Error::domain(format!(
            "family {} belongs to {} perturbations, mode is {}",
            family.label, family.kind, mode.kind
        )));
    }
    let [c0, c2, cinf] = kovacic::theta(family)?.at(&mode.s);
    let r = Poly::x();
    let rm2 = Poly::from_ints(&[-2, 1]);
    let q = &r * &rm2;
    // t = theta * q
    let t = rm2.scale(&c0) + r.scale(&c2) + q.scale(&cinf);
    let (num, _) = master::build_nu(mode);
    let cleared = &t * &t + t.derivative() * &q - &t * q.derivative() - num;
    let p0 = cleared.exact_div(&q)?;
    Ok(AuxiliaryODE {
        frame: Frame::R,
        p1: t.scale(&Rational::from(2)),
        p2: q,
        p0,
        label: family.label.clone(),
        mode: mode.clone(),
    })
}

impl AuxiliaryODE {
    /// The operator applied to `p`.
    pub fn apply(&self, p: &Poly) -> Poly {
        let d1 = p.derivative();
        &self.p2 * d1.derivative() + &self.p1 * &d1 + &self.p0 * p
    }

    /// Same operator in `t`, where the current variable is `alpha t + beta`.
    pub fn change_variable(&self, alpha: &Rational, beta: &Rational, frame: Frame) -> AuxiliaryODE {
        let a2 = (alpha * alpha).recip();
        AuxiliaryODE {
            frame,
            p2: self.p2.compose_linear(alpha, beta).scale(&a2),
            p1: self.p1.compose_linear(alpha, beta).scale(&alpha.recip()),
            p0: self.p0.compose_linear(alpha, beta),
            label: self.label.clone(),
            mode: self.mode.clone(),
        }
    }

    fn expect_frame(&self, frame: Frame) -> Result<()> {
        if self.frame == frame {
            Ok(())
        } else {
            Err(Error::domain(format!("expected the {frame} frame, found {}", self.frame)))
        }
    }

    pub fn to_w(&self) -> Result<AuxiliaryODE> {
        self.expect_frame(Frame::R)?;
        Ok(self.change_variable(&Rational::one(), &Rational::from(2), Frame::W))
    }

    pub fn to_z(&self) -> Result<AuxiliaryODE> {
        self.expect_frame(Frame::R)?;
        Ok(self.change_variable(&Rational::from(2), &Rational::zero(), Frame::Z))
    }

    pub fn to_u(&self) -> Result<AuxiliaryODE> {
        if self.mode.s.is_zero() {
            return Err(Error::domain("the u frame needs s != 0"));
        }
        let w = match self.frame {
            Frame::W => self.clone(),
            _ => self.to_w()?,
        };
        Ok(w.change_variable(&(-self.mode.s.recip()), &Rational::zero(), Frame::U))
    }

    /// Polynomial degrees allowed by the leading behaviour at infinity.
    pub fn degree_at_infinity(&self) -> Option<Rational> {
        let top = self.p1.coeff(2);
        if self.p2.degree() != Some(2) || top.is_zero() || self.p0.degree().unwrap_or(0) > 1 {
            return None;
        }
        Some(-self.p0.coeff(1) / top)
    }

    /// Three-term recurrence for `sum P_n x^(n + rho)` about `point` of the
    /// current frame.
    pub fn recurrence(&self, point: &Rational, rho: &Rational) -> Result<Recurrence3> {
        let local = self.change_variable(&Rational::one(), point, self.frame);
        if !local.p2.coeff(0).is_zero() {
            return Err(Error::domain(format!("{point} is not a singular point")));
        }
        let too_high = local.p2.degree().unwrap_or(0) > 2
            || local.p1.degree().unwrap_or(0) > 2
            || local.p0.degree().unwrap_or(0) > 1;
        if too_high {
            return Err(Error::domain("coefficients too high for a three-term recurrence"));
        }
        let rec = Recurrence3 {
            frame: self.frame,
            point: point.clone(),
            rho: rho.clone(),
            p2: [local.p2.coeff(1), local.p2.coeff(2)],
            p1: [local.p1.coeff(0), local.p1.coeff(1), local.p1.coeff(2)],
            p0: [local.p0.coeff(0), local.p0.coeff(1)],
        };
        if !rec.indicial().eval(rho).is_zero() {
            return Err(Error::domain(format!("{rho} is not an indicial root at {point}")));
        }
        Ok(rec)
    }

    /// Indicial polynomial at a finite point of the current frame.
    pub fn indicial(&self, point: &Rational) -> Poly {
        let local = self.change_variable(&Rational::one(), point, self.frame);
        let a = local.p2.coeff(1);
        let b = local.p1.coeff(0);
        // a rho (rho - 1) + b rho
        Poly::from_coeffs(vec![Rational::zero(), &b - &a, a])
    }
}

/// `lower(n) P_{n-1} + diag(n) P_n + upper(n) P_{n+1} = 0`, `P_{-1} = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Recurrence3 {
    pub frame: Frame,
    pub point: Rational,
    pub rho: Rational,
    p2: [Rational; 2],
    p1: [Rational; 3],
    p0: [Rational; 2],
}

impl Recurrence3 {
    fn m(&self, n: i64) -> Rational {
        Rational::from(n) + &self.rho
    }

    pub fn indicial(&self) -> Poly {
        Poly::from_coeffs(vec![Rational::zero(), &self.p1[0] - &self.p2[0], self.p2[0].clone()])
    }

    pub fn lower(&self, n: i64) -> Rational {
        let m = self.m(n - 1);
        &self.p1[2] * &m + &self.p0[1]
    }

    pub fn diag(&self, n: i64) -> Rational {
        let m = self.m(n);
        &self.p2[1] * &m * (&m - Rational::one()) + &self.p1[1] * &m + &self.p0[0]
    }

    pub fn upper(&self, n: i64) -> Rational {
        let m = self.m(n + 1);
        &self.p2[0] * &m * (&m - Rational::one()) + &self.p1[0] * &m
    }

    /// Row `n` applied to a coefficient list.
    pub fn residual(&self, coeffs: &[Rational], n: usize) -> Rational {
        let at = |i: i64| -> Rational {
            usize::try_from(i).ok().and_then(|i| coeffs.get(i).cloned()).unwrap_or_default()
        };
        let n = n as i64;
        self.lower(n) * at(n - 1) + self.diag(n) * at(n) + self.upper(n) * at(n + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::q;
    use crate::kovacic::family_by_label;
    use crate::master::PerturbationKind;

    fn ode(kind: PerturbationKind, label: &str, l: u32, s: Rational) -> AuxiliaryODE {
        let mode = ModeSpec::new(kind, l, s).unwrap();
        build_auxiliary(&family_by_label(&mode, label).unwrap(), &mode).unwrap()
    }

    #[test]
    fn g7_operator() {
        // symbolic l and s checked at a few sample points
        for (l, s) in [(2, q(4, 1)), (3, q(7, 3)), (5, q(1, 2))] {
            let e = ode(PerturbationKind::Gravitational, "G7", l, s.clone());
            let big_l = master::angular(l);
            assert_eq!(e.p2, Poly::from_ints(&[0, -2, 1]));
            assert_eq!(
                e.p1,
                Poly::from_coeffs(vec![q(6, 1), q(-2, 1) - q(4, 1) * &s, s.clone()])
            );
            assert_eq!(
                e.p0,
                Poly::from_coeffs(vec![
                    q(2, 1) - &big_l + q(6, 1) * &s,
                    -(&s * (q(1, 1) + q(2, 1) * &s))
                ])
            );
        }
    }

    #[test]
    fn s3_operator() {
        let s = q(5, 2);
        let e = ode(PerturbationKind::Scalar, "S3", 3, s.clone());
        let expect = Poly::from_coeffs(vec![
            -master::angular(3) - q(2, 1) * &s,
            -(&s * (q(2, 1) * &s - q(1, 1))),
        ]);
        assert_eq!(e.p0, expect);
    }

    #[test]
    fn g8_residual() {
        let e = ode(PerturbationKind::Gravitational, "G8", 2, q(4, 1));
        assert!(e.apply(&Poly::from_coeffs(vec![q(3, 2), q(1, 1)])).is_zero());
    }

    #[test]
    fn g7_recurrence_about_two() {
        let s = q(3, 1);
        let l = 4;
        let e = ode(PerturbationKind::Gravitational, "G7", l, s.clone());
        let rec = e.recurrence(&q(2, 1), &q(0, 1)).unwrap();
        let big_l = master::angular(l);
        assert_eq!(rec.diag(0), q(2, 1) - big_l + q(4, 1) * &s * (q(1, 1) - &s));
        assert_eq!(rec.upper(0), q(2, 1) * (q(1, 1) - q(2, 1) * &s));
        assert!(e.recurrence(&q(2, 1), &q(1, 1)).is_err());
    }

    #[test]
    fn s3_recurrence_rows_at_two_s() {
        let s = q(3, 1);
        let l = 2;
        let e = ode(PerturbationKind::Scalar, "S3", l, s.clone());
        let n = 6;
        let big_l = master::angular(l);
        let about_zero = e.recurrence(&q(0, 1), &q(0, 1)).unwrap();
        assert!(about_zero.lower(n).is_zero());
        assert_eq!(about_zero.diag(n), -(&big_l + q(4, 1) * &s * &s));
        assert_eq!(about_zero.diag(n - 1), -(&big_l + q(4, 1) * &s * &s));
        assert_eq!(about_zero.upper(n), q(-2, 1) * q(7, 1) * q(7, 1));
        // about r = 2 the diagonal is n^2 + n - L - 4s^2
        let about_two = e.recurrence(&q(2, 1), &q(0, 1)).unwrap();
        assert!(about_two.lower(n).is_zero());
        assert!(about_two.upper(n - 1).is_zero());
        assert_eq!(about_two.diag(n), q(42, 1) - &big_l - q(36, 1));
        assert_eq!(about_two.diag(n - 1), -(&big_l + q(2, 1) * &s));
    }

    #[test]
    fn g7_indicial_data() {
        let s = q(7, 2);
        let e = ode(PerturbationKind::Gravitational, "G7", 3, s.clone());
        assert_eq!(e.indicial(&q(0, 1)).rational_roots().unwrap(), vec![q(0, 1), q(4, 1)]);
        assert_eq!(e.indicial(&q(2, 1)).rational_roots().unwrap(), vec![q(0, 1), q(7, 1)]);
        assert_eq!(e.degree_at_infinity(), Some(q(8, 1)));
        let s3 = ode(PerturbationKind::Scalar, "S3", 1, s);
        assert_eq!(s3.degree_at_infinity(), Some(q(6, 1)));
    }

    #[test]
    fn frames() {
        let e = ode(PerturbationKind::Gravitational, "G7", 2, q(4, 1));
        let z = e.to_z().unwrap();
        assert_eq!(z.p2, Poly::from_ints(&[0, -1, 1]));
        assert!(z.to_z().is_err());
        let u = e.to_u().unwrap();
        assert_eq!(u.frame, Frame::U);
    }
}
