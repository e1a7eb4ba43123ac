use serde::Serialize;

use super::{build_auxiliary, AuxiliaryODE, Frame};
use crate::algebra::{q, Poly, Rational};
use crate::kovacic::family_by_label;
use crate::master::{ModeSpec, PerturbationKind};
use crate::{Error, Result};

/// `z(z-1) P'' + (a z^2 + b z + c) P' + (d + e z) P = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HeunForm {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
    pub d: Rational,
    pub e: Rational,
}

/// Reads the confluent Heun parameters off an `r`-frame operator after
/// `r = 2z`.
pub fn to_heun_form(ode: &AuxiliaryODE) -> Result<HeunForm> {
    if ode.frame != Frame::R {
        return Err(Error::domain(format!("expected the r frame, found {}", ode.frame)));
    }
    let z = ode.to_z()?;
    if z.p2 != Poly::from_ints(&[0, -1, 1]) {
        return Err(Error::domain("leading coefficient is not z(z-1)"));
    }
    if z.p1.degree().unwrap_or(0) > 2 || z.p0.degree().unwrap_or(0) > 1 {
        return Err(Error::domain("operator is not of confluent Heun type"));
    }
    Ok(HeunForm {
        a: z.p1.coeff(2),
        b: z.p1.coeff(1),
        c: z.p1.coeff(0),
        d: z.p0.coeff(0),
        e: z.p0.coeff(1),
    })
}

impl HeunForm {
    pub fn apply(&self, p: &Poly) -> Poly {
        let d1 = p.derivative();
        let p2 = Poly::from_ints(&[0, -1, 1]);
        let p1 = Poly::from_coeffs(vec![self.c.clone(), self.b.clone(), self.a.clone()]);
        let p0 = Poly::from_coeffs(vec![self.d.clone(), self.e.clone()]);
        p2 * d1.derivative() + p1 * &d1 + p0 * p
    }

    /// Exponents `m` for which `P = z^m P1` keeps the form: `0` and `1 + c`.
    pub fn homotopic_exponents(&self) -> [Rational; 2] {
        [Rational::zero(), &self.c + Rational::one()]
    }

    /// Parameters of the equation for `P1` after `P = z^m P1`.
    pub fn substituted(&self, m: &Rational) -> Option<HeunForm> {
        if m.is_zero() {
            return Some(self.clone());
        }
        if *m != &self.c + Rational::one() {
            return None;
        }
        let one = Rational::one();
        let two = Rational::from(2);
        Some(HeunForm {
            a: self.a.clone(),
            b: &self.b + &two + &two * &self.c,
            c: -two - &self.c,
            d: &self.d + (&self.b + &self.c) * (&self.c + &one),
            e: &self.e + &self.a * &self.c + &self.a,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomotopicCase {
    pub from: String,
    pub to: String,
    pub l: u32,
    pub s: Rational,
    pub exponent: u32,
    pub max_k: usize,
    /// `H_from[z^(m+k)] = z^m H_to[z^k]` for all `k <= max_k`.
    pub operator_identity: bool,
    /// The parameter map sends the source form onto the target form.
    pub parameter_map: bool,
    pub offending_k: Option<usize>,
}

impl HomotopicCase {
    pub fn passed(&self) -> bool {
        self.operator_identity && self.parameter_map
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomotopicReport {
    pub cases: Vec<HomotopicCase>,
}

impl HomotopicReport {
    pub fn passed(&self) -> bool {
        !self.cases.is_empty() && self.cases.iter().all(HomotopicCase::passed)
    }
}

fn heun_of(kind: PerturbationKind, label: &str, l: u32, s: &Rational) -> Result<HeunForm> {
    let mode = ModeSpec::new(kind, l, s.clone())?;
    to_heun_form(&build_auxiliary(&family_by_label(&mode, label)?, &mode)?)
}

fn check_pair(
    kind: PerturbationKind,
    from: &str,
    to: &str,
    exponent: u32,
    l: u32,
    s: &Rational,
    max_k: usize,
) -> Result<HomotopicCase> {
    let source = heun_of(kind, from, l, s)?;
    let target = heun_of(kind, to, l, s)?;
    let m = exponent as usize;
    let mut offending_k = None;
    for k in 0..=max_k {
        let lhs = source.apply(&Poly::monomial(m + k, Rational::one()));
        let rhs = target.apply(&Poly::monomial(k, Rational::one())).shift_up(m);
        if lhs != rhs {
            offending_k = Some(k);
            break;
        }
    }
    let parameter_map = source.substituted(&Rational::from(exponent)).as_ref() == Some(&target);
    Ok(HomotopicCase {
        from: from.into(),
        to: to.into(),
        l,
        s: s.clone(),
        exponent,
        max_k,
        operator_identity: offending_k.is_none(),
        parameter_map,
        offending_k,
    })
}

/// `P = z^4 P1` between the two gravitational Heun forms and `P = z^2 P1`
/// between the electromagnetic ones, on a grid of `(l, s)`, checked on
/// monomials up to `max_k`.
pub fn homotopic_equivalence_check(max_k: usize) -> Result<HomotopicReport> {
    let samples = [q(1, 2), q(1, 1), q(3, 2), q(4, 1), q(7, 3), q(20, 1)];
    let mut cases = Vec::new();
    for l in 2..=4 {
        for s in &samples {
            cases.push(check_pair(PerturbationKind::Gravitational, "G7", "G3", 4, l, s, max_k)?);
        }
    }
    for l in 1..=3 {
        for s in &samples {
            cases.push(check_pair(PerturbationKind::Electromagnetic, "E7", "E3", 2, l, s, max_k)?);
        }
    }
    Ok(HomotopicReport { cases })
}
