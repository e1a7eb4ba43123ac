//! Kovacic's algorithm, steps one to three, for the master equation.
//!
//! The frequency parameter `s` stays symbolic here: exponents and degrees are
//! affine forms in `s`, and the pole data of `nu` is carried as polynomials
//! in `s`. A concrete `s` enters only when a family is instantiated.
//!
//! The pole structure is the same for every mode: double poles at `r = 0`
//! and `r = 2` and a pole of order four at infinity, so only the branches
//! `n = 1` and `n = 2` can occur.

mod affine;

use std::fmt;

use serde::Serialize;

pub use affine::Affine;

use crate::algebra::{Poly, Rational};
use crate::auxode::{self, LowDegreeSolution};
use crate::master::{self, ModeSpec, PerturbationKind};
use crate::{Error, Result};

/// A singular point of `nu`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Point {
    Finite(Rational),
    Infinity,
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Finite(c) => write!(f, "{c}"),
            Point::Infinity => f.write_str("inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SingularStructure {
    /// Poles with their orders, finite points ascending, infinity last.
    pub poles: Vec<(Point, u32)>,
    /// Largest finite pole order.
    pub m: u32,
    pub m_plus: u32,
    pub gamma2_count: usize,
    pub gamma_count: usize,
    /// Admissible degrees of the algebraic function sought.
    pub admissible_n: Vec<u32>,
}

impl SingularStructure {
    pub fn order(&self, p: &Point) -> Option<u32> {
        self.poles.iter().find(|(q, _)| q == p).map(|(_, o)| *o)
    }
}

/// `nu` with every `r`-coefficient of the numerator a polynomial in `s`.
struct SymbolicNu {
    num: Vec<Poly>,
    den: Poly,
}

impl SymbolicNu {
    fn new(kind: PerturbationKind, l: u32) -> Self {
        let mut num = master::nu_numerator_in_s(kind, l);
        while num.last().is_some_and(Poly::is_zero) {
            num.pop();
        }
        SymbolicNu { num, den: master::nu_denominator() }
    }

    fn num_degree(&self) -> usize {
        self.num.len().saturating_sub(1)
    }

    /// Numerator at `r = c`, a polynomial in `s`.
    fn num_at(&self, c: &Rational) -> Poly {
        let mut acc = Poly::zero();
        for coeff in self.num.iter().rev() {
            acc = acc.scale(c) + coeff;
        }
        acc
    }

    fn num_coeff(&self, i: usize) -> Poly {
        self.num.get(i).cloned().unwrap_or_default()
    }

    /// Coefficient of `1/(r-c)^2` in the Laurent expansion at a double pole.
    fn double_pole_coeff(&self, c: &Rational) -> Result<Poly> {
        let lin = Poly::linear(-c, Rational::one());
        let rest = self.den.exact_div(&(&lin * &lin))?;
        Ok(self.num_at(c).scale(&rest.eval(c).recip()))
    }
}

/// Steps 1a to 1e: poles, orders and the admissible set.
pub fn analyze_poles(mode: &ModeSpec) -> Result<SingularStructure> {
    let nu = SymbolicNu::new(mode.kind, mode.l);
    let mut poles = Vec::new();
    for c in nu.den.rational_roots()? {
        let lin = Poly::linear(-&c, Rational::one());
        let mut mult = 0u32;
        let mut rest = nu.den.clone();
        while rest.eval(&c).is_zero() {
            rest = rest.exact_div(&lin)?;
            mult += 1;
        }
        if nu.num_at(&c).is_zero() {
            return Err(Error::domain("numerator vanishes identically at a pole"));
        }
        poles.push((Point::Finite(c), mult));
    }
    let den_deg = nu.den.degree().unwrap_or(0) as i64;
    let o_inf = (4 + nu.num_degree() as i64 - den_deg).max(0) as u32;
    let m = poles.iter().map(|(_, o)| *o).max().unwrap_or(0);
    if o_inf > 0 {
        poles.push((Point::Infinity, o_inf));
    }
    let m_plus = m.max(o_inf);
    let gamma2_count = poles.iter().filter(|(_, o)| *o == 2).count();
    let odd_high = poles.iter().filter(|(_, o)| *o >= 3 && o % 2 == 1).count();
    let gamma_count = gamma2_count + odd_high;
    let mut admissible_n = Vec::new();
    if gamma_count == gamma2_count {
        admissible_n.push(1);
    }
    if gamma_count >= 2 {
        admissible_n.push(2);
    }
    if m_plus <= 2 {
        admissible_n.extend([4, 6, 12]);
    }
    Ok(SingularStructure { poles, m, m_plus, gamma2_count, gamma_count, admissible_n })
}

/// `h(n)` of step three.
fn h(n: u32) -> Rational {
    Rational::from(match n {
        1 => 1,
        2 => 4,
        _ => 12,
    })
}

/// Exponent sets of the `n = 1` branch.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExponentSets {
    pub e0: Vec<Affine>,
    pub e2: Vec<Affine>,
    /// Exponents at infinity with their sign `S(e)`.
    pub einf: Vec<(Affine, i32)>,
    /// The chosen square root `[sqrt nu]` at infinity.
    pub sqrt_inf: Affine,
}

/// `1/2 (1 +- sqrt(1 + 4 a))`, the larger root first.
fn double_pole_exponents_n1(a: &Poly) -> Result<Vec<Affine>> {
    let disc = a.scale(&Rational::from(4)) + Poly::one();
    let root = disc
        .sqrt_exact()
        .and_then(|r| Affine::from_poly(&r))
        .ok_or_else(|| Error::domain("1 + 4a is not the square of an affine form in s"))?;
    let half = crate::algebra::q(1, 2);
    let one = Affine::constant(Rational::one());
    let plus = (&one + &root).scale(&half);
    let minus = (&one - &root).scale(&half);
    Ok(if plus == minus { vec![plus] } else { vec![plus, minus] })
}

/// Step two for `n = 1`.
pub fn exponent_sets_n1(mode: &ModeSpec) -> Result<ExponentSets> {
    let nu = SymbolicNu::new(mode.kind, mode.l);
    let zero = Rational::zero();
    let two = Rational::from(2);
    let e0 = double_pole_exponents_n1(&nu.double_pole_coeff(&zero)?)?;
    let e2 = double_pole_exponents_n1(&nu.double_pole_coeff(&two)?)?;

    // order four at infinity: q = 2 and [sqrt nu] is a constant
    let structure = analyze_poles(mode)?;
    let o_inf = structure.order(&Point::Infinity).unwrap_or(0);
    if o_inf != 4 {
        return Err(Error::domain(format!("pole of order {o_inf} at infinity is not handled")));
    }
    let q_inf = Rational::from(o_inf / 2);
    let den_top = nu.den.coeff(4);
    let c0 = nu.num_coeff(4).scale(&den_top.recip());
    let c1 = (nu.num_coeff(3) - c0.scale(&nu.den.coeff(3))).scale(&den_top.recip());
    let sqrt_poly = c0
        .sqrt_exact()
        .ok_or_else(|| Error::domain("leading term of nu at infinity is not a square"))?;
    let sqrt_inf = Affine::from_poly(&sqrt_poly)
        .ok_or_else(|| Error::domain("square root at infinity is not affine in s"))?;
    let beta_inf = -c1;
    let ratio = beta_inf.exact_div(&sqrt_poly)?;
    let ratio = Affine::from_poly(&ratio)
        .ok_or_else(|| Error::domain("exponent at infinity is not affine in s"))?;
    let half = crate::algebra::q(1, 2);
    let mut einf = Vec::new();
    for eps in [1i32, -1] {
        let e = (&Affine::constant(q_inf.clone()) + &ratio.scale(&Rational::from(eps))).scale(&half);
        let sign = if beta_inf.is_zero() { 1 } else { eps };
        einf.push((e, sign));
    }
    Ok(ExponentSets { e0, e2, einf, sqrt_inf })
}

/// One candidate `(e0, e2, e_inf)` with its polynomial degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Family {
    pub label: String,
    pub kind: PerturbationKind,
    pub n: u32,
    pub e0: Affine,
    pub e2: Affine,
    pub einf: Affine,
    /// `S(e_inf)`; always 1 for `n = 2`.
    pub sign_inf: i32,
    /// Constant part of `theta`, zero for `n = 2`.
    pub theta_inf: Affine,
    pub degree: Affine,
}

fn kind_prefix(kind: PerturbationKind) -> &'static str {
    match kind {
        PerturbationKind::Gravitational => "G",
        PerturbationKind::Electromagnetic => "E",
        PerturbationKind::Scalar => "S",
    }
}

fn degree_form(n: u32, exps: [&Affine; 3]) -> Affine {
    let sum = &(exps[0] + exps[1]) + exps[2];
    let nn = Rational::from(n);
    &Affine::constant(nn.clone()) - &sum.scale(&(&nn / &h(n)))
}

/// Step 3a for `n = 1`, rows in table order.
pub fn enumerate_families_n1(mode: &ModeSpec) -> Result<Vec<Family>> {
    let sets = exponent_sets_n1(mode)?;
    let prefix = kind_prefix(mode.kind);
    let mut out = Vec::new();
    for e0 in &sets.e0 {
        for e2 in &sets.e2 {
            for (einf, sign) in &sets.einf {
                let label = format!("{prefix}{}", out.len() + 1);
                out.push(Family {
                    label,
                    kind: mode.kind,
                    n: 1,
                    e0: e0.clone(),
                    e2: e2.clone(),
                    einf: einf.clone(),
                    sign_inf: *sign,
                    theta_inf: sets.sqrt_inf.scale(&Rational::from(*sign)),
                    degree: degree_form(1, [e0, e2, einf]),
                });
            }
        }
    }
    Ok(out)
}

/// Outcome of step 3b for one family.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Retention {
    /// The degree grows with `s`; kept for the later analysis.
    Generic,
    /// The degree is negative for every `s >= 0`.
    NegativeDegree,
    /// Degree at most one on a finite set or independent of `s`; decided by
    /// solving for `s` and the polynomial together.
    LowDegree { solutions: Vec<LowDegreeSolution> },
    /// `n = 2`: fewer than two exponents can be odd.
    TooFewOdd,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RetentionRecord {
    pub family: Family,
    pub retention: Retention,
}

impl RetentionRecord {
    pub fn retained(&self) -> bool {
        match &self.retention {
            Retention::Generic => true,
            Retention::LowDegree { solutions } => !solutions.is_empty(),
            Retention::NegativeDegree | Retention::TooFewOdd => false,
        }
    }

    /// Low-degree families that turned out empty.
    pub fn marginal(&self) -> bool {
        matches!(&self.retention, Retention::LowDegree { solutions } if solutions.is_empty())
    }
}

/// Step 3b for the `n = 1` families of one angular index.
pub fn retain_families(families: &[Family], l: u32) -> Result<Vec<RetentionRecord>> {
    families
        .iter()
        .map(|f| {
            let d = &f.degree;
            let retention = if d.slope.is_positive() {
                Retention::Generic
            } else if d.constant.is_negative() {
                Retention::NegativeDegree
            } else {
                let top = d.constant.numer().clone() / d.constant.denom().clone();
                let top: i64 = i64::try_from(top).map_err(|_| Error::domain("degree too large"))?;
                let mut solutions = Vec::new();
                for deg in 0..=top {
                    let on_grid = d.is_constant() && d.constant == Rational::from(deg);
                    let s_ok = d.solve(&Rational::from(deg)).is_some_and(|s| !s.is_negative());
                    if on_grid || s_ok {
                        solutions.extend(auxode::solve_low_degree(f, l, deg as usize)?);
                    }
                }
                Retention::LowDegree { solutions }
            };
            Ok(RetentionRecord { family: f.clone(), retention })
        })
        .collect()
}

/// Coefficients of `theta = c0/r + c2/(r-2) + c_inf`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ThetaSpec {
    pub c0: Affine,
    pub c2: Affine,
    pub cinf: Affine,
}

impl ThetaSpec {
    pub fn at(&self, s: &Rational) -> [Rational; 3] {
        [self.c0.eval(s), self.c2.eval(s), self.cinf.eval(s)]
    }
}

/// Step 3c for a first-order family.
pub fn theta(family: &Family) -> Result<ThetaSpec> {
    if family.n != 1 {
        return Err(Error::NotApplicable(format!(
            "theta is built here for n = 1 only, {} has n = {}",
            family.label, family.n
        )));
    }
    Ok(ThetaSpec {
        c0: family.e0.clone(),
        c2: family.e2.clone(),
        cinf: family.theta_inf.clone(),
    })
}

/// `n = 2` step two: `h/2 (1 - R) + (h/n) k R` for `k = 0..n`, integers only.
fn double_pole_exponents_n2(a: &Poly) -> Result<Vec<Affine>> {
    let n = 2u32;
    let disc = a.scale(&Rational::from(4)) + Poly::one();
    let root = disc
        .sqrt_exact()
        .and_then(|r| Affine::from_poly(&r))
        .ok_or_else(|| Error::domain("1 + 4a is not the square of an affine form in s"))?;
    let hn = h(n);
    let base = (&Affine::constant(Rational::one()) - &root).scale(&(&hn / Rational::from(2)));
    let mut out: Vec<Affine> = Vec::new();
    for k in 0..=n {
        let e = &base + &root.scale(&(&hn / Rational::from(n) * Rational::from(k)));
        // a constant must already be an integer; an s-dependent entry is an
        // integer on a lattice of s values
        if e.is_constant() && !e.constant.is_integer() {
            continue;
        }
        if !out.contains(&e) {
            out.push(e);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct N2Enumeration {
    pub e0: Vec<Affine>,
    pub e2: Vec<Affine>,
    pub einf: Vec<Affine>,
    pub candidates: Vec<RetentionRecord>,
}

impl N2Enumeration {
    pub fn retained(&self) -> Vec<&Family> {
        self.candidates.iter().filter(|c| c.retained()).map(|c| &c.family).collect()
    }
}

/// Whether an exponent can be odd for some admissible `s`.
fn can_be_odd(e: &Affine) -> bool {
    if e.is_constant() {
        e.constant.is_odd_integer() == Some(true)
    } else {
        true
    }
}

/// The `n = 2` branch: candidates and step 3b.
pub fn enumerate_families_n2(mode: &ModeSpec) -> Result<N2Enumeration> {
    let nu = SymbolicNu::new(mode.kind, mode.l);
    let structure = analyze_poles(mode)?;
    if !structure.admissible_n.contains(&2) {
        return Err(Error::NotApplicable("n = 2 is not admissible".into()));
    }
    let e0 = double_pole_exponents_n2(&nu.double_pole_coeff(&Rational::zero())?)?;
    let e2 = double_pole_exponents_n2(&nu.double_pole_coeff(&Rational::from(2))?)?;
    // poles of order q >= 3 contribute {q}
    let o_inf = structure.order(&Point::Infinity).unwrap_or(0);
    let einf = vec![Affine::constant(Rational::from(o_inf))];
    let mut candidates = Vec::new();
    for a in &e0 {
        for b in &e2 {
            for c in &einf {
                let degree = degree_form(2, [a, b, c]);
                let label = format!("N2-{}", candidates.len() + 1);
                let family = Family {
                    label,
                    kind: mode.kind,
                    n: 2,
                    e0: a.clone(),
                    e2: b.clone(),
                    einf: c.clone(),
                    sign_inf: 1,
                    theta_inf: Affine::default(),
                    degree: degree.clone(),
                };
                let odd = [a, b, c].iter().filter(|e| can_be_odd(e)).count();
                let retention = if odd < 2 {
                    Retention::TooFewOdd
                } else if !degree.slope.is_positive() && degree.constant.is_negative() {
                    Retention::NegativeDegree
                } else {
                    Retention::Generic
                };
                candidates.push(RetentionRecord { family, retention });
            }
        }
    }
    Ok(N2Enumeration { e0, e2, einf, candidates })
}

/// Exponents of `p(r) r^a (r-2)^b e^{c r}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FormFactors {
    pub r_power: Rational,
    pub rm2_power: Rational,
    pub exp_rate: Rational,
}

/// A Liouvillian solution in closed form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LiouvillianDescriptor {
    pub family: String,
    pub mode: ModeSpec,
    /// The polynomial factor in `r`.
    pub poly: Poly,
    /// Solution of the normal form `y'' = nu y`: `p e^{int theta}`.
    pub normal_form: FormFactors,
    /// Solution of the original equation, `sqrt(r/(r-2))` times the above.
    pub master_form: FormFactors,
}

impl LiouvillianDescriptor {
    /// Residual of the original master equation; zero for a true solution.
    pub fn master_residual(&self) -> Poly {
        let f = &self.master_form;
        master::master_residual(&self.mode, &self.poly, &f.r_power, &f.rm2_power, &f.exp_rate)
    }
}

/// Step four output: `eta = p e^{int theta}` and the matching solution of
/// the master equation.
pub fn liouvillian_form(family: &Family, mode: &ModeSpec, p: &Poly) -> Result<LiouvillianDescriptor> {
    if p.is_zero() {
        return Err(Error::NotASolution { what: "the zero polynomial".into(), residual: Poly::zero() });
    }
    let ode = auxode::build_auxiliary(family, mode)?;
    let residual = ode.apply(p);
    if !residual.is_zero() {
        return Err(Error::NotASolution { what: format!("{} polynomial", family.label), residual });
    }
    let [c0, c2, cinf] = theta(family)?.at(&mode.s);
    let half = crate::algebra::q(1, 2);
    Ok(LiouvillianDescriptor {
        family: family.label.clone(),
        mode: mode.clone(),
        poly: p.clone(),
        normal_form: FormFactors {
            r_power: c0.clone(),
            rm2_power: c2.clone(),
            exp_rate: cinf.clone(),
        },
        master_form: FormFactors { r_power: c0 + &half, rm2_power: c2 - &half, exp_rate: cinf },
    })
}

/// Family by label from the `n = 1` table of a mode.
pub fn family_by_label(mode: &ModeSpec, label: &str) -> Result<Family> {
    enumerate_families_n1(mode)?
        .into_iter()
        .find(|f| f.label == label)
        .ok_or_else(|| Error::domain(format!("no family {label} for {} perturbations", mode.kind)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::q;

    fn mode(kind: PerturbationKind) -> ModeSpec {
        ModeSpec::new(kind, kind.min_l().max(2), q(4, 1)).unwrap()
    }

    #[test]
    fn pole_structure() {
        let st = analyze_poles(&mode(PerturbationKind::Gravitational)).unwrap();
        assert_eq!(st.order(&Point::Infinity), Some(4));
        assert_eq!(st.order(&Point::Finite(q(0, 1))), Some(2));
        assert_eq!(st.order(&Point::Finite(q(2, 1))), Some(2));
        assert_eq!(st.m_plus, 4);
        assert_eq!((st.gamma_count, st.gamma2_count), (2, 2));
        assert_eq!(st.admissible_n, vec![1, 2]);
    }

    #[test]
    fn exponent_sets() {
        let g = exponent_sets_n1(&mode(PerturbationKind::Gravitational)).unwrap();
        assert_eq!(g.e0, vec![Affine::constant(q(5, 2)), Affine::constant(q(-3, 2))]);
        assert_eq!(g.e2, vec![Affine::new(q(1, 2), q(1, 1)), Affine::new(q(1, 2), q(-1, 1))]);
        assert_eq!(
            g.einf,
            vec![(Affine::new(q(1, 1), q(-1, 1)), 1), (Affine::new(q(1, 1), q(1, 1)), -1)]
        );
        let s = exponent_sets_n1(&mode(PerturbationKind::Scalar)).unwrap();
        assert_eq!(s.e0, vec![Affine::constant(q(1, 2))]);
    }

    #[test]
    fn family_rows() {
        let fams = enumerate_families_n1(&mode(PerturbationKind::Gravitational)).unwrap();
        let g7 = &fams[6];
        assert_eq!(g7.label, "G7");
        assert_eq!(g7.e0, Affine::constant(q(-3, 2)));
        assert_eq!(g7.e2, Affine::new(q(1, 2), q(-1, 1)));
        assert_eq!(g7.einf, Affine::new(q(1, 1), q(-1, 1)));
        assert_eq!(g7.degree, Affine::new(q(1, 1), q(2, 1)));
        let fams = enumerate_families_n1(&mode(PerturbationKind::Scalar)).unwrap();
        assert_eq!(fams[1].label, "S2");
        assert_eq!(fams[1].degree, Affine::new(q(-1, 1), q(-2, 1)));
    }

    #[test]
    fn theta_examples() {
        let m = mode(PerturbationKind::Gravitational);
        let g7 = family_by_label(&m, "G7").unwrap();
        let th = theta(&g7).unwrap();
        assert_eq!(th.c0, Affine::constant(q(-3, 2)));
        assert_eq!(th.c2, Affine::new(q(1, 2), q(-1, 1)));
        assert_eq!(th.cinf, Affine::new(q(0, 1), q(1, 2)));
        let g8 = family_by_label(&m, "G8").unwrap();
        assert_eq!(theta(&g8).unwrap().cinf, Affine::new(q(0, 1), q(-1, 2)));
        let s3 = family_by_label(&mode(PerturbationKind::Scalar), "S3").unwrap();
        let th = theta(&s3).unwrap();
        assert_eq!((th.c0, th.cinf), (Affine::constant(q(1, 2)), Affine::new(q(0, 1), q(1, 2))));
    }

    #[test]
    fn zero_polynomial_rejected() {
        let m = mode(PerturbationKind::Gravitational);
        let g8 = family_by_label(&m, "G8").unwrap();
        assert!(matches!(liouvillian_form(&g8, &m, &Poly::zero()), Err(Error::NotASolution { .. })));
    }
}
