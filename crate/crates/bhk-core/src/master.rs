//! The master equation `y'' = nu(r) y` for perturbations of the Schwarzschild
//! geometry with `M = 1`.
//!
//! With `L = l(l+1)` the potential is
//!
//! ```text
//! nu(r) = [ (s^2/4) r^4 + L r^2 + 2(beta - L - 1) r + 3 - 4 beta ] / ( r^2 (r-2)^2 )
//! ```
//!
//! where `beta` is -3, 0 or 1 for gravitational, electromagnetic and scalar
//! perturbations. For a black hole of mass `M`, replace `r` by `r/M` and `s`
//! by `M s` in every output.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::algebra::{Poly, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModeError {
    #[error("l = {l} is below the minimum {min} for {kind} perturbations")]
    AngularIndex { kind: PerturbationKind, l: u32, min: u32 },
    #[error("special frequencies need l >= 2, got l = {0}")]
    NoSpecialFrequency(u32),
    #[error("unknown perturbation kind {0:?} (expected gravitational, em or scalar)")]
    UnknownKind(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PerturbationKind {
    Gravitational,
    Electromagnetic,
    Scalar,
}

impl PerturbationKind {
    pub const ALL: [PerturbationKind; 3] = [
        PerturbationKind::Gravitational,
        PerturbationKind::Electromagnetic,
        PerturbationKind::Scalar,
    ];

    pub fn beta(self) -> i64 {
        match self {
            PerturbationKind::Gravitational => -3,
            PerturbationKind::Electromagnetic => 0,
            PerturbationKind::Scalar => 1,
        }
    }

    /// Lowest radiating multipole.
    pub fn min_l(self) -> u32 {
        match self {
            PerturbationKind::Gravitational => 2,
            PerturbationKind::Electromagnetic => 1,
            PerturbationKind::Scalar => 0,
        }
    }
}

impl fmt::Display for PerturbationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PerturbationKind::Gravitational => "gravitational",
            PerturbationKind::Electromagnetic => "electromagnetic",
            PerturbationKind::Scalar => "scalar",
        })
    }
}

impl FromStr for PerturbationKind {
    type Err = ModeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "gravitational" | "grav" | "-3" => Ok(PerturbationKind::Gravitational),
            "electromagnetic" | "em" | "0" => Ok(PerturbationKind::Electromagnetic),
            "scalar" | "1" => Ok(PerturbationKind::Scalar),
            _ => Err(ModeError::UnknownKind(s.to_string())),
        }
    }
}

/// One perturbation mode: kind, angular index and frequency parameter.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ModeSpec {
    pub kind: PerturbationKind,
    pub l: u32,
    pub s: Rational,
}

impl ModeSpec {
    pub fn new(kind: PerturbationKind, l: u32, s: Rational) -> Result<Self, ModeError> {
        if l < kind.min_l() {
            return Err(ModeError::AngularIndex { kind, l, min: kind.min_l() });
        }
        Ok(ModeSpec { kind, l, s })
    }

    pub fn gravitational(l: u32, s: Rational) -> Result<Self, ModeError> {
        ModeSpec::new(PerturbationKind::Gravitational, l, s)
    }

    pub fn beta(&self) -> Rational {
        Rational::from(self.kind.beta())
    }

    /// `l(l+1)`.
    pub fn angular(&self) -> Rational {
        angular(self.l)
    }

    /// `(l-1)(l+2)`.
    pub fn mu_squared(&self) -> Rational {
        mu_squared(self.l)
    }

    /// `s/2`.
    pub fn sigma0(&self) -> Rational {
        &self.s / Rational::from(2)
    }

    pub fn with_s(&self, s: Rational) -> ModeSpec {
        ModeSpec { s, ..self.clone() }
    }
}

pub fn angular(l: u32) -> Rational {
    Rational::from(u64::from(l) * u64::from(l + 1))
}

pub fn mu_squared(l: u32) -> Rational {
    (Rational::from(i64::from(l)) - Rational::one()) * Rational::from(i64::from(l) + 2)
}

/// Numerator of `nu` with each `r`-coefficient a polynomial in `s`.
pub fn nu_numerator_in_s(kind: PerturbationKind, l: u32) -> Vec<Poly> {
    let beta = Rational::from(kind.beta());
    let big_l = angular(l);
    let two = Rational::from(2);
    vec![
        Poly::constant(Rational::from(3) - Rational::from(4) * &beta),
        Poly::constant(two * (&beta - &big_l - Rational::one())),
        Poly::constant(big_l),
        Poly::zero(),
        Poly::monomial(2, crate::algebra::q(1, 4)),
    ]
}

/// `r^2 (r-2)^2`.
pub fn nu_denominator() -> Poly {
    Poly::from_ints(&[0, 0, 4, -4, 1])
}

/// `(numerator, denominator)` of `nu` as polynomials in `r`.
pub fn build_nu(mode: &ModeSpec) -> (Poly, Poly) {
    let num = Poly::from_coeffs(
        nu_numerator_in_s(mode.kind, mode.l)
            .iter()
            .map(|c| c.eval(&mode.s))
            .collect(),
    );
    (num, nu_denominator())
}

/// Coefficients of `1, 1/r^2, 1/r, 1/(r-2)^2, 1/(r-2)` in `nu`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NuFraction {
    pub const_term: Rational,
    pub inv_r2: Rational,
    pub inv_r: Rational,
    pub inv_rm2_sq: Rational,
    pub inv_rm2: Rational,
}

impl NuFraction {
    /// `nu * r^2 (r-2)^2` rebuilt from the partial fractions.
    pub fn recombine(&self) -> Poly {
        let r = Poly::x();
        let rm2 = Poly::from_ints(&[-2, 1]);
        let r2 = &r * &r;
        let rm2_sq = &rm2 * &rm2;
        let c = |v: &Rational| Poly::constant(v.clone());
        c(&self.const_term) * &r2 * &rm2_sq
            + c(&self.inv_r2) * &rm2_sq
            + c(&self.inv_r) * &r * &rm2_sq
            + c(&self.inv_rm2_sq) * &r2
            + c(&self.inv_rm2) * &r2 * &rm2
    }
}

/// Laurent data of `nu` at its poles, read off the numerator.
pub fn partial_fractions(mode: &ModeSpec) -> NuFraction {
    let (num, _) = build_nu(mode);
    let dn = num.derivative();
    let zero = Rational::zero();
    let two = Rational::from(2);
    let four = Rational::from(4);
    // near r = 0: nu = g(r)/r^2 with g = num/(r-2)^2
    let g0 = num.eval(&zero) / &four;
    let dg0 = dn.eval(&zero) / &four + num.eval(&zero) / &four;
    // near r = 2: nu = h(r)/(r-2)^2 with h = num/r^2
    let h2 = num.eval(&two) / &four;
    let dh2 = dn.eval(&two) / &four - num.eval(&two) / &four;
    NuFraction {
        const_term: num.coeff(4),
        inv_r2: g0,
        inv_r: dg0,
        inv_rm2_sq: h2,
        inv_rm2: dh2,
    }
}

/// The algebraically special value `s = l(l-1)(l+1)(l+2)/6`.
pub fn special_frequency(l: u32) -> Result<Rational, ModeError> {
    if l < 2 {
        return Err(ModeError::NoSpecialFrequency(l));
    }
    let l = u64::from(l);
    Ok(Rational::from(l * (l - 1) * (l + 1) * (l + 2) / 6))
}

/// Cleared residual of the original master equation
///
/// ```text
/// psi'' + 2/(r(r-2)) psi' - [ s^2 r^2/(4(r-2)^2) + L/(r(r-2)) + 2 beta/(r^2(r-2)) ] psi = 0
/// ```
///
/// for `psi = p(r) r^a (r-2)^b e^{c r}`. Writing `psi'/psi = n/(p q)` with
/// `q = r(r-2)`, the equation times `(p q)^2` is the polynomial returned
/// here; it vanishes identically exactly when `psi` is a solution.
pub fn master_residual(
    mode: &ModeSpec,
    p: &Poly,
    a: &Rational,
    b: &Rational,
    c: &Rational,
) -> Poly {
    let r = Poly::x();
    let rm2 = Poly::from_ints(&[-2, 1]);
    let qq = &r * &rm2;
    let k = |v: &Rational| Poly::constant(v.clone());
    let n = p.derivative() * &qq + k(a) * &rm2 * p + k(b) * &r * p + k(c) * &qq * p;
    let pq = p * &qq;
    let potential = Poly::monomial(4, &mode.s * &mode.s / Rational::from(4))
        + k(&mode.angular()) * &qq
        + k(&(Rational::from(2) * mode.beta())) * &rm2;
    n.derivative() * &pq - &n * pq.derivative() + &n * &n + k(&Rational::from(2)) * &n * p
        - p * p * potential
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::q;

    fn grav(l: u32, s: Rational) -> ModeSpec {
        ModeSpec::gravitational(l, s).unwrap()
    }

    #[test]
    fn numerator_examples() {
        let (num, den) = build_nu(&grav(2, q(4, 1)));
        assert_eq!(num, Poly::from_ints(&[15, -20, 6, 0, 4]));
        assert_eq!(den, Poly::from_ints(&[0, 0, 4, -4, 1]));
        let scalar = ModeSpec::new(PerturbationKind::Scalar, 0, q(0, 1)).unwrap();
        // 2(beta - L - 1) vanishes for beta = 1, l = 0
        assert_eq!(build_nu(&scalar).0, Poly::from_ints(&[-1]));
        let em = ModeSpec::new(PerturbationKind::Electromagnetic, 1, q(0, 1)).unwrap();
        assert_eq!(build_nu(&em).0, Poly::from_ints(&[3, -6, 2]));
    }

    #[test]
    fn partial_fraction_examples() {
        let pf = partial_fractions(&grav(2, q(4, 1)));
        assert_eq!(pf.inv_r2, q(15, 4));
        assert_eq!(pf.inv_rm2_sq, q(63, 4));
        let pf = partial_fractions(&grav(3, q(1, 2)));
        assert!(pf.inv_rm2_sq.is_zero());
    }

    #[test]
    fn closed_form_partial_fractions() {
        for kind in PerturbationKind::ALL {
            for l in kind.min_l()..6 {
                for s in [q(0, 1), q(1, 2), q(7, 3), q(20, 1)] {
                    let m = ModeSpec::new(kind, l, s.clone()).unwrap();
                    let b = m.beta();
                    let big_l = m.angular();
                    let four = Rational::from(4);
                    let pf = partial_fractions(&m);
                    assert_eq!(pf.const_term, &s * &s / &four);
                    assert_eq!(pf.inv_r2, (Rational::from(3) - &four * &b) / &four);
                    assert_eq!(
                        pf.inv_r,
                        (Rational::from(1) - Rational::from(2) * &b - Rational::from(2) * &big_l) / &four
                    );
                    assert_eq!(pf.inv_rm2_sq, (&four * &s * &s - Rational::one()) / &four);
                    assert_eq!(
                        pf.inv_rm2,
                        (&four * &s * &s + Rational::from(2) * &big_l + Rational::from(2) * &b
                            - Rational::one())
                            / &four
                    );
                }
            }
        }
    }

    #[test]
    fn special_frequencies() {
        assert_eq!(special_frequency(2).unwrap(), q(4, 1));
        assert_eq!(special_frequency(3).unwrap(), q(20, 1));
        assert_eq!(special_frequency(4).unwrap(), q(60, 1));
        assert!(special_frequency(1).is_err());
    }

    #[test]
    fn angular_index_bounds() {
        assert!(ModeSpec::gravitational(1, q(1, 1)).is_err());
        assert!(ModeSpec::new(PerturbationKind::Electromagnetic, 1, q(1, 1)).is_ok());
        assert!(ModeSpec::new(PerturbationKind::Scalar, 0, q(1, 1)).is_ok());
        assert_eq!("em".parse::<PerturbationKind>().unwrap(), PerturbationKind::Electromagnetic);
    }
}
