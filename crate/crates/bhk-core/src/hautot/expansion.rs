use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::{kummer_poly, laguerre_poly, phi, phi_laguerre, two_s};
use crate::algebra::{factorial, Poly, Rational};
use crate::auxode::chandrasekhar_coeffs;
use crate::master;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Basis {
    Kummer,
    Laguerre,
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Basis::Kummer => "kummer",
            Basis::Laguerre => "laguerre",
        })
    }
}

impl FromStr for Basis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "kummer" => Ok(Basis::Kummer),
            "laguerre" => Ok(Basis::Laguerre),
            _ => Err(Error::domain(format!("unknown basis {s}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BasisTerm {
    pub label: String,
    /// The basis function as a polynomial in `w = r - 2`.
    pub poly_w: Poly,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SystemRow {
    pub row: usize,
    pub residual: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExpansionReport {
    pub l: u32,
    pub s: Rational,
    pub basis: Basis,
    pub coefficients: [Rational; 4],
    pub terms: Vec<BasisTerm>,
    pub assembled: Poly,
    pub target: Poly,
    pub equal: bool,
    /// Residuals of the homogeneous 4x4 system for the coefficients,
    /// written in the Kummer normalisation.
    pub system: Vec<SystemRow>,
}

impl ExpansionReport {
    pub fn passed(&self) -> bool {
        self.equal && self.system.iter().all(|r| r.residual.is_zero())
    }
}

fn special(l: u32) -> Result<(Rational, u64)> {
    let s = master::special_frequency(l)?;
    let n = two_s(&s)?;
    Ok((s, n))
}

/// The four basis functions in `w`, evaluated at `u = -s w`.
pub fn basis_terms(l: u32, basis: Basis) -> Result<Vec<BasisTerm>> {
    let (s, n) = special(l)?;
    let low = Rational::one() - Rational::from(n);
    let alpha = -Rational::from(n);
    let polys: [(String, Poly); 4] = match basis {
        Basis::Kummer => [
            ("u^(2s) F(-1, 2s+1; u)".into(), phi(&s, 0)?),
            ("u^(2s)".into(), phi(&s, -1)?),
            ("F(-(2s-1), 1-2s; u)".into(), kummer_poly(n - 1, &low)?.poly),
            ("F(-(2s-2), 1-2s; u)".into(), kummer_poly(n - 2, &low)?.poly),
        ],
        Basis::Laguerre => [
            ("u^(2s) L_1^(2s)(u)".into(), phi_laguerre(&s, 0)?),
            ("u^(2s)".into(), phi_laguerre(&s, -1)?),
            ("L_(2s-1)^(-2s)(u)".into(), laguerre_poly(n - 1, &alpha).poly),
            ("L_(2s-2)^(-2s)(u)".into(), laguerre_poly(n - 2, &alpha).poly),
        ],
    };
    let to_w = -s.clone();
    Ok(polys
        .into_iter()
        .map(|(label, p)| BasisTerm { label, poly_w: p.compose_linear(&to_w, &Rational::zero()) })
        .collect())
}

/// Closed-form expansion coefficients at the special frequency.
pub fn closed_form_coefficients(l: u32, basis: Basis) -> Result<[Rational; 4]> {
    let (s, n) = special(l)?;
    let mu2 = master::mu_squared(l);
    let ell = master::angular(l);
    let fact = Rational::int(factorial(n));
    let sp1 = Rational::from(n + 1);
    let exponent = i32::try_from(n + 2).map_err(|_| Error::domain("2s too large"))?;
    let base = s.pow(-exponent) / &mu2;
    let one = Rational::one();
    let three = Rational::from(3);
    Ok(match basis {
        Basis::Kummer => {
            let a0 = base * &sp1;
            [
                a0.clone(),
                -(&ell + &one) * &a0 / &sp1,
                -(&three * &fact * &a0) / &sp1,
                -((&ell - &three) * &fact * &a0) / &sp1,
            ]
        }
        Basis::Laguerre => {
            let a0 = base;
            [
                a0.clone(),
                -(&ell + &one) * &a0,
                &three * &fact * &a0,
                -((&ell - &three) * &fact * &a0) / Rational::from(n - 1),
            ]
        }
    })
}

/// `sum_k c_k term_k` in `w`.
pub fn assemble(terms: &[BasisTerm], coefficients: &[Rational]) -> Poly {
    terms
        .iter()
        .zip(coefficients)
        .fold(Poly::zero(), |acc, (t, c)| acc + t.poly_w.scale(c))
}

/// Residuals of the homogeneous system obtained by applying the operator in
/// `u` to the Kummer-basis expansion and reducing with the contiguous
/// relations. Laguerre coefficients are mapped to the Kummer normalisation
/// first.
fn system_residuals(l: u32, n: u64, basis: Basis, c: &[Rational; 4]) -> Vec<SystemRow> {
    let np1 = Rational::from(n + 1);
    let nm1 = Rational::from(n - 1);
    let [a0, a1, a2, a3] = match basis {
        Basis::Kummer => c.clone(),
        Basis::Laguerre => [&c[0] * &np1, c[1].clone(), -c[2].clone(), &c[3] * &nm1],
    };
    let ell = master::angular(l);
    let one = Rational::one();
    let three = Rational::from(3);
    let fact = Rational::int(factorial(n - 1));
    let rows = [
        -(&one + &ell) * &a0 - &np1 * &a1,
        &three * &a0 + (&three - &ell) * &a1 + Rational::from(2) * &a2 / &fact,
        (&three - &ell) * &a2 + &three * &a3,
        &nm1 * &a2 - (&one + &ell) * &a3,
    ];
    rows.into_iter().enumerate().map(|(row, residual)| SystemRow { row, residual }).collect()
}

fn build_report(l: u32, basis: Basis, coefficients: [Rational; 4]) -> Result<ExpansionReport> {
    let (s, n) = special(l)?;
    let terms = basis_terms(l, basis)?;
    let assembled = assemble(&terms, &coefficients);
    let target = chandrasekhar_coeffs(l)?;
    let system = system_residuals(l, n, basis, &coefficients);
    Ok(ExpansionReport {
        l,
        s,
        basis,
        equal: assembled == target,
        coefficients,
        terms,
        assembled,
        target,
        system,
    })
}

/// Expands the special polynomial in the chosen basis and compares the sum
/// with the closed-form coefficients exactly.
pub fn extended_expansion(l: u32, basis: Basis) -> Result<ExpansionReport> {
    let report = build_report(l, basis, closed_form_coefficients(l, basis)?)?;
    if !report.equal {
        return Err(Error::NotASolution {
            what: format!("{basis} expansion for l = {l}"),
            residual: &report.assembled - &report.target,
        });
    }
    if let Some(row) = report.system.iter().find(|r| !r.residual.is_zero()) {
        return Err(Error::CheckFailed {
            check: format!("{basis} coefficient system"),
            detail: format!("row {} leaves {}", row.row, row.residual),
        });
    }
    Ok(report)
}
