use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{poly_determinant, Poly, Rational};
use crate::auxode::HeunForm;
use crate::master;
use crate::{Error, Result};

/// Which tridiagonal system the coefficients come from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TridiagSource {
    /// Recurrence of the power series about `z = 0`.
    Necessary,
    /// Coefficients of the expansion in truncated Kummer functions.
    HautotKummer,
    /// Coefficients of the expansion in associated Laguerre polynomials.
    HautotLaguerre,
}

impl TridiagSource {
    pub const ALL: [TridiagSource; 3] = [Self::Necessary, Self::HautotKummer, Self::HautotLaguerre];
}

/// Heun parameters with entries polynomial in one symbol (`s`), so the
/// same code serves numeric and symbolic determinants. `c` doubles as `j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TridiagParams {
    pub a: Poly,
    pub b: Poly,
    pub c: Poly,
    pub d: Poly,
    pub n: Poly,
}

impl TridiagParams {
    pub fn from_rationals(a: &Rational, b: &Rational, c: &Rational, d: &Rational, n: &Rational) -> Self {
        let k = |v: &Rational| Poly::constant(v.clone());
        TridiagParams { a: k(a), b: k(b), c: k(c), d: k(d), n: k(n) }
    }

    /// Confluent Heun form of the `G7` family at symbolic `s`, with
    /// polynomial degree `n = 2s + 1` and `c = j = 3`.
    pub fn g7(l: u32) -> Self {
        let s = Poly::x();
        let two_s = s.scale(&Rational::from(2));
        TridiagParams {
            a: two_s.clone(),
            b: (&two_s + Poly::one()).scale(&Rational::from(-2)),
            c: Poly::constant(Rational::from(3)),
            d: Poly::constant(Rational::from(2) - master::angular(l)) + s.scale(&Rational::from(6)),
            n: two_s + Poly::one(),
        }
    }
}

/// Row `k`: `lower` sits in column `k-1`, `diag` in `k`, `upper` in `k+1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TridiagRow {
    pub lower: Poly,
    pub diag: Poly,
    pub upper: Poly,
}

pub fn tridiag_coeffs(source: TridiagSource, p: &TridiagParams, k: usize) -> TridiagRow {
    let k = Poly::constant(Rational::from(k));
    let one = Poly::one();
    let two = Rational::from(2);
    let km1 = &k - &one;
    let kp1 = &k + &one;
    match source {
        TridiagSource::Necessary => TridiagRow {
            lower: &p.a * (&km1 - &p.n),
            diag: &p.d + &k * (&p.b + &km1),
            upper: (&p.c - &k) * &kp1,
        },
        TridiagSource::HautotKummer | TridiagSource::HautotLaguerre => {
            let j = &p.c;
            let diag = &p.d - j * &p.n + &k * (&p.b + j.scale(&two) - k.scale(&two) + p.n.scale(&two));
            if source == TridiagSource::HautotKummer {
                TridiagRow {
                    lower: (&km1 - j) * (&km1 - &p.n),
                    diag,
                    upper: &kp1 * (&kp1 - &p.n - &p.a - &p.b - j),
                }
            } else {
                TridiagRow {
                    lower: (&km1 - j) * (&k - &p.n - &p.a - &p.b - j),
                    diag,
                    upper: &kp1 * (&k - &p.n),
                }
            }
        }
    }
}

/// The leading `(size x size)` block of the chosen system.
pub fn tridiag_block(source: TridiagSource, p: &TridiagParams, size: usize) -> Vec<Vec<Poly>> {
    let mut rows = vec![vec![Poly::zero(); size]; size];
    for (k, row) in rows.iter_mut().enumerate() {
        let t = tridiag_coeffs(source, p, k);
        if k > 0 {
            row[k - 1] = t.lower;
        }
        row[k] = t.diag;
        if k + 1 < size {
            row[k + 1] = t.upper;
        }
    }
    rows
}

/// Necessary-condition determinant of order four for `G7`, as a
/// polynomial in `s`.
pub fn det_a(l: u32) -> Poly {
    poly_determinant(&tridiag_block(TridiagSource::Necessary, &TridiagParams::g7(l), 4))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EqualityTrial {
    pub a: Rational,
    pub b: Rational,
    pub d: Rational,
    pub n: Rational,
    pub necessary: Rational,
    pub kummer: Rational,
    pub laguerre: Rational,
}

impl EqualityTrial {
    pub fn equal(&self) -> bool {
        self.necessary == self.kummer && self.necessary == self.laguerre
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EqualityReport {
    pub j: usize,
    /// Total degree of either determinant in `(a, b, d, n)`.
    pub degree_bound: usize,
    pub trials: Vec<EqualityTrial>,
}

impl EqualityReport {
    pub fn passed(&self) -> bool {
        self.trials.iter().all(EqualityTrial::equal)
    }

    pub fn witness(&self) -> Option<&EqualityTrial> {
        self.trials.iter().find(|t| !t.equal())
    }
}

fn block_value(source: TridiagSource, p: &TridiagParams, size: usize) -> Rational {
    poly_determinant(&tridiag_block(source, p, size)).coeff(0)
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    Rational::new(rng.gen_range(-400i64..=400), rng.gen_range(1i64..=37))
}

/// Compares the three `(j+1)`-order determinants at random rational points.
/// At least `2(j+1) + 1` points are used, one more than the degree bound.
pub fn determinant_equality_check(j: usize, trials: usize, seed: u64) -> EqualityReport {
    let degree_bound = 2 * (j + 1);
    let count = trials.max(degree_bound + 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let c = Rational::from(j);
    let trials = (0..count)
        .map(|_| {
            let [a, b, d, n] = std::array::from_fn(|_| random_rational(&mut rng));
            let p = TridiagParams::from_rationals(&a, &b, &c, &d, &n);
            EqualityTrial {
                necessary: block_value(TridiagSource::Necessary, &p, j + 1),
                kummer: block_value(TridiagSource::HautotKummer, &p, j + 1),
                laguerre: block_value(TridiagSource::HautotLaguerre, &p, j + 1),
                a,
                b,
                d,
                n,
            }
        })
        .collect();
    EqualityReport { j, degree_bound, trials }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SufficiencyVerdict {
    pub j: u64,
    pub n: u64,
    pub determinant: Rational,
    pub satisfied: bool,
}

/// Hautot's sufficient condition for a degree-`n` polynomial expandable in
/// the special bases: `c = j >= 0`, `e = -a n` and a vanishing determinant
/// of order `j + 1`.
pub fn hautot_sufficiency_check(heun: &HeunForm, n: u64) -> Result<SufficiencyVerdict> {
    let j = heun
        .c
        .to_i64()
        .filter(|_| heun.c.is_integer())
        .and_then(|j| u64::try_from(j).ok())
        .ok_or_else(|| Error::NotApplicable(format!("c = {} is not a non-negative integer", heun.c)))?;
    let nr = Rational::from(n);
    if heun.e != -(&heun.a * &nr) {
        return Err(Error::NotApplicable(format!(
            "e = {} differs from -a n = {}",
            heun.e,
            -(&heun.a * &nr)
        )));
    }
    let p = TridiagParams::from_rationals(&heun.a, &heun.b, &heun.c, &heun.d, &nr);
    let determinant = block_value(TridiagSource::Necessary, &p, j as usize + 1);
    Ok(SufficiencyVerdict { j, n, satisfied: determinant.is_zero(), determinant })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::q;

    fn params() -> TridiagParams {
        TridiagParams::from_rationals(&q(3, 2), &q(-7, 1), &q(2, 1), &q(5, 3), &q(4, 1))
    }

    #[test]
    fn coefficient_shapes() {
        let p = params();
        let t = tridiag_coeffs(TridiagSource::Necessary, &p, 2);
        assert!(t.upper.is_zero());
        assert_eq!(t.lower, Poly::constant(q(3, 2) * q(-3, 1)));
        let w = tridiag_coeffs(TridiagSource::HautotLaguerre, &p, 1);
        assert_eq!(w.upper, Poly::constant(q(2, 1) * q(-3, 1)));
        let t = tridiag_coeffs(TridiagSource::HautotKummer, &p, 0);
        assert_eq!(t.diag, Poly::constant(q(5, 3) - q(8, 1)));
        assert_eq!(t.upper, Poly::constant(q(1, 1) - q(4, 1) - q(3, 2) + q(7, 1) - q(2, 1)));
    }

    #[test]
    fn two_by_two_by_hand() {
        // both reduce to d(d + b) + a n when c = j = 1
        let (a, b, d, n) = (q(2, 7), q(-3, 1), q(1, 5), q(9, 2));
        let p = TridiagParams::from_rationals(&a, &b, &q(1, 1), &d, &n);
        let expect = &d * (&d + &b) + &a * &n;
        for source in TridiagSource::ALL {
            assert_eq!(block_value(source, &p, 2), expect, "{source:?}");
        }
    }

    #[test]
    fn det_a_roots() {
        let det = det_a(2);
        assert!(det.eval(&q(4, 1)).is_zero());
        assert!(det.eval(&q(-4, 1)).is_zero());
        assert!(!det.eval(&q(1, 1)).is_zero());
        assert!(det_a(3).eval(&q(20, 1)).is_zero());
        assert!(det_a(3).eval(&q(-20, 1)).is_zero());
    }

    #[test]
    fn equality_small_orders() {
        for j in 0..=3 {
            let report = determinant_equality_check(j, 10, 7);
            assert!(report.passed(), "{:?}", report.witness());
            assert!(report.trials.len() > 2 * (j + 1));
        }
    }

    #[test]
    fn sufficiency_preconditions() {
        let h = HeunForm { a: q(2, 1), b: q(0, 1), c: q(-5, 1), d: q(0, 1), e: q(0, 1) };
        assert!(matches!(hautot_sufficiency_check(&h, 1), Err(Error::NotApplicable(_))));
        let h = HeunForm { c: q(1, 1), e: q(1, 1), ..h };
        assert!(matches!(hautot_sufficiency_check(&h, 1), Err(Error::NotApplicable(_))));
    }
}
