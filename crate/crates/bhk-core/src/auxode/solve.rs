use serde::Serialize;

use super::{build_auxiliary, AuxiliaryODE};
use crate::algebra::{poly_determinant, Matrix, Poly, Rational};
use crate::kovacic::Family;
use crate::master::ModeSpec;
use crate::{Error, Result};

/// A frequency together with a polynomial solution found there.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LowDegreeSolution {
    pub s: Rational,
    pub poly: Poly,
}

/// Column `k` holds the coefficients of the operator applied to `x^k`,
/// `k = 0..=d`. The leading square block is the tridiagonal system of the
/// recurrence about `x = 0`.
pub fn monomial_action_matrix(ode: &AuxiliaryODE, d: usize) -> Matrix {
    let images: Vec<Poly> = (0..=d).map(|k| ode.apply(&Poly::monomial(k, Rational::one()))).collect();
    let rows = images
        .iter()
        .filter_map(Poly::degree)
        .max()
        .map_or(d + 1, |m| (m + 1).max(d + 1));
    let mut m = Matrix::zeros(rows, d + 1);
    for (k, img) in images.iter().enumerate() {
        for (i, c) in img.coeffs().iter().enumerate() {
            m.set(i, k, c.clone());
        }
    }
    m
}

/// Basis of the polynomial solutions of degree at most `d`, by exact
/// elimination on the monomial action.
pub fn brute_force_polynomial_solutions(ode: &AuxiliaryODE, d: usize) -> Vec<Poly> {
    monomial_action_matrix(ode, d)
        .nullspace()
        .into_iter()
        .map(Poly::from_coeffs)
        .collect()
}

fn exact_degree_solutions(ode: &AuxiliaryODE, d: usize) -> Vec<Poly> {
    brute_force_polynomial_solutions(ode, d)
        .into_iter()
        .filter(|p| p.degree() == Some(d))
        .map(|p| p.monic())
        .collect()
}

/// Entries of the monomial action as polynomials in `s`, recovered from
/// samples; every operator coefficient is at most quadratic in `s`.
fn symbolic_action(family: &Family, l: u32, d: usize) -> Result<Vec<Vec<Poly>>> {
    const S_DEGREE: usize = 2;
    let samples: Vec<Rational> = (1..=S_DEGREE as i64 + 3).map(Rational::from).collect();
    let mut tables = Vec::with_capacity(samples.len());
    for s in &samples {
        let mode = ModeSpec::new(family.kind, l, s.clone())?;
        let ode = build_auxiliary(family, &mode)?;
        tables.push(monomial_action_matrix(&ode, d));
    }
    let rows = tables.iter().map(Matrix::rows).max().unwrap_or(d + 1);
    let mut out = vec![vec![Poly::zero(); d + 1]; rows];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, entry) in row.iter_mut().enumerate() {
            let points: Vec<(Rational, Rational)> = samples
                .iter()
                .zip(&tables)
                .map(|(s, t)| {
                    let v = if i < t.rows() { t.get(i, j).clone() } else { Rational::zero() };
                    (s.clone(), v)
                })
                .collect();
            let p = Poly::interpolate(&points);
            if p.degree().unwrap_or(0) > S_DEGREE {
                return Err(Error::domain("operator coefficient is not quadratic in s"));
            }
            *entry = p;
        }
    }
    Ok(out)
}

/// Every `(d+1)`-row subset of `0..rows`.
fn row_subsets(rows: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, rows: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..rows {
            cur.push(i);
            go(i + 1, rows, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, rows, k, &mut Vec::new(), &mut out);
    out
}

/// Polynomial solutions of exact degree `d` with `s > 0`. When the degree
/// does not fix `s`, the frequency is solved for together with the
/// coefficients: the maximal minors of the action matrix must all vanish.
pub fn solve_low_degree(family: &Family, l: u32, d: usize) -> Result<Vec<LowDegreeSolution>> {
    let target = Rational::from(d);
    if let Some(s) = family.degree.solve(&target) {
        if !s.is_positive() {
            return Ok(Vec::new());
        }
        let mode = ModeSpec::new(family.kind, l, s.clone())?;
        let ode = build_auxiliary(family, &mode)?;
        return Ok(exact_degree_solutions(&ode, d)
            .into_iter()
            .map(|poly| LowDegreeSolution { s: s.clone(), poly })
            .collect());
    }
    if family.degree.constant != target {
        return Ok(Vec::new());
    }
    let action = symbolic_action(family, l, d)?;
    let mut g = Poly::zero();
    for rows in row_subsets(action.len(), d + 1) {
        let block: Vec<Vec<Poly>> = rows.iter().map(|&i| action[i].clone()).collect();
        g = g.gcd(&poly_determinant(&block));
    }
    if g.is_zero() {
        return Err(Error::domain(format!(
            "{} has a degree {d} solution for every s",
            family.label
        )));
    }
    let mut out = Vec::new();
    for s in g.rational_roots()? {
        if !s.is_positive() {
            continue;
        }
        let mode = ModeSpec::new(family.kind, l, s.clone())?;
        let ode = build_auxiliary(family, &mode)?;
        for poly in exact_degree_solutions(&ode, d) {
            out.push(LowDegreeSolution { s: s.clone(), poly });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::q;
    use crate::kovacic::family_by_label;
    use crate::master::{self, PerturbationKind};

    fn family(kind: PerturbationKind, label: &str) -> Family {
        let mode = ModeSpec::new(kind, kind.min_l().max(2), q(1, 1)).unwrap();
        family_by_label(&mode, label).unwrap()
    }

    #[test]
    fn g8_special_frequency() {
        let g8 = family(PerturbationKind::Gravitational, "G8");
        let sols = solve_low_degree(&g8, 2, 1).unwrap();
        assert_eq!(sols, vec![LowDegreeSolution { s: q(4, 1), poly: Poly::from_coeffs(vec![q(3, 2), q(1, 1)]) }]);
        let sols = solve_low_degree(&g8, 3, 1).unwrap();
        assert_eq!(sols, vec![LowDegreeSolution { s: q(20, 1), poly: Poly::from_coeffs(vec![q(3, 5), q(1, 1)]) }]);
        assert_eq!(sols[0].s, master::special_frequency(3).unwrap());
    }

    #[test]
    fn marginal_families_are_empty() {
        for l in 2..6 {
            let g5 = family(PerturbationKind::Gravitational, "G5");
            assert!(solve_low_degree(&g5, l, 1).unwrap().is_empty());
            let g6 = family(PerturbationKind::Gravitational, "G6");
            assert!(solve_low_degree(&g6, l, 0).unwrap().is_empty());
        }
        let e6 = family(PerturbationKind::Electromagnetic, "E6");
        assert!(solve_low_degree(&e6, 1, 0).unwrap().is_empty());
    }

    #[test]
    fn e7_small_grid_has_no_solution() {
        let mode = ModeSpec::new(PerturbationKind::Electromagnetic, 1, q(1, 1)).unwrap();
        let e7 = family_by_label(&mode, "E7").unwrap();
        let ode = build_auxiliary(&e7, &mode).unwrap();
        assert!(brute_force_polynomial_solutions(&ode, 2).is_empty());
        // d = 2s is the degree at infinity, so the top row vanishes
        assert_eq!(monomial_action_matrix(&ode, 2).rows(), 3);
    }
}
