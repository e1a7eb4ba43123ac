//! Dense rational matrices with fraction-free (Bareiss) elimination.
//!
//! Rows are first scaled to integers; elimination then runs over `BigInt`
//! with exact divisions by the previous pivot, so no intermediate rational
//! ever needs reducing.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::poly::Poly;
use super::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

/// Fraction-free row echelon form of an integer-scaled copy.
struct Echelon {
    a: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
    swaps: usize,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// Leading `k x k` block.
    pub fn leading_block(&self, k: usize) -> Matrix {
        let rows = (0..k).map(|i| self.row(i)[..k].to_vec()).collect();
        Matrix::from_rows(rows)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Integer rows and the per-row factors used to clear denominators.
    fn integer_rows(&self) -> (Vec<Vec<BigInt>>, Vec<BigInt>) {
        let mut out = Vec::with_capacity(self.rows);
        let mut scales = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let row = self.row(i);
            let lcm = row.iter().fold(BigInt::one(), |acc, c| super::rational::lcm(&acc, c.denom()));
            out.push(row.iter().map(|c| c.numer() * (&lcm / c.denom())).collect());
            scales.push(lcm);
        }
        (out, scales)
    }

    fn echelon(&self) -> (Echelon, Vec<BigInt>) {
        let (mut a, scales) = self.integer_rows();
        let mut prev = BigInt::one();
        let mut pivots = Vec::new();
        let mut swaps = 0;
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            if p != r {
                a.swap(p, r);
                swaps += 1;
            }
            for i in r + 1..self.rows {
                for j in c + 1..self.cols {
                    let v = (&a[r][c] * &a[i][j] - &a[i][c] * &a[r][j]) / &prev;
                    a[i][j] = v;
                }
                a[i][c] = BigInt::zero();
            }
            prev = a[r][c].clone();
            pivots.push(c);
            r += 1;
        }
        (Echelon { a, pivots, swaps }, scales)
    }

    pub fn rank(&self) -> usize {
        self.echelon().0.pivots.len()
    }

    /// Exact determinant of a square matrix.
    pub fn determinant(&self) -> Rational {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        if self.rows == 0 {
            return Rational::one();
        }
        let (ech, scales) = self.echelon();
        if ech.pivots.len() < self.rows {
            return Rational::zero();
        }
        let n = self.rows;
        let mut det = ech.a[n - 1][n - 1].clone();
        if ech.swaps % 2 == 1 {
            det = -det;
        }
        let denom = scales.iter().fold(BigInt::one(), |acc, s| acc * s);
        Rational::new(det, denom)
    }

    /// Basis of the right nullspace, one vector per free column, each with a
    /// unit entry at its free column.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let (ech, _) = self.echelon();
        let free: Vec<usize> = (0..self.cols).filter(|c| !ech.pivots.contains(c)).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &f in &free {
            let mut x = vec![Rational::zero(); self.cols];
            x[f] = Rational::one();
            for (row, &pc) in ech.pivots.iter().enumerate().rev() {
                let mut acc = Rational::zero();
                for (xj, a) in x.iter().zip(&ech.a[row]).skip(pc + 1) {
                    if !xj.is_zero() && !a.is_zero() {
                        acc += &(Rational::int(a.clone()) * xj);
                    }
                }
                x[pc] = -acc / Rational::int(ech.a[row][pc].clone());
            }
            basis.push(x);
        }
        basis
    }
}

/// Cofactor expansion over polynomial entries; meant for small sizes.
pub fn poly_determinant(rows: &[Vec<Poly>]) -> Poly {
    let n = rows.len();
    assert!(rows.iter().all(|r| r.len() == n), "determinant of a non-square matrix");
    if n == 0 {
        return Poly::one();
    }
    let mut total = Poly::zero();
    for (j, entry) in rows[0].iter().enumerate() {
        if entry.is_zero() {
            continue;
        }
        let minor: Vec<Vec<Poly>> = rows[1..]
            .iter()
            .map(|r| r.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, v)| v.clone()).collect())
            .collect();
        let term = entry * &poly_determinant(&minor);
        total = if j % 2 == 0 { total + term } else { total - term };
    }
    total
}
