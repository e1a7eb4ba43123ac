//! Dense univariate polynomials over [`Rational`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use super::rational::Rational;
use super::AlgebraError;

/// Coefficients indexed by power; the last entry is never zero.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Poly::from_coeffs(vec![c])
    }

    /// The identity polynomial `x`.
    pub fn x() -> Self {
        Poly::monomial(1, Rational::one())
    }

    pub fn monomial(power: usize, c: Rational) -> Self {
        let mut coeffs = vec![Rational::zero(); power + 1];
        coeffs[power] = c;
        Poly::from_coeffs(coeffs)
    }

    /// `c0 + c1 x`.
    pub fn linear(c0: Rational, c1: Rational) -> Self {
        Poly::from_coeffs(vec![c0, c1])
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Rational::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::from_coeffs(coeffs.iter().map(|&c| Rational::from(c)).collect())
    }

    /// Monic polynomial with the given roots.
    pub fn from_roots(roots: &[Rational]) -> Self {
        roots.iter().fold(Poly::one(), |acc, r| {
            acc * Poly::linear(-r, Rational::one())
        })
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    /// Coefficient of `x^i`, zero beyond the degree.
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiply by `x^k`.
    pub fn shift_up(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    pub fn derivative(&self) -> Poly {
        Poly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from(i))
                .collect(),
        )
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// Numerators over the least common denominator.
    fn integer_form(&self) -> (Vec<BigInt>, BigInt) {
        let den = self.coeffs.iter().fold(BigInt::one(), |acc, c| super::rational::lcm(&acc, c.denom()));
        let nums = self.coeffs.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        (nums, den)
    }

    /// `q(x) = p(x + c)`. With `c = u/v`, `v^n p(x + u/v)` is an integer
    /// Taylor shift in `v x`, so the inner loop never reduces a fraction.
    pub fn shift(&self, c: &Rational) -> Poly {
        if c.is_zero() || self.coeffs.len() < 2 {
            return self.clone();
        }
        let (nums, den) = self.integer_form();
        let n = nums.len() - 1;
        let (u, v) = (c.numer(), c.denom());
        let mut vpow = BigInt::one();
        let mut a = vec![BigInt::zero(); n + 1];
        for i in (0..=n).rev() {
            a[i] = &nums[i] * &vpow;
            vpow *= v;
        }
        // vpow = v^(n+1)
        for i in 0..=n {
            for j in (i..n).rev() {
                let t = &a[j + 1] * u;
                a[j] += t;
            }
        }
        let total = &den * (vpow / v);
        let mut vk = BigInt::one();
        let coeffs = a
            .into_iter()
            .map(|ak| {
                let c = Rational::new(ak * &vk, total.clone());
                vk *= v;
                c
            })
            .collect();
        Poly::from_coeffs(coeffs)
    }

    /// `q(x) = p(alpha x + beta)`.
    pub fn compose_linear(&self, alpha: &Rational, beta: &Rational) -> Poly {
        let shifted = self.shift(beta);
        let mut scale = Rational::one();
        let mut out = Vec::with_capacity(shifted.coeffs.len());
        for c in shifted.coeffs {
            out.push(c * &scale);
            scale *= alpha;
        }
        Poly::from_coeffs(out)
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut result = Poly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Euclidean division: `self = q * divisor + r` with `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &Poly) -> Result<(Poly, Poly), AlgebraError> {
        let dd = divisor.degree().ok_or(AlgebraError::DivisionByZero)?;
        let lead_inv = divisor.leading().recip();
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree() else {
            return Ok((Poly::zero(), Poly::zero()));
        };
        if nd < dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut quot = vec![Rational::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let c = &rem[k + dd] * &lead_inv;
            if !c.is_zero() {
                for (j, dj) in divisor.coeffs.iter().enumerate() {
                    let t = &c * dj;
                    rem[k + j] -= &t;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Poly::from_coeffs(quot), Poly::from_coeffs(rem)))
    }

    /// Quotient of an exact division; errors when a remainder is left.
    pub fn exact_div(&self, divisor: &Poly) -> Result<Poly, AlgebraError> {
        let (q, r) = self.div_rem(divisor)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(AlgebraError::InexactDivision)
        }
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            Poly::zero()
        } else {
            self.scale(&self.leading().recip())
        }
    }

    /// Monic greatest common divisor (zero when both inputs are zero).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Square root with positive leading coefficient, when `self` is the
    /// square of a polynomial over the rationals.
    pub fn sqrt_exact(&self) -> Option<Poly> {
        let Some(n) = self.degree() else {
            return Some(Poly::zero());
        };
        if n % 2 == 1 {
            return None;
        }
        let m = n / 2;
        let lead = self.leading().sqrt_exact()?;
        let two_lead = Rational::from(2) * &lead;
        // top-down: coefficient of x^{m+k} in root^2 fixes root_{m-k}
        let mut root = vec![Rational::zero(); m + 1];
        root[m] = lead;
        for k in 1..=m {
            let mut acc = self.coeff(n - k);
            for i in 1..k {
                acc -= &(&root[m - i] * &root[m - k + i]);
            }
            root[m - k] = acc / &two_lead;
        }
        let root = Poly::from_coeffs(root);
        (&root * &root == *self).then_some(root)
    }

    /// Integer polynomial with the same roots: denominators cleared, content
    /// removed, positive leading coefficient.
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return Vec::new();
        }
        let lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| super::rational::lcm(&acc, c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        let content = ints.iter().fold(BigInt::zero(), |acc, c| super::rational::gcd(&acc, c));
        let sign = if ints.last().unwrap().is_negative() { -1 } else { 1 };
        ints.into_iter().map(|c| c / &content * sign).collect()
    }

    /// All distinct rational roots, ascending.
    pub fn rational_roots(&self) -> Result<Vec<Rational>, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::ZeroPolynomial);
        }
        let mut roots = Vec::new();
        let mut p = self.clone();
        if p.coeff(0).is_zero() {
            roots.push(Rational::zero());
            let k = p.coeffs.iter().position(|c| !c.is_zero()).unwrap();
            p = Poly::from_coeffs(p.coeffs[k..].to_vec());
        }
        let mut found = Vec::new();
        loop {
            match p.degree() {
                Some(0) | None => break,
                Some(1) => {
                    found.push(-p.coeff(0) / p.coeff(1));
                    break;
                }
                Some(2) => {
                    let (a, b, c) = (p.coeff(2), p.coeff(1), p.coeff(0));
                    let disc = &b * &b - Rational::from(4) * &a * &c;
                    if let Some(sq) = disc.sqrt_exact() {
                        let two_a = Rational::from(2) * &a;
                        found.push((-&b + &sq) / &two_a);
                        found.push((-&b - &sq) / &two_a);
                    }
                    break;
                }
                Some(_) => match p.find_rational_root()? {
                    Some(root) => {
                        p = p.exact_div(&Poly::linear(-&root, Rational::one()))?;
                        found.push(root);
                    }
                    None => break,
                },
            }
        }
        roots.extend(found);
        roots.sort();
        roots.dedup();
        Ok(roots)
    }

    /// One rational root by the rational root theorem, if any.
    fn find_rational_root(&self) -> Result<Option<Rational>, AlgebraError> {
        let ints = self.primitive_integer();
        let lead = ints.last().unwrap().abs();
        let tail = ints[0].abs();
        let ps = divisors(&tail)?;
        let qs = divisors(&lead)?;
        for p in &ps {
            for q in &qs {
                for cand in [Rational::new(p.clone(), q.clone()), -Rational::new(p.clone(), q.clone())] {
                    if self.eval(&cand).is_zero() {
                        return Ok(Some(cand));
                    }
                }
            }
        }
        Ok(None)
    }

    /// Newton interpolation through `(x_i, y_i)` with distinct nodes.
    pub fn interpolate(points: &[(Rational, Rational)]) -> Poly {
        let n = points.len();
        let mut table: Vec<Rational> = points.iter().map(|(_, y)| y.clone()).collect();
        for level in 1..n {
            for i in (level..n).rev() {
                let num = &table[i] - &table[i - 1];
                let den = &points[i].0 - &points[i - level].0;
                table[i] = num / den;
            }
        }
        let mut out = Poly::zero();
        for i in (0..n).rev() {
            out = &out * &Poly::linear(-&points[i].0, Rational::one()) + Poly::constant(table[i].clone());
        }
        out
    }

    /// Human-readable rendering in the named variable, ascending powers.
    pub fn display_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let term = match i {
                0 => mag.to_string(),
                1 if mag.is_one() => var.to_string(),
                1 => format!("{mag}*{var}"),
                _ if mag.is_one() => format!("{var}^{i}"),
                _ => format!("{mag}*{var}^{i}"),
            };
            out.push_str(&term);
        }
        out
    }
}

/// Positive divisors of a nonzero integer by trial division.
fn divisors(n: &BigInt) -> Result<Vec<BigInt>, AlgebraError> {
    const TRIAL_LIMIT: u64 = 10_000_000;
    let mut factors: Vec<(BigInt, u32)> = Vec::new();
    let mut m = n.abs();
    let mut d: u64 = 2;
    while BigInt::from(d) * BigInt::from(d) <= m {
        if d > TRIAL_LIMIT {
            return Err(AlgebraError::FactorLimit(n.to_string()));
        }
        let bd = BigInt::from(d);
        let mut e = 0;
        while (&m % &bd).is_zero() {
            m /= &bd;
            e += 1;
        }
        if e > 0 {
            factors.push((bd, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if m > BigInt::one() {
        factors.push((m, 1));
    }
    let mut divs = vec![BigInt::one()];
    for (p, e) in factors {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for dv in &divs {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(dv * &pk);
                pk *= &p;
            }
        }
        divs = next;
    }
    divs.sort();
    Ok(divs)
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("x"))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]", self.display_in("x"))
    }
}

/// Serialized as the ascending coefficient list.
impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.coeffs.serialize(serializer)
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::from_coeffs((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::from_coeffs((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let (a, da) = self.integer_form();
        let (b, db) = rhs.integer_form();
        let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        let den = da * db;
        Poly::from_coeffs(out.into_iter().map(|c| Rational::new(c, den.clone())).collect())
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! owned_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                (&self).$method(rhs)
            }
        }
        impl $tr<Poly> for &Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                self.$method(&rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::q;

    fn r_minus_2() -> Poly {
        Poly::from_ints(&[-2, 1])
    }

    #[test]
    fn binomial_square() {
        assert_eq!(r_minus_2() * r_minus_2(), Poly::from_ints(&[4, -4, 1]));
    }

    #[test]
    fn additive_identity() {
        let p = Poly::from_ints(&[3, 0, 5]);
        assert_eq!(&p + &Poly::zero(), p);
    }

    #[test]
    fn hand_multiplication() {
        let a = Poly::linear(q(3, 2), q(1, 1));
        let b = Poly::monomial(1, q(2, 1));
        assert_eq!(a * b, Poly::from_ints(&[0, 3, 2]));
    }

    #[test]
    fn derivatives() {
        assert_eq!(Poly::from_ints(&[4, -4, 1]).derivative(), Poly::from_ints(&[-4, 2]));
        assert!(Poly::constant(q(7, 3)).derivative().is_zero());
        assert_eq!(
            Poly::monomial(9, q(1, 16)).derivative(),
            Poly::monomial(8, q(9, 16))
        );
    }

    #[test]
    fn shifts() {
        let x2 = Poly::monomial(2, q(1, 1));
        assert_eq!(x2.shift(&q(-2, 1)), Poly::from_ints(&[4, -4, 1]));
        let p = Poly::from_ints(&[1, -3, 0, 7]);
        assert_eq!(p.shift(&Rational::zero()), p);
        // leading coefficient survives a change of origin
        let w9 = Poly::monomial(9, q(1, 16));
        assert_eq!(w9.shift(&q(-2, 1)).leading(), q(1, 16));
        assert_eq!(w9.shift(&q(-2, 1)).degree(), Some(9));
    }

    #[test]
    fn evaluation() {
        assert!(Poly::from_ints(&[4, -4, 1]).eval(&q(2, 1)).is_zero());
        assert_eq!(Poly::one().eval(&q(-5, 7)), q(1, 1));
    }

    #[test]
    fn division_and_gcd() {
        let a = Poly::from_roots(&[q(1, 1), q(2, 1), q(-1, 3)]);
        let b = Poly::from_roots(&[q(2, 1), q(5, 1)]);
        assert_eq!(a.gcd(&b), Poly::from_roots(&[q(2, 1)]));
        let (qt, r) = a.div_rem(&b).unwrap();
        assert_eq!(&(&qt * &b) + &r, a);
        assert!(Poly::one().div_rem(&Poly::zero()).is_err());
    }

    #[test]
    fn roots() {
        let p = Poly::from_roots(&[q(0, 1), q(1, 2), q(-4, 1), q(7, 3), q(7, 3)]);
        assert_eq!(
            p.rational_roots().unwrap(),
            vec![q(-4, 1), q(0, 1), q(1, 2), q(7, 3)]
        );
        // x^2 + 1 has none
        assert!(Poly::from_ints(&[1, 0, 1]).rational_roots().unwrap().is_empty());
    }

    #[test]
    fn square_roots() {
        let p = Poly::from_ints(&[0, 0, 4]);
        assert_eq!(p.sqrt_exact(), Some(Poly::from_ints(&[0, 2])));
        let sq = Poly::linear(q(1, 3), q(-5, 2)).pow(2) * Poly::from_ints(&[1, 1]).pow(2);
        let root = sq.sqrt_exact().unwrap();
        assert_eq!(&root * &root, sq);
        assert!(root.leading().is_positive());
        assert_eq!(Poly::from_ints(&[1, 0, 2]).sqrt_exact(), None);
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let p = Poly::from_ints(&[3, -1, 0, 2]);
        let pts: Vec<_> = (0..6)
            .map(|i| {
                let x = q(i, 1);
                let y = p.eval(&x);
                (x, y)
            })
            .collect();
        assert_eq!(Poly::interpolate(&pts), p);
    }

    #[test]
    fn rendering() {
        assert_eq!(Poly::from_ints(&[4, -4, 1]).display_in("r"), "4 - 4*r + r^2");
        assert_eq!(Poly::zero().display_in("w"), "0");
    }
}
