//! Arbitrary-precision rational scalars.
//!
//! A thin newtype over `num_rational::BigRational`, which already keeps
//! every value reduced with a positive denominator. The wrapper fixes the
//! textual form (`"num/den"`, or `"num"` for integers) used in all reports.

use std::cmp::Ordering;
use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use malachite_nz::natural::Natural;
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Self {
        let den = den.into();
        assert!(!den.is_zero(), "zero denominator");
        Rational::reduce(num.into(), den)
    }

    pub fn int(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    /// -1, 0 or 1.
    pub fn signum(&self) -> i32 {
        match self.0.cmp(&BigRational::zero()) {
            Ordering::Less => -1,
            Ordering::Equal => 0,
            Ordering::Greater => 1,
        }
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "reciprocal of zero");
        let (n, d) = (self.numer(), self.denom());
        if n.is_negative() {
            Rational::raw(-d, -n)
        } else {
            Rational::raw(d.clone(), n.clone())
        }
    }

    pub fn pow(&self, exp: i32) -> Self {
        if exp < 0 {
            return self.recip().pow(-exp);
        }
        // coprime parts stay coprime
        let e = exp as u32;
        Rational::raw(num_traits::Pow::pow(self.numer(), e), num_traits::Pow::pow(self.denom(), e))
    }

    /// The integer value, when the rational is an integer that fits.
    pub fn to_i64(&self) -> Option<i64> {
        if self.is_integer() {
            self.numer().to_i64()
        } else {
            None
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Exact square root when the value is the square of a rational.
    pub fn sqrt_exact(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let n = self.numer().sqrt();
        let d = self.denom().sqrt();
        if &(&n * &n) == self.numer() && &(&d * &d) == self.denom() {
            Some(Rational::new(n, d))
        } else {
            None
        }
    }

    /// Parity for integers: `Some(true)` when odd.
    pub fn is_odd_integer(&self) -> Option<bool> {
        self.is_integer().then(|| self.numer().is_odd())
    }

    pub fn inner(&self) -> &BigRational {
        &self.0
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::int(n)
    }
}

impl From<i32> for Rational {
    fn from(n: i32) -> Self {
        Rational::int(n)
    }
}

impl From<u32> for Rational {
    fn from(n: u32) -> Self {
        Rational::int(n)
    }
}

impl From<u64> for Rational {
    fn from(n: u64) -> Self {
        Rational::int(n)
    }
}

impl From<usize> for Rational {
    fn from(n: usize) -> Self {
        Rational::int(n)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational::int(n)
    }
}

impl From<BigRational> for Rational {
    fn from(q: BigRational) -> Self {
        Rational(q)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational literal {0:?}")]
pub struct ParseRationalError(pub String);

impl FromStr for Rational {
    type Err = ParseRationalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ParseRationalError(s.to_string());
        let t = s.trim();
        match t.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(bad());
                }
                Ok(Rational::new(n, d))
            }
            None => Ok(Rational::int(t.parse::<BigInt>().map_err(|_| bad())?)),
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// `gcd(|a|, |b|)`. num-integer's binary gcd is quadratic with a large
/// constant; large operands go through malachite, small ones through a
/// single division step.
pub(crate) fn gcd(a: &BigInt, b: &BigInt) -> BigInt {
    if a.is_zero() {
        return b.abs();
    }
    if b.is_zero() || a.magnitude().is_one() || b.magnitude().is_one() {
        return if b.is_zero() { a.abs() } else { BigInt::one() };
    }
    let (big, small) = if a.bits() >= b.bits() { (a.magnitude(), b.magnitude()) } else { (b.magnitude(), a.magnitude()) };
    if let Some(s) = small.to_u64() {
        let r = (big % s).to_u64().expect("remainder below a u64");
        return BigInt::from(r.gcd(&s));
    }
    if big.bits() <= 512 {
        return BigInt::from(big.gcd(small));
    }
    let g = malachite_base::num::arithmetic::traits::Gcd::gcd(to_natural(big), to_natural(small));
    BigInt::from(from_natural(g))
}

/// `lcm(|a|, |b|)`.
pub(crate) fn lcm(a: &BigInt, b: &BigInt) -> BigInt {
    if a.is_zero() || b.is_zero() {
        return BigInt::zero();
    }
    (a / gcd(a, b) * b).abs()
}

fn to_natural(x: &BigUint) -> Natural {
    Natural::from_owned_limbs_asc(x.to_u64_digits())
}

fn from_natural(x: Natural) -> BigUint {
    let limbs = x.into_limbs_asc();
    BigUint::from_slice(&limbs.iter().flat_map(|&l| [l as u32, (l >> 32) as u32]).collect::<Vec<_>>())
}

impl Rational {
    /// `n / d` from parts already known to be coprime with `d > 0`.
    fn raw(n: BigInt, d: BigInt) -> Self {
        Rational(BigRational::new_raw(n, d))
    }

    fn reduce(mut n: BigInt, mut d: BigInt) -> Self {
        if d.is_negative() {
            n = -n;
            d = -d;
        }
        if n.is_zero() {
            return Rational::zero();
        }
        let g = gcd(&n, &d);
        if !g.is_one() {
            n /= &g;
            d /= &g;
        }
        Rational::raw(n, d)
    }

    fn add_impl(&self, rhs: &Rational) -> Rational {
        let (a, b, c, d) = (self.numer(), self.denom(), rhs.numer(), rhs.denom());
        if b.is_one() && d.is_one() {
            return Rational::int(a + c);
        }
        let g = gcd(b, d);
        if g.is_one() {
            return Rational::raw(a * d + c * b, b * d);
        }
        let (bg, dg) = (b / &g, d / &g);
        let t = a * &dg + c * &bg;
        if t.is_zero() {
            return Rational::zero();
        }
        let g2 = gcd(&t, &g);
        Rational::raw(t / &g2, bg * (d / g2))
    }

    fn mul_impl(&self, rhs: &Rational) -> Rational {
        let (a, b, c, d) = (self.numer(), self.denom(), rhs.numer(), rhs.denom());
        if a.is_zero() || c.is_zero() {
            return Rational::zero();
        }
        if b.is_one() && d.is_one() {
            return Rational::int(a * c);
        }
        let g1 = gcd(a, d);
        let g2 = gcd(c, b);
        Rational::raw((a / &g1) * (c / &g2), (b / g2) * (d / g1))
    }

    fn div_impl(&self, rhs: &Rational) -> Rational {
        self.mul_impl(&rhs.recip())
    }

    fn sub_impl(&self, rhs: &Rational) -> Rational {
        self.add_impl(&-rhs)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $imp:ident) => {
        impl $tr<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                self.$imp(rhs)
            }
        }
        impl $tr<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                self.$imp(&rhs)
            }
        }
        impl $tr<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                self.$imp(rhs)
            }
        }
        impl $tr<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                self.$imp(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_impl);
forward_binop!(Sub, sub, sub_impl);
forward_binop!(Mul, mul, mul_impl);
forward_binop!(Div, div, div_impl);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        *self = self.add_impl(rhs);
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        *self = self.sub_impl(rhs);
    }
}

impl MulAssign<&Rational> for Rational {
    fn mul_assign(&mut self, rhs: &Rational) {
        *self = self.mul_impl(rhs);
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |a, b| a + b)
    }
}

impl Product for Rational {
    fn product<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::one(), |a, b| a * b)
    }
}

/// Shorthand for `Rational::new(n, d)` with machine integers.
pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

/// Exact factorial.
pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// Rising factorial `(x)_k = x (x+1) ... (x+k-1)`.
pub fn pochhammer(x: &Rational, k: usize) -> Rational {
    (0..k).map(|i| x + Rational::from(i)).product()
}

/// Generalized binomial coefficient `binom(x, k)` for rational `x`.
pub fn binomial(x: &Rational, k: usize) -> Rational {
    let mut acc = Rational::one();
    for i in 0..k {
        acc = acc * (x - Rational::from(i)) / Rational::from(i + 1);
    }
    acc
}
