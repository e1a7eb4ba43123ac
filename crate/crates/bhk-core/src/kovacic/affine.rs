use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Serialize, Serializer};

use crate::algebra::{Poly, Rational};

/// `constant + slope * s`, an exponent or degree that depends on the
/// frequency parameter.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Affine {
    pub constant: Rational,
    pub slope: Rational,
}

impl Affine {
    pub fn new(constant: Rational, slope: Rational) -> Self {
        Affine { constant, slope }
    }

    pub fn constant(c: Rational) -> Self {
        Affine { constant: c, slope: Rational::zero() }
    }

    pub fn s() -> Self {
        Affine { constant: Rational::zero(), slope: Rational::one() }
    }

    /// From a polynomial in `s` of degree at most one.
    pub fn from_poly(p: &Poly) -> Option<Self> {
        (p.degree().unwrap_or(0) <= 1).then(|| Affine::new(p.coeff(0), p.coeff(1)))
    }

    pub fn eval(&self, s: &Rational) -> Rational {
        &self.constant + &self.slope * s
    }

    pub fn is_constant(&self) -> bool {
        self.slope.is_zero()
    }

    /// The `s` at which this form takes `value`, when the slope is nonzero.
    pub fn solve(&self, value: &Rational) -> Option<Rational> {
        (!self.slope.is_zero()).then(|| (value - &self.constant) / &self.slope)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Affine::new(&self.constant * c, &self.slope * c)
    }
}

impl fmt::Display for Affine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = &self.constant;
        let k = &self.slope;
        let s_term = |k: &Rational| -> String {
            let mag = k.abs();
            if mag.is_one() {
                "s".to_string()
            } else if mag.is_integer() {
                format!("{mag}s")
            } else if mag.recip().is_integer() {
                format!("s/{}", mag.denom())
            } else {
                format!("{}s/{}", mag.numer(), mag.denom())
            }
        };
        match (c.is_zero(), k.is_zero()) {
            (_, true) => write!(f, "{c}"),
            (true, false) => {
                if k.is_negative() {
                    write!(f, "-{}", s_term(k))
                } else {
                    write!(f, "{}", s_term(k))
                }
            }
            (false, false) => {
                let sign = if k.is_negative() { '-' } else { '+' };
                write!(f, "{c}{sign}{}", s_term(k))
            }
        }
    }
}

impl fmt::Debug for Affine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Affine {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl Add for &Affine {
    type Output = Affine;
    fn add(self, rhs: &Affine) -> Affine {
        Affine::new(&self.constant + &rhs.constant, &self.slope + &rhs.slope)
    }
}

impl Sub for &Affine {
    type Output = Affine;
    fn sub(self, rhs: &Affine) -> Affine {
        Affine::new(&self.constant - &rhs.constant, &self.slope - &rhs.slope)
    }
}

impl Neg for &Affine {
    type Output = Affine;
    fn neg(self) -> Affine {
        Affine::new(-&self.constant, -&self.slope)
    }
}

impl Mul<&Rational> for &Affine {
    type Output = Affine;
    fn mul(self, rhs: &Rational) -> Affine {
        self.scale(rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::q;

    #[test]
    fn rendering() {
        assert_eq!(Affine::new(q(1, 2), q(-1, 1)).to_string(), "1/2-s");
        assert_eq!(Affine::new(q(-3, 1), q(2, 1)).to_string(), "-3+2s");
        assert_eq!(Affine::new(q(0, 1), q(2, 1)).to_string(), "2s");
        assert_eq!(Affine::new(q(0, 1), q(1, 2)).to_string(), "s/2");
        assert_eq!(Affine::new(q(1, 1), q(-3, 2)).to_string(), "1-3s/2");
        assert_eq!(Affine::constant(q(5, 2)).to_string(), "5/2");
    }

    #[test]
    fn solving() {
        let d = Affine::new(q(1, 1), q(-2, 1));
        assert_eq!(d.solve(&q(0, 1)), Some(q(1, 2)));
        assert_eq!(Affine::constant(q(1, 1)).solve(&q(0, 1)), None);
    }
}
