use serde::Serialize;

use super::{kummer_poly, laguerre_poly, phi, two_s};
use crate::algebra::{factorial, q, Poly, Rational};
use crate::Result;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityRecord {
    pub identity: String,
    pub params: String,
    pub holds: bool,
    /// Left side minus right side, as a polynomial in `u`.
    pub difference: Poly,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub s: Rational,
    pub records: Vec<IdentityRecord>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        !self.records.is_empty() && self.records.iter().all(|r| r.holds)
    }

    pub fn failures(&self) -> impl Iterator<Item = &IdentityRecord> {
        self.records.iter().filter(|r| !r.holds)
    }
}

fn record(identity: &str, params: String, lhs: Poly, rhs: Poly) -> IdentityRecord {
    let difference = lhs - rhs;
    IdentityRecord { identity: identity.into(), params, holds: difference.is_zero(), difference }
}

fn c(v: impl Into<Rational>) -> Rational {
    v.into()
}

/// General contiguous relations for truncations up to `bound`, then the
/// specific relations among the basis members at frequency `s`
/// (`2s >= 3` an integer).
pub fn recurrence_identity_suite(s: &Rational, bound: u64) -> Result<IdentityReport> {
    let u = Poly::x();
    let mut records = Vec::new();

    let lower_params = [q(5, 2), q(7, 3), q(11, 1), q(-1, 2), q(-19, 4)];
    for qq in &lower_params {
        for n in 0..=bound {
            let a = -c(n);
            let f = |m: u64| kummer_poly(m, qq).map(|k| k.poly);
            let params = format!("n = {n}, q = {qq}");
            // a F(a+1) drops out at n = 0
            let next = if n == 0 { Poly::zero() } else { f(n - 1)? };
            if n >= 1 {
                records.push(record(
                    "kummer derivative contiguity",
                    params.clone(),
                    &u * f(n)?.derivative(),
                    (&next - f(n)?).scale(&a),
                ));
            }
            let rhs = next.scale(&a) - f(n)?.scale(&(c(2) * &a - qq)) - f(n + 1)?.scale(&(qq - &a));
            records.push(record("kummer three-term contiguity", params, &u * f(n)?, rhs));
        }
    }

    let alphas = [c(2) * s, -(c(2) * s), q(1, 2), q(-3, 7)];
    for alpha in &alphas {
        let lg = |m: u64| laguerre_poly(m, alpha).poly;
        for m in 0..=bound {
            let mr = c(m);
            let prev = if m == 0 { Poly::zero() } else { lg(m - 1) };
            let params = format!("m = {m}, alpha = {alpha}");
            records.push(record(
                "laguerre derivative",
                params.clone(),
                &u * lg(m).derivative(),
                lg(m).scale(&mr) - prev.scale(&(&mr + alpha)),
            ));
            records.push(record(
                "laguerre three-term",
                params.clone(),
                &u * lg(m),
                -prev.scale(&(&mr + alpha)) + lg(m).scale(&(c(2) * &mr + alpha + c(1))) - lg(m + 1).scale(&(&mr + c(1))),
            ));
            if let Ok(k) = kummer_poly(m, &(alpha + c(1))) {
                let binom = crate::algebra::binomial(&(&mr + alpha), m as usize);
                records.push(record("laguerre as kummer", params, lg(m), k.poly.scale(&binom)));
            }
        }
    }

    let n2s = two_s(s)?;
    if n2s < 3 {
        return Err(crate::Error::domain(format!("the basis relations need 2s >= 3, got s = {s}")));
    }
    let ts = c(n2s);
    let low = c(1) - &ts;
    let fk = |m: u64| kummer_poly(m, &low).map(|k| k.poly);
    let (p2, p1, p0) = (phi(s, 1)?, phi(s, 0)?, phi(s, -1)?);
    let (f1, f2, f3) = (fk(n2s - 1)?, fk(n2s - 2)?, fk(n2s - 3)?);
    let at = format!("s = {s}");
    let one = c(1);

    records.push(record(
        "phi(2s+1) derivative",
        at.clone(),
        &u * p1.derivative(),
        p1.scale(&(&ts + &one)) - &p0,
    ));
    records.push(record(
        "phi(2s+1) three-term",
        at.clone(),
        &u * &p1,
        -&p0 + p1.scale(&(&ts + c(3))) - p2.scale(&(&ts + c(2))),
    ));
    records.push(record("phi(2s) derivative", at.clone(), &u * p0.derivative(), p0.scale(&ts)));
    records.push(record(
        "phi(2s) three-term",
        at.clone(),
        &u * &p0,
        p0.scale(&(&ts + &one)) - p1.scale(&(&ts + &one)),
    ));
    let n1 = &ts - &one;
    let n2 = &ts - c(2);
    records.push(record(
        "F(-(2s-1)) derivative",
        at.clone(),
        &u * f1.derivative(),
        f1.scale(&n1) - f2.scale(&n1),
    ));
    records.push(record(
        "F(-(2s-1)) three-term",
        at.clone(),
        &u * &f1,
        -f2.scale(&n1) - f1.scale(&(&one - &ts)) + p0.scale(&Rational::int(factorial(n2s - 1)).recip()),
    ));
    records.push(record(
        "F(-(2s-2)) derivative",
        at.clone(),
        &u * f2.derivative(),
        f2.scale(&n2) - f3.scale(&n2),
    ));
    records.push(record(
        "F(-(2s-2)) three-term",
        at.clone(),
        &u * &f2,
        -f3.scale(&n2) + f2.scale(&(&ts - c(3))) + &f1,
    ));

    let alpha = c(2) * s;
    records.push(record(
        "L_1^(2s) against F(-1, 2s+1)",
        at.clone(),
        laguerre_poly(1, &alpha).poly,
        fk_at(1, &(&alpha + &one))?.scale(&(&ts + &one)),
    ));
    records.push(record(
        "L_(2s-1)^(-2s) against F(-(2s-1), 1-2s)",
        at.clone(),
        laguerre_poly(n2s - 1, &-&alpha).poly,
        -&f1,
    ));
    records.push(record(
        "L_(2s-2)^(-2s) against F(-(2s-2), 1-2s)",
        at,
        laguerre_poly(n2s - 2, &-&alpha).poly,
        f2.scale(&n1),
    ));

    Ok(IdentityReport { s: s.clone(), records })
}

fn fk_at(n: u64, qq: &Rational) -> Result<Poly> {
    Ok(kummer_poly(n, qq)?.poly)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_at_s4() {
        let report = recurrence_identity_suite(&q(4, 1), 6).unwrap();
        let bad: Vec<_> = report.failures().collect();
        assert!(bad.is_empty(), "{bad:?}");
        assert!(report.records.iter().any(|r| r.identity == "phi(2s) derivative"));
    }

    #[test]
    fn suite_rejects_small_s() {
        assert!(recurrence_identity_suite(&q(1, 2), 2).is_err());
        assert!(recurrence_identity_suite(&q(1, 3), 2).is_err());
    }
}
