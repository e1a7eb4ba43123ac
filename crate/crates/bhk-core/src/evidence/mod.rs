//! Non-existence evidence: sign scans of the tridiagonal determinants for
//! the families without a closed-form solution, and the S3 argument.

mod s3;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{Matrix, Rational};
use crate::auxode::{build_auxiliary, monomial_action_matrix, AuxiliaryODE};
use crate::kovacic::family_by_label;
use crate::master::{ModeSpec, PerturbationKind};
use crate::{Error, Result};

pub use s3::{s3_nonexistence, CompatibilityStep, OracleCell, RatioRows, S3Record, SolutionSet};

/// Families whose existence question is settled numerically.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum ScanFamily {
    G3,
    E3,
    E7,
}

impl ScanFamily {
    pub const ALL: [ScanFamily; 3] = [ScanFamily::G3, ScanFamily::E3, ScanFamily::E7];

    pub fn kind(self) -> PerturbationKind {
        match self {
            ScanFamily::G3 => PerturbationKind::Gravitational,
            ScanFamily::E3 | ScanFamily::E7 => PerturbationKind::Electromagnetic,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            ScanFamily::G3 => "G3",
            ScanFamily::E3 => "E3",
            ScanFamily::E7 => "E7",
        }
    }

    /// `2s` for a candidate of degree `d`.
    pub fn two_s(self, d: u64) -> i64 {
        let d = d as i64;
        match self {
            ScanFamily::G3 => d + 3,
            ScanFamily::E3 => d + 2,
            ScanFamily::E7 => d,
        }
    }

    /// Diagonal entry of row `n` and the product of the two off-diagonal
    /// entries coupling rows `n - 1` and `n`, for `2s = ts`.
    fn coefficients(self, n: i64, ts: i64, ell: i64) -> (i64, i64) {
        match self {
            ScanFamily::G3 => (n * n + 5 * n - 2 * ts * n + 6 - ell - 5 * ts, n * ts * (n + 4) * (ts - 2 - n)),
            ScanFamily::E3 => (n * n + 3 * n - 2 * ts * n + 2 - ell - 3 * ts, n * ts * (n + 2) * (ts - 1 - n)),
            ScanFamily::E7 => (n * n - n - 2 * ts * n - ell + ts, n * ts * (n - 2) * (ts + 1 - n)),
        }
    }
}

impl fmt::Display for ScanFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for ScanFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "G3" => Ok(ScanFamily::G3),
            "E3" => Ok(ScanFamily::E3),
            "E7" => Ok(ScanFamily::E7),
            _ => Err(Error::domain(format!("no determinant scan for family {s}"))),
        }
    }
}

/// `D_0 = 1`, `D_{n+1} = diag(n) D_n - off(n) D_{n-1}`, yielding
/// `D_1, ..., D_{d+1}`.
struct DetRecurrence {
    family: ScanFamily,
    ts: i64,
    ell: i64,
    n: i64,
    prev: BigInt,
    cur: BigInt,
}

impl DetRecurrence {
    fn new(family: ScanFamily, l: u32, d: u64) -> Self {
        let l = i64::from(l);
        DetRecurrence { family, ts: family.two_s(d), ell: l * (l + 1), n: 0, prev: BigInt::zero(), cur: BigInt::one() }
    }
}

impl Iterator for DetRecurrence {
    type Item = BigInt;

    fn next(&mut self) -> Option<BigInt> {
        let (diag, off) = self.family.coefficients(self.n, self.ts, self.ell);
        let next = BigInt::from(diag) * &self.cur - BigInt::from(off) * &self.prev;
        self.prev = std::mem::replace(&mut self.cur, next.clone());
        self.n += 1;
        Some(next)
    }
}

fn expected_sign(k: usize) -> i32 {
    if k.is_multiple_of(2) { 1 } else { -1 }
}

fn sign(v: &BigInt) -> i32 {
    if v.is_zero() { 0 } else if v.is_positive() { 1 } else { -1 }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DetSequence {
    pub family: ScanFamily,
    pub l: u32,
    pub s: Rational,
    pub d: u64,
    /// `D_0, ..., D_{d+1}`.
    pub values: Vec<Rational>,
    /// `sgn D_k = (-1)^k` for every `k >= 1`.
    pub sign_pattern_ok: bool,
    /// `sgn D_{d+1} = (-1)^{d+1}`.
    pub final_sign_ok: bool,
}

pub fn det_sequence(family: ScanFamily, l: u32, d: u64) -> DetSequence {
    let mut values = vec![Rational::one()];
    values.extend(DetRecurrence::new(family, l, d).take(d as usize + 1).map(Rational::from));
    let sign_pattern_ok = values.iter().enumerate().skip(1).all(|(k, v)| v.signum() == expected_sign(k));
    let final_sign_ok = values.last().map(Rational::signum) == Some(expected_sign(d as usize + 1));
    DetSequence {
        family,
        l,
        s: Rational::new(family.two_s(d), 2),
        d,
        values,
        sign_pattern_ok,
        final_sign_ok,
    }
}

fn z_frame(family: ScanFamily, l: u32, d: u64) -> Result<AuxiliaryODE> {
    let mode = ModeSpec::new(family.kind(), l, Rational::new(family.two_s(d), 2))?;
    build_auxiliary(&family_by_label(&mode, family.label())?, &mode)?.to_z()
}

/// `D_{d+1}` as the Bareiss determinant of the leading block of the
/// operator's action on `1, z, ..., z^d`.
pub fn action_determinant(family: ScanFamily, l: u32, d: u64) -> Result<Rational> {
    let ode = z_frame(family, l, d)?;
    Ok(monomial_action_matrix(&ode, d as usize).leading_block(d as usize + 1).determinant())
}

/// Leading `size x size` determinant of the recurrence about `z = 0`,
/// assembled from the recurrence rows.
pub fn recurrence_block_determinant(family: ScanFamily, l: u32, d: u64, size: usize) -> Result<Rational> {
    let rec = z_frame(family, l, d)?.recurrence(&Rational::zero(), &Rational::zero())?;
    let mut m = Matrix::zeros(size, size);
    for k in 0..size {
        let n = k as i64;
        if k > 0 {
            m.set(k, k - 1, rec.lower(n));
        }
        m.set(k, k, rec.diag(n));
        if k + 1 < size {
            m.set(k, k + 1, rec.upper(n));
        }
    }
    Ok(m.determinant())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanConfig {
    pub families: Vec<ScanFamily>,
    pub l_max: u32,
    pub d_max: u64,
    /// Largest `d` at which cells are cross-checked against Bareiss.
    pub cross_check_d: u64,
}

impl ScanConfig {
    pub fn new(families: Vec<ScanFamily>, l_max: u32, d_max: u64) -> Self {
        ScanConfig { families, l_max, d_max, cross_check_d: 12 }
    }

    /// Smallest `l` scanned for a family: 2 for gravitational, 1 for
    /// electromagnetic.
    pub fn l_min(family: ScanFamily) -> u32 {
        family.kind().min_l()
    }
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig::new(ScanFamily::ALL.to_vec(), 20, 500)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanCell {
    pub family: ScanFamily,
    pub l: u32,
    pub s: Rational,
    pub d: u64,
    pub sign_ok: bool,
    pub alternating: bool,
    /// Sign and leading digits of `D_{d+1}`; the full value is exact
    /// internally but too long to report.
    #[serde(rename = "D_last")]
    pub d_last: String,
    pub d_last_digits: usize,
    /// First `n` from which `|D_n|` increases strictly up to `D_{d+1}`.
    pub growth_from: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrossCheck {
    pub family: ScanFamily,
    pub l: u32,
    pub d: u64,
    pub recurrence: Rational,
    pub bareiss: Rational,
    pub agree: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanReport {
    pub config: ScanConfig,
    pub l_range_note: String,
    pub cells: Vec<ScanCell>,
    pub violations: Vec<ScanCell>,
    pub cross_checks: Vec<CrossCheck>,
}

impl ScanReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty() && self.cross_checks.iter().all(|c| c.agree)
    }
}

fn summarize(v: &BigInt) -> (String, usize) {
    let digits = v.abs().to_string();
    let len = digits.len();
    let sign = if v.is_negative() { "-" } else { "" };
    if len <= 24 {
        (format!("{sign}{digits}"), len)
    } else {
        (format!("{sign}{}.{}e{}", &digits[..1], &digits[1..16], len - 1), len)
    }
}

fn scan_cell(family: ScanFamily, l: u32, d: u64) -> ScanCell {
    let mut alternating = true;
    let mut growth_from = 1;
    let mut last_abs = BigInt::one();
    let mut last = BigInt::one();
    for (i, v) in DetRecurrence::new(family, l, d).take(d as usize + 1).enumerate() {
        let k = i + 1;
        alternating &= sign(&v) == expected_sign(k);
        let abs = v.abs();
        if abs <= last_abs {
            growth_from = k;
        }
        last_abs = abs;
        last = v;
    }
    let (d_last, d_last_digits) = summarize(&last);
    ScanCell {
        family,
        l,
        s: Rational::new(family.two_s(d), 2),
        d,
        sign_ok: sign(&last) == expected_sign(d as usize + 1),
        alternating,
        d_last,
        d_last_digits,
        growth_from,
    }
}

/// Every `(family, l, d)` cell of the grid in that order, plus Bareiss
/// cross-checks on a sample of small cells.
pub fn scan(config: &ScanConfig) -> Result<ScanReport> {
    let grid: Vec<(ScanFamily, u32, u64)> = config
        .families
        .iter()
        .flat_map(|&f| {
            (ScanConfig::l_min(f)..=config.l_max).flat_map(move |l| (0..=config.d_max).map(move |d| (f, l, d)))
        })
        .collect();
    let cells: Vec<ScanCell> = grid.par_iter().map(|&(f, l, d)| scan_cell(f, l, d)).collect();
    let violations = cells.iter().filter(|c| !c.sign_ok).cloned().collect();

    let samples: Vec<(ScanFamily, u32, u64)> = config
        .families
        .iter()
        .flat_map(|&f| {
            let lo = ScanConfig::l_min(f);
            let mut ls = vec![lo, lo + 1, config.l_max];
            ls.retain(|&l| l <= config.l_max);
            ls.dedup();
            ls.into_iter()
                .flat_map(move |l| (0..=config.cross_check_d.min(config.d_max)).map(move |d| (f, l, d)))
                .collect::<Vec<_>>()
        })
        .collect();
    let cross_checks = samples
        .par_iter()
        .map(|&(f, l, d)| -> Result<CrossCheck> {
            let recurrence = det_sequence(f, l, d).values.pop().unwrap_or_default();
            let bareiss = action_determinant(f, l, d)?;
            Ok(CrossCheck { family: f, l, d, agree: recurrence == bareiss, recurrence, bareiss })
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(ScanReport {
        config: config.clone(),
        l_range_note: "the l range is a configurable default, not taken from a stated scan range".into(),
        cells,
        violations,
        cross_checks,
    })
}
