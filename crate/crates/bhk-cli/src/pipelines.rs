use bhk_core::auxode::{
    brute_force_polynomial_solutions, build_auxiliary, chandrasekhar_coeffs, homotopic_equivalence_check,
    solve_low_degree, to_heun_form, verify_chandrasekhar_poly, LowDegreeSolution,
};
use bhk_core::evidence::{s3_nonexistence, scan, ScanConfig, ScanFamily, SolutionSet};
use bhk_core::hautot::{
    det_a, determinant_equality_check, extended_expansion, hautot_sufficiency_check, kummer_poly,
    recurrence_identity_suite, Basis,
};
use bhk_core::kovacic::{enumerate_families_n1, enumerate_families_n2, family_by_label, retain_families};
use bhk_core::master::{self, ModeSpec, PerturbationKind};
use bhk_core::{Error, Poly, Rational, Result};
use serde::Serialize;
use serde_json::json;

use crate::report::{Record, Report, Status};

fn join<T: std::fmt::Display>(items: impl IntoIterator<Item = T>) -> String {
    items.into_iter().map(|t| t.to_string()).collect::<Vec<_>>().join(", ")
}

fn retained_labels(kind: PerturbationKind, l: u32) -> Result<Vec<String>> {
    let mode = ModeSpec::new(kind, l, Rational::one())?;
    let records = retain_families(&enumerate_families_n1(&mode)?, l)?;
    Ok(records.iter().filter(|r| r.retained()).map(|r| r.family.label.clone()).collect())
}

pub fn families(kind: PerturbationKind, l: u32) -> Result<Report> {
    #[derive(Serialize)]
    struct Config {
        beta: i64,
        kind: PerturbationKind,
        l: u32,
    }
    let mut report = Report::new("families", Config { beta: kind.beta(), kind, l });
    let mode = ModeSpec::new(kind, l, Rational::one())?;
    for rec in retain_families(&enumerate_families_n1(&mode)?, l)? {
        let f = &rec.family;
        let verdict = if rec.retained() { "retained" } else { "discarded" };
        let summary = format!(
            "e0 = {}, e2 = {}, e_inf = {}, degree {}: {verdict}",
            f.e0, f.e2, f.einf, f.degree
        );
        report.push(Record::new(f.label.clone(), "family table", Status::Pass, summary).with_witness(&rec));
    }
    match enumerate_families_n2(&mode) {
        Ok(n2) => {
            let retained = n2.retained().len();
            let summary = format!("{} candidates, {retained} retained", n2.candidates.len());
            report.push(
                Record::new("n = 2 candidates", "n = 2 closure", Status::Pass, summary).with_witness(&n2),
            );
        }
        Err(Error::NotApplicable(why)) => {
            report.push(Record::new("n = 2 candidates", "n = 2 closure", Status::Pass, why));
        }
        Err(e) => return Err(e),
    }
    Ok(report)
}

fn chandra_records(l: u32) -> Result<Vec<Record>> {
    let poly_w = chandrasekhar_coeffs(l)?;
    let rec = verify_chandrasekhar_poly(l, &poly_w)?;
    let mut out = vec![Record::new(
        format!("polynomial l = {l}"),
        "closed-form polynomial",
        Status::Pass,
        format!(
            "s = {}, degree {}\nP(w) = {}\nP(r) = {}",
            rec.s,
            poly_w.degree().unwrap_or(0),
            poly_w.display_in("w"),
            rec.poly_r.display_in("r")
        ),
    )
    .with_witness(json!({ "l": l, "s": rec.s, "poly_w": poly_w, "poly_r": rec.poly_r }))];
    for c in &rec.checks {
        out.push(Record::new(
            format!("{} l = {l}", c.name),
            "closed-form polynomial",
            Status::from_bool(c.passed),
            c.detail.clone(),
        ));
    }
    Ok(out)
}

pub fn chandra(l: u32) -> Result<Report> {
    let mut report = Report::new("chandra", json!({ "l": l }));
    for r in chandra_records(l)? {
        report.push(r);
    }
    Ok(report)
}

fn expansion_record(l: u32, basis: Basis) -> Record {
    let name = format!("{basis} expansion l = {l}");
    match extended_expansion(l, basis) {
        Ok(exp) => {
            let coeffs = exp.coefficients.iter().enumerate().map(|(k, c)| format!("A{k} = {c}"));
            Record::new(name, "extended expansion", Status::Pass, format!("s = {}: {}", exp.s, join(coeffs)))
                .with_witness(&exp)
        }
        Err(e) => Record::new(name, "extended expansion", Status::Fail, e.to_string()),
    }
}

pub fn hautot(l: u32, basis: Basis) -> Result<Report> {
    let mut report = Report::new("hautot", json!({ "l": l, "basis": basis }));
    report.push(expansion_record(l, basis));
    Ok(report)
}

pub fn evidence(families: Vec<ScanFamily>, l_max: u32, d_max: u64) -> Result<Report> {
    let config = ScanConfig::new(families, l_max, d_max);
    let mut report = Report::new("evidence", &config);
    push_scan(&mut report, &config)?;
    Ok(report)
}

fn push_scan(report: &mut Report, config: &ScanConfig) -> Result<()> {
    let scan = scan(config)?;
    for &f in &config.families {
        let cells: Vec<_> = scan.cells.iter().filter(|c| c.family == f).collect();
        let bad: Vec<_> = scan.violations.iter().filter(|c| c.family == f).collect();
        let alternating = cells.iter().filter(|c| c.alternating).count();
        let summary = format!(
            "{} cells, l {}..={}, d 0..={}: {} sign violations; {alternating} cells alternate at every order",
            cells.len(),
            ScanConfig::l_min(f),
            config.l_max,
            config.d_max,
            bad.len()
        );
        report.push(
            Record::new(format!("{f} determinant signs"), "determinant sign scan", Status::from_bool(bad.is_empty()), summary)
                .with_witness(json!({ "note": scan.l_range_note, "cells": cells, "violations": bad })),
        );
    }
    let agree = scan.cross_checks.iter().filter(|c| c.agree).count();
    report.push(
        Record::new(
            "Bareiss cross-checks",
            "determinant sign scan",
            Status::from_bool(agree == scan.cross_checks.len()),
            format!("{agree} of {} sampled determinants agree", scan.cross_checks.len()),
        )
        .with_witness(&scan.cross_checks),
    );
    Ok(())
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyConfig {
    pub l_max: u32,
    pub max_degree: u64,
    pub two_s_max: u64,
    pub strict: bool,
}

pub fn verify_all(cfg: &VerifyConfig) -> Result<Report> {
    let mut report = Report::new("verify-all", cfg);
    let l_range = 2..=cfg.l_max.max(2);

    let expected = [
        (PerturbationKind::Gravitational, vec!["G3", "G7", "G8"]),
        (PerturbationKind::Scalar, vec!["S3"]),
        (PerturbationKind::Electromagnetic, vec!["E3", "E7"]),
    ];
    for (kind, want) in &expected {
        let mut mismatches = Vec::new();
        for l in l_range.clone() {
            let got = retained_labels(*kind, l)?;
            if got != *want {
                mismatches.push(json!({ "l": l, "retained": got }));
            }
        }
        report.push(
            Record::new(
                format!("{kind} retained families"),
                "family tables",
                Status::from_bool(mismatches.is_empty()),
                format!("expected {{{}}} for l in {:?}", want.join(", "), l_range),
            )
            .with_witness(mismatches),
        );
    }

    for kind in [PerturbationKind::Gravitational, PerturbationKind::Electromagnetic, PerturbationKind::Scalar] {
        let n2 = enumerate_families_n2(&ModeSpec::new(kind, 2, Rational::one())?)?;
        let retained = n2.retained().len();
        report.push(Record::new(
            format!("{kind} n = 2 candidates"),
            "n = 2 closure",
            Status::from_bool(retained == 0),
            format!("{} candidates, {retained} retained", n2.candidates.len()),
        ));
    }

    let mut g8 = Vec::new();
    let mut g8_ok = true;
    for l in l_range.clone() {
        let mode = ModeSpec::gravitational(l, Rational::one())?;
        let sols = solve_low_degree(&family_by_label(&mode, "G8")?, l, 1)?;
        let want = LowDegreeSolution {
            s: master::special_frequency(l)?,
            poly: Poly::from_coeffs(vec![Rational::from(6) / master::mu_squared(l), Rational::one()]),
        };
        g8_ok &= sols == vec![want];
        g8.push(json!({ "l": l, "solutions": sols }));
    }
    report.push(
        Record::new("G8 degree-one solutions", "special frequency solution", Status::from_bool(g8_ok), "s = l(l-1)(l+1)(l+2)/6, P = r + 6/((l-1)(l+2))")
            .with_witness(g8),
    );

    for l in l_range.clone() {
        for r in chandra_records(l)? {
            report.push(r);
        }
    }

    let mut det_ok = true;
    for l in l_range.clone() {
        let det = det_a(l);
        let s = master::special_frequency(l)?;
        let one = Rational::one();
        det_ok &= det.eval(&s).is_zero() && det.eval(&-&s).is_zero();
        det_ok &= [&s + &one, &s - &one, -&s + &one, -&s - &one].iter().all(|v| !det.eval(v).is_zero());
    }
    report.push(Record::new(
        "G7 necessary determinant",
        "hautot determinant",
        Status::from_bool(det_ok),
        "vanishes at the two special frequencies and not at their neighbours",
    ));

    for j in 0..=3 {
        let eq = determinant_equality_check(j, 10, 0x5eed + j as u64);
        report.push(
            Record::new(
                format!("determinant equality j = {j}"),
                "determinant equality",
                Status::from_bool(eq.passed()),
                format!("{} random points, degree bound {}", eq.trials.len(), eq.degree_bound),
            )
            .with_witness(eq.witness()),
        );
    }

    for l in l_range.clone() {
        for basis in [Basis::Kummer, Basis::Laguerre] {
            report.push(expansion_record(l, basis));
        }
    }

    let s4 = Rational::from(4);
    let low = Rational::one() - Rational::from(8);
    let obstructed = [9, 8].iter().all(|&n| matches!(kummer_poly(n, &low), Err(Error::Obstruction { .. })));
    let defined = [7, 6].iter().all(|&n| kummer_poly(n, &low).is_ok());
    report.push(Record::new(
        "truncation at q = 1 - 2s",
        "truncation obstruction",
        Status::from_bool(obstructed && defined),
        "F(-9, -7) and F(-8, -7) undefined, F(-7, -7) and F(-6, -7) defined (s = 4)",
    ));
    let ids = recurrence_identity_suite(&s4, 8)?;
    report.push(
        Record::new(
            "contiguous relations",
            "recurrence identities",
            Status::from_bool(ids.passed()),
            format!("{} identities checked at s = 4", ids.records.len()),
        )
        .with_witness(ids.failures().collect::<Vec<_>>()),
    );

    {
        let s = master::special_frequency(2)?;
        let mode = ModeSpec::gravitational(2, s)?;
        let ode = build_auxiliary(&family_by_label(&mode, "G7")?, &mode)?;
        let null = brute_force_polynomial_solutions(&ode, 9);
        let target = chandrasekhar_coeffs(2)?.shift(&Rational::from(-2)).monic();
        let ok = null.len() == 1 && null[0].monic() == target;
        report.push(Record::new(
            "G7 nullspace l = 2",
            "nullspace oracle",
            Status::from_bool(ok),
            format!("nullity {}, spanned by the closed-form polynomial: {ok}", null.len()),
        ));
        let mut e7_empty = true;
        for l in 1..=3 {
            for ts in 1..=6i64 {
                let mode = ModeSpec::new(PerturbationKind::Electromagnetic, l, Rational::new(ts, 2))?;
                let ode = build_auxiliary(&family_by_label(&mode, "E7")?, &mode)?;
                e7_empty &= brute_force_polynomial_solutions(&ode, ts as usize).is_empty();
            }
        }
        report.push(Record::new(
            "E7 nullspaces",
            "nullspace oracle",
            Status::from_bool(e7_empty),
            "no polynomial solution for l in 1..=3, 2s in 1..=6",
        ));
    }

    let homotopic = homotopic_equivalence_check(12)?;
    report.push(
        Record::new(
            "homotopic maps G7 -> G3, E7 -> E3",
            "homotopic equivalence",
            Status::from_bool(homotopic.passed()),
            format!("{} cases on monomials up to degree 12", homotopic.cases.len()),
        )
        .with_witness(homotopic.cases.iter().filter(|c| !c.passed()).collect::<Vec<_>>()),
    );

    let mut suff = Vec::new();
    let mut suff_ok = true;
    for l in l_range.clone() {
        let s = master::special_frequency(l)?;
        let n = (Rational::from(2) * &s + Rational::one()).to_i64().unwrap_or(0) as u64;
        let mode = ModeSpec::gravitational(l, s)?;
        let v = hautot_sufficiency_check(&to_heun_form(&build_auxiliary(&family_by_label(&mode, "G7")?, &mode)?)?, n)?;
        suff_ok &= v.satisfied;
        suff.push(v);
    }
    {
        let mode = ModeSpec { kind: PerturbationKind::Electromagnetic, l: 0, s: Rational::from(3) };
        let v = hautot_sufficiency_check(&to_heun_form(&build_auxiliary(&family_by_label(&mode, "E7")?, &mode)?)?, 6)?;
        suff_ok &= v.satisfied;
        suff.push(v);
    }
    report.push(
        Record::new(
            "sufficient conditions",
            "hautot sufficiency",
            Status::from_bool(suff_ok),
            "satisfied by G7 at the special frequency and by E7 only at l = 0",
        )
        .with_witness(suff),
    );

    push_scan(&mut report, &ScanConfig::new(ScanFamily::ALL.to_vec(), cfg.l_max.max(2), cfg.max_degree))?;

    let s3 = s3_nonexistence(cfg.two_s_max, cfg.l_max.min(10))?;
    report.push(Record::new(
        "S3 nullspaces",
        "S3 non-existence",
        Status::from_bool(s3.oracle_ok && s3.degree_zero_excluded),
        format!(
            "{} cells with 2s <= {}, l <= {}: all nullspaces trivial: {}",
            s3.oracle.len(),
            cfg.two_s_max,
            cfg.l_max.min(10),
            s3.oracle_ok
        ),
    ));
    let derived_all = s3.derived.iter().all(|s| s.solutions == SolutionSet::All);
    let printed_claim = s3.as_printed.iter().all(|s| s.solutions == SolutionSet::Finite(s3.claimed.clone()));
    let status = if s3.symbolic_matches_claim {
        Status::Pass
    } else if derived_all && printed_claim && !s3.printed_row_matches_operator {
        Status::KnownDiscrepancy
    } else {
        Status::Fail
    };
    report.push(
        Record::new(
            "S3 top-coefficient matching",
            "S3 non-existence",
            status,
            "rows derived from the operator make the matching condition an identity in s; \
             the printed row about r = 2 gives s in {0, 1/2}",
        )
        .with_witness(json!({ "derived": s3.derived.first(), "as_printed": s3.as_printed.first() })),
    );

    Ok(report)
}
