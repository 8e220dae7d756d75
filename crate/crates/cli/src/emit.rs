//! JSON and CSV emission with deterministic, canonical formatting.
//!
//! Rationals are emitted as `"p/q"` strings in lowest terms with `q > 0`.
//! Integers become JSON numbers only when they fit the 53-bit safe range;
//! larger magnitudes are emitted as decimal strings so no consumer silently
//! loses precision.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use hkcover_core::{
    ArrangementCombinatorics, CertStep, Certificate, ChernInvariants, FamilyPattern, Finding,
    GapRow, HirzebruchQuadratic, LemmaReport, ScanReport, Severity, SurfaceModel,
    ValidationReport,
};

const SAFE_MAX: i128 = (1i128 << 53) - 1;

pub fn bigint(v: &BigInt) -> Value {
    match v.to_i128() {
        Some(small) if small.abs() <= SAFE_MAX => json!(small as i64),
        _ => Value::String(v.to_string()),
    }
}

pub fn rational(v: &BigRational) -> Value {
    Value::String(format!("{}/{}", v.numer(), v.denom()))
}

pub fn surface(model: &SurfaceModel) -> Value {
    match model {
        SurfaceModel::Hirzebruch { e } => json!({"type": "hirzebruch", "e": e}),
        SurfaceModel::NefCanonical { euler, ksq, a, b } => {
            json!({"type": "nef_canonical", "euler": euler, "ksq": ksq, "a": a, "b": b})
        }
        SurfaceModel::Plane { d } => json!({"type": "plane", "d": d}),
    }
}

pub fn combinatorics(combo: &ArrangementCombinatorics) -> Value {
    let t: serde_json::Map<String, Value> = combo
        .t_map()
        .iter()
        .map(|(r, c)| (r.to_string(), json!(c)))
        .collect();
    json!({"k": combo.k(), "t": t})
}

fn finding(f: &Finding) -> Value {
    json!({
        "rule": f.rule,
        "passed": f.passed,
        "severity": match f.severity { Severity::Error => "error", Severity::Warning => "warning" },
        "detail": f.detail,
    })
}

pub fn validation_report(report: &ValidationReport) -> Value {
    json!({
        "findings": report.findings.iter().map(finding).collect::<Vec<_>>(),
        "passed": report.passed(),
    })
}

pub fn invariants(inv: &ChernInvariants) -> Value {
    json!({
        "n": inv.n,
        "k": inv.k,
        "scaled_c2": bigint(&inv.scaled_c2),
        "scaled_c1sq": bigint(&inv.scaled_c1sq),
        "total_c2": bigint(&inv.total_c2),
        "total_c1sq": bigint(&inv.total_c1sq),
        "bmy_gap_scaled": bigint(&inv.bmy_gap_scaled),
    })
}

pub fn hpoly(h: &HirzebruchQuadratic) -> Value {
    json!({
        "c2": bigint(&h.c2),
        "c1": bigint(&h.c1),
        "c0": bigint(&h.c0),
    })
}

fn family_pattern(family: &FamilyPattern) -> Value {
    match family {
        FamilyPattern::Hirzebruch { e } => {
            json!({"type": "hirzebruch", "e": e, "symbolic": e.is_none()})
        }
        FamilyPattern::NefCanonical { fixed } => match fixed {
            Some(p) => json!({
                "type": "nef_canonical",
                "a": p.a, "b": p.b, "delta": p.delta,
                "symbolic": false,
            }),
            None => json!({"type": "nef_canonical", "symbolic": true}),
        },
        FamilyPattern::Plane { d } => json!({"type": "plane", "d": d, "symbolic": d.is_none()}),
    }
}

fn cert_step(step: &CertStep) -> Value {
    json!({
        "relation": step.relation,
        "anchor": step.anchor,
        "verified": step.verified,
    })
}

pub fn certificate(cert: &Certificate) -> Value {
    json!({
        "id": cert.id,
        "family": family_pattern(&cert.family),
        "n": cert.n,
        "steps": cert.steps.iter().map(cert_step).collect::<Vec<_>>(),
        "conclusion": {
            "relation": cert.conclusion.relation,
            "detail": cert.conclusion.detail,
        },
        "valid": cert.valid,
    })
}

pub fn lemma_report(report: &LemmaReport) -> Value {
    json!({
        "mode": "lemma_f0",
        "cells": report.cells.iter().map(|c| json!({
            "e": c.e,
            "k": c.k,
            "feasible": c.feasible,
            "counterexamples": c.counterexamples.iter().map(combinatorics).collect::<Vec<_>>(),
            "complete": c.complete,
        })).collect::<Vec<_>>(),
        "valid": report.valid,
        "complete": report.complete,
        "gian_side_condition": report.gian_side_condition,
    })
}

pub fn scan_report(report: &ScanReport) -> Value {
    json!({
        "mode": "theorem_scan",
        "cells": report.cells.iter().map(|c| json!({
            "surface": surface(&c.surface),
            "k": c.k,
            "n": c.n,
            "candidates": c.candidates,
            "hits": c.hits,
            "complete": c.complete,
        })).collect::<Vec<_>>(),
        "hits": report.hits.iter().map(|h| json!({
            "surface": surface(&h.surface),
            "k": h.k,
            "n": h.n,
            "combinatorics": combinatorics(&h.combo),
            "forced_counts_consistent": h.forced_counts_consistent,
        })).collect::<Vec<_>>(),
        "valid": report.valid,
        "complete": report.complete,
        "certificates": report.certificates.iter().map(|c| json!({
            "id": c.id,
            "n": c.n,
            "valid": c.valid,
        })).collect::<Vec<_>>(),
    })
}

pub fn gap_rows(rows: &[GapRow]) -> Value {
    json!({
        "mode": "gap_minimum",
        "rows": rows.iter().map(|r| json!({
            "surface": surface(&r.surface),
            "k": r.k,
            "n": r.n,
            "min_h": r.min_h.as_ref().map(bigint),
            "witness": r.witness.as_ref().map(combinatorics),
            "feasible": r.feasible,
            "no_feasible_combinatorics": r.min_h.is_none(),
            "complete": r.complete,
        })).collect::<Vec<_>>(),
    })
}

fn surface_csv(model: &SurfaceModel) -> (String, String) {
    match model {
        SurfaceModel::Hirzebruch { e } => ("hirzebruch".into(), format!("e={e}")),
        SurfaceModel::NefCanonical { euler, ksq, a, b } => {
            ("nef_canonical".into(), format!("euler={euler};ksq={ksq};a={a};b={b}"))
        }
        SurfaceModel::Plane { d } => ("plane".into(), format!("d={d}")),
    }
}

pub fn scan_report_csv(report: &ScanReport) -> String {
    let mut out = String::from("family,params,k,n,candidates,hits,complete\n");
    for c in &report.cells {
        let (family, params) = surface_csv(&c.surface);
        out.push_str(&format!(
            "{family},{params},{},{},{},{},{}\n",
            c.k, c.n, c.candidates, c.hits, c.complete
        ));
    }
    out
}

pub fn gap_rows_csv(rows: &[GapRow]) -> String {
    let mut out = String::from("family,params,k,n,min_h,witness,feasible,complete\n");
    for r in rows {
        let (family, params) = surface_csv(&r.surface);
        let min_h = r.min_h.as_ref().map(|v| v.to_string()).unwrap_or_else(|| "none".into());
        let witness = r
            .witness
            .as_ref()
            .map(|w| {
                w.t_map()
                    .iter()
                    .map(|(k, v)| format!("t{k}={v}"))
                    .collect::<Vec<_>>()
                    .join(";")
            })
            .unwrap_or_else(|| "none".into());
        out.push_str(&format!(
            "{family},{params},{},{},{min_h},{witness},{},{}\n",
            r.k, r.n, r.feasible, r.complete
        ));
    }
    out
}

pub fn lemma_report_csv(report: &LemmaReport) -> String {
    let mut out = String::from("e,k,feasible,counterexamples,complete\n");
    for c in &report.cells {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            c.e,
            c.k,
            c.feasible,
            c.counterexamples.len(),
            c.complete
        ));
    }
    out
}
