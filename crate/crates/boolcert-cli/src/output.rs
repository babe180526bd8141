//! JSON views of the library types. Everything renders through
//! `serde_json::Value`, whose object keys are sorted, so repeated runs
//! with the same inputs produce identical bytes. Exact scalars appear as
//! strings, never floats.

use boolcert::algebra::{EliminationResult, Root};
use boolcert::certificate::Verdict;
use boolcert::oracle::{AuditReport, VarietyReport};
use boolcert::saturation::{term_bound, SaturatedSystem};
use boolcert::symmetry::{DestabilizerSet, PolySystem};
use serde_json::{json, Value};

pub fn system_json(sys: &PolySystem) -> Value {
    json!({
        "n": sys.n(),
        "k": sys.k(),
        "system": sys
            .iter()
            .map(|(name, poly)| json!({"name": name, "poly": poly.to_string()}))
            .collect::<Vec<_>>(),
    })
}

pub fn stab_json(split: &DestabilizerSet) -> Value {
    json!({
        "n": split.n(),
        "group_order": split.stab_order() + split.c(),
        "stab_order": split.stab_order(),
        "c": split.c(),
        "stabilizer": split.stab(),
    })
}

pub fn saturate_json(sat: &SaturatedSystem) -> Value {
    let c = sat.destab().c();
    json!({
        "n": sat.n(),
        "c": c,
        "g": sat
            .source()
            .iter()
            .zip(sat.g_polys())
            .map(|((name, f), g)| json!({
                "name": name,
                "poly": g.to_string(),
                "terms": g.term_count(),
                "term_bound": term_bound(f.term_count(), c).to_string(),
            }))
            .collect::<Vec<_>>(),
    })
}

pub fn root_json(root: &Root) -> Value {
    Value::String(root.to_string())
}

pub fn elimination_json(names: &[String], elim: &EliminationResult) -> Value {
    json!({
        "mode": elim.mode.to_string(),
        "var": elim.var,
        "p": elim.p.as_ref().map(|p| p.to_string()),
        "beta": elim.beta.iter().map(root_json).collect::<Vec<_>>(),
        "cofactors": names
            .iter()
            .zip(&elim.cofactors)
            .map(|(name, h)| json!({"name": name, "h": h.to_string()}))
            .collect::<Vec<_>>(),
        "raw_degree_cap": elim.raw_degree_cap,
        "verified": elim.verified,
    })
}

pub fn verdict_json(v: &Verdict) -> Value {
    json!({
        "verdict": v.tag.to_string(),
        "witness": v.witness,
        "mode": v.mode.to_string(),
        "c": v.c,
        "stab_order": v.stab_order,
        "p": v.p.as_ref().map(|p| p.to_string()),
        "beta_candidates_tried": v.beta_candidates_tried,
        "evidence": v.evidence,
    })
}

pub fn brute_json(report: &VarietyReport) -> Value {
    json!({
        "n": report.n,
        "count": report.count,
        "points": report.points,
    })
}

pub fn audit_json(label: &str, sys: &PolySystem, report: &AuditReport) -> Value {
    json!({
        "label": label,
        "n": sys.n(),
        "k": sys.k(),
        "class": report.class.to_string(),
        "detail": report.detail,
        "oracle_count": report.oracle.count,
        "verdict": verdict_json(&report.verdict),
    })
}

/// Compact point rendering for text mode: `[1,0,1]`.
pub fn point_text(point: &[u8]) -> String {
    let bits: Vec<String> = point.iter().map(|b| b.to_string()).collect();
    format!("[{}]", bits.join(","))
}
