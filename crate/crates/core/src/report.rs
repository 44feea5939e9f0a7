//! JSON and text renderings of analysis results.
//!
//! JSON output is canonical: object keys are sorted, integers are plain JSON
//! integers of any size, and every rational is a `"p/q"` string in lowest
//! terms.

use std::fmt::Write as _;

use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use crate::curve::{ChainCurve, LineBundleTwist, SheafNumerics};
use crate::feasibility::{
    Constraint, DerivedBound, FeasibleRegion, InfeasibilityCertificate, Polarization,
    RationalInterval, WeightBound, WeightBoundKind,
};
use crate::oracle::{TwistSweep, ValidationReport};
use crate::rational::{format_ratio, Rational};
use crate::stability::{H0Bound, H0Estimate, KBoundOutcome, Report, Verdict};

pub fn int(value: &BigInt) -> Value {
    Value::Number(
        value
            .to_string()
            .parse()
            .expect("decimal integers are valid JSON numbers"),
    )
}

fn ints(values: &[BigInt]) -> Value {
    Value::Array(values.iter().map(int).collect())
}

pub fn ratio(value: &Rational) -> Value {
    Value::String(format_ratio(value))
}

fn opt<T>(value: Option<T>, f: impl FnOnce(T) -> Value) -> Value {
    value.map_or(Value::Null, f)
}

pub fn interval(i: &RationalInterval) -> Value {
    json!({
        "lower": opt(i.lower(), ratio),
        "lower_open": i.lower_open(),
        "upper": opt(i.upper(), ratio),
        "upper_open": i.upper_open(),
        "text": i.to_string(),
    })
}

pub fn polarization(w: &Polarization) -> Value {
    json!(w.to_strings())
}

fn weight_bound(b: &WeightBound) -> Value {
    let kind = match b.kind {
        WeightBoundKind::Upper => "upper",
        WeightBoundKind::Lower => "lower",
        WeightBoundKind::Unsatisfiable => "unsatisfiable",
    };
    json!({
        "component": b.component,
        "kind": kind,
        "value": ratio(&b.value),
        "open": b.open,
        "text": b.to_string(),
    })
}

fn constraint(c: &Constraint) -> Value {
    json!({"kind": c.name(), "text": c.to_string(), "contribution": ratio(&c.contribution())})
}

fn derived(b: &DerivedBound) -> Value {
    json!({
        "value": ratio(&b.value),
        "open": b.open,
        "constraints": b.constraints.iter().map(constraint).collect::<Vec<_>>(),
    })
}

pub fn certificate(c: &InfeasibilityCertificate) -> Value {
    let mut map = Map::new();
    map.insert("kind".into(), json!(c.kind_name()));
    map.insert("summary".into(), json!(c.summary()));
    map.insert("verified".into(), json!(c.verify()));
    match c {
        InfeasibilityCertificate::Clash {
            quantity,
            lower,
            upper,
        } => {
            map.insert("quantity".into(), json!(quantity.to_string()));
            map.insert("lower".into(), derived(lower));
            map.insert("upper".into(), derived(upper));
        }
        InfeasibilityCertificate::EmptyBigasRow {
            partial_sum,
            lhs,
            rhs,
        } => {
            map.insert("partial_sum".into(), json!(partial_sum));
            map.insert("lhs".into(), opt(lhs.as_ref(), int));
            map.insert("rhs".into(), opt(rhs.as_ref(), int));
        }
        InfeasibilityCertificate::UnsatisfiableWeight {
            component,
            numerator,
        } => {
            map.insert("component".into(), json!(component));
            map.insert("numerator".into(), int(numerator));
        }
    }
    Value::Object(map)
}

pub fn region(r: &FeasibleRegion) -> Value {
    json!({
        "status": r.status.name(),
        "s_intervals": r.s_intervals.iter().map(|i| opt(i.as_ref(), interval)).collect::<Vec<_>>(),
        "bounds": r.bounds.iter().map(weight_bound).collect::<Vec<_>>(),
        "witness": opt(r.witness.as_ref(), polarization),
        "projections": r.projections.iter().map(interval).collect::<Vec<_>>(),
        "certificate": opt(r.certificate.as_ref(), certificate),
    })
}

pub fn verdict(v: &Verdict) -> Value {
    json!({
        "kind": v.kind.name(),
        "criterion": v.criterion.name(),
        "witness": opt(v.witness.as_ref(), polarization),
        "certificate": opt(v.certificate.as_ref(), certificate),
        "notes": v.notes,
        "all_twists": v.all_twists,
    })
}

pub fn numerics(s: &SheafNumerics) -> Value {
    json!({
        "multirank": ints(s.multirank()),
        "multidegree": ints(s.multidegree()),
        "chi_components": ints(s.chi_components()),
        "chi_global": opt(s.chi_global().ok(), int),
    })
}

fn curve(c: &ChainCurve) -> Value {
    json!({
        "genera": ints(c.genera()),
        "arithmetic_genus": int(&c.arithmetic_genus()),
        "chi_structure_sheaf": int(&c.chi_structure_sheaf()),
    })
}

fn twist(t: &LineBundleTwist) -> Value {
    json!({"multidegree": ints(t.multidegree()), "deg_total": int(&t.deg_total())})
}

fn estimate(e: &H0Estimate) -> Value {
    json!({"value": opt(e.value(), int), "method": e.method().name()})
}

fn h0(b: &H0Bound) -> Value {
    json!({
        "per_component": b.per_component.iter().map(estimate).collect::<Vec<_>>(),
        "global": opt(b.global.as_ref(), int),
    })
}

fn k_bound(k: &KBoundOutcome) -> Value {
    match k {
        KBoundOutcome::Checked(c) => json!({
            "applicable": true,
            "bound": int(&c.bound),
            "threshold": int(&c.threshold),
            "holds": c.holds,
            "k_within_bound": c.k_within_bound,
            "case": c.case.name(),
        }),
        KBoundOutcome::NotApplicable(why) => json!({"applicable": false, "reason": why}),
    }
}

pub fn report(r: &Report) -> Value {
    json!({
        "subject": r.subject.name(),
        "curve": curve(&r.curve),
        "twist": opt(r.twist.as_ref(), twist),
        "numerics": numerics(&r.numerics),
        "region": region(&r.region),
        "verdict": verdict(&r.verdict),
        "rules": r.rules.iter().map(verdict).collect::<Vec<_>>(),
        "obstructed": r.obstructed,
        "h0": opt(r.h0.as_ref(), h0),
        "k_bound": opt(r.k_bound.as_ref(), k_bound),
    })
}

/// Output of `polarize`: the numerics the region was computed for, and the
/// region itself.
pub fn polarization_result(sheaf: &SheafNumerics, r: &FeasibleRegion) -> Value {
    json!({"numerics": numerics(sheaf), "region": region(r)})
}

fn sweep(s: &TwistSweep) -> Value {
    json!({
        "twist_range": s.twist_range,
        "twists_checked": s.twists_checked,
        "polarizations_checked": s.polarizations_checked,
        "absence_count": s.absence_count,
        "absences": s.absences.iter().map(|(w, l)| json!({
            "witness": polarization(w),
            "twist": ints(l.multidegree()),
        })).collect::<Vec<_>>(),
    })
}

pub fn validation(v: &ValidationReport) -> Value {
    json!({
        "denominator": v.denominator,
        "grid_size": v.grid_size,
        "region_status": v.region_status.name(),
        "grid_point_count": v.grid_points.len(),
        "grid_points": v.grid_points.iter().map(polarization).collect::<Vec<_>>(),
        "region_has_grid_point": v.region_has_grid_point,
        "agreement": v.agreement,
        "discrepancies": v.discrepancies,
        "twist_sweep": opt(v.twist_sweep.as_ref(), sweep),
    })
}

/// Pretty-printed canonical JSON with a trailing newline.
pub fn to_canonical_string(value: &Value) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("Value always serializes");
    out.push('\n');
    out
}

fn join_ints(values: &[BigInt]) -> String {
    values
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}

fn region_lines(out: &mut String, r: &FeasibleRegion) {
    let _ = writeln!(out, "region: {}", r.status.name());
    for (i, s) in r.s_intervals.iter().enumerate() {
        let text = s.as_ref().map_or("empty".to_string(), ToString::to_string);
        let _ = writeln!(out, "  S_{} in {}", i + 1, text);
    }
    for b in &r.bounds {
        let _ = writeln!(out, "  bound {b}");
    }
    if let Some(w) = &r.witness {
        let _ = writeln!(out, "  witness: ({})", w.to_strings().join(", "));
    }
    if let Some(c) = &r.certificate {
        let _ = writeln!(out, "  certificate: {}", c.summary());
    }
}

fn verdict_lines(out: &mut String, label: &str, v: &Verdict) {
    let _ = writeln!(out, "{label}: {} ({})", v.kind.name(), v.criterion.name());
    if v.all_twists {
        let _ = writeln!(out, "  holds for every twist");
    }
    if let Some(w) = &v.witness {
        let _ = writeln!(out, "  witness: ({})", w.to_strings().join(", "));
    }
    if let Some(c) = &v.certificate {
        let _ = writeln!(out, "  certificate: {}", c.summary());
    }
    for note in &v.notes {
        let _ = writeln!(out, "  note: {note}");
    }
}

pub fn region_text(r: &FeasibleRegion) -> String {
    let mut out = String::new();
    region_lines(&mut out, r);
    out
}

pub fn report_text(r: &Report) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "subject: {}", r.subject.name());
    let _ = writeln!(
        out,
        "curve: genera ({}), p_a = {}",
        join_ints(r.curve.genera()),
        r.curve.arithmetic_genus()
    );
    if let Some(t) = &r.twist {
        let _ = writeln!(out, "twist: ({})", join_ints(t.multidegree()));
    }
    let chi = r
        .numerics
        .chi_global()
        .map_or("unsupported".to_string(), ToString::to_string);
    let _ = writeln!(
        out,
        "numerics: rank ({}), degree ({}), chi_j ({}), chi = {}",
        join_ints(r.numerics.multirank()),
        join_ints(r.numerics.multidegree()),
        join_ints(r.numerics.chi_components()),
        chi
    );
    region_lines(&mut out, &r.region);
    verdict_lines(&mut out, "verdict", &r.verdict);
    for rule in &r.rules {
        verdict_lines(&mut out, "rule", rule);
    }
    if let Some(h) = &r.h0 {
        let per: Vec<String> = h
            .per_component
            .iter()
            .map(|e| match e.value() {
                Some(v) => format!("{v} ({})", e.method().name()),
                None => "unbounded".to_string(),
            })
            .collect();
        let global = h
            .global
            .as_ref()
            .map_or("unbounded".to_string(), ToString::to_string);
        let _ = writeln!(out, "h0 bound: [{}], global {global}", per.join(", "));
    }
    match &r.k_bound {
        Some(KBoundOutcome::Checked(c)) => {
            let _ = writeln!(
                out,
                "k bound: {} < d + r = {}: {} ({})",
                c.bound,
                c.threshold,
                c.holds,
                c.case.name()
            );
        }
        Some(KBoundOutcome::NotApplicable(why)) => {
            let _ = writeln!(out, "k bound: not applicable: {why}");
        }
        None => {}
    }
    out
}

pub fn validation_text(v: &ValidationReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "denominator: {}", v.denominator);
    let _ = writeln!(out, "grid size: {}", v.grid_size);
    let _ = writeln!(out, "region: {}", v.region_status.name());
    let _ = writeln!(out, "grid points: {}", v.grid_points.len());
    for w in &v.grid_points {
        let _ = writeln!(out, "  ({})", w.to_strings().join(", "));
    }
    let _ = writeln!(out, "agreement: {}", v.agreement);
    for d in &v.discrepancies {
        let _ = writeln!(out, "  discrepancy: {d}");
    }
    if let Some(s) = &v.twist_sweep {
        let _ = writeln!(
            out,
            "twist sweep: {} twists x {} polarizations, {} without destabilizer",
            s.twists_checked, s.polarizations_checked, s.absence_count
        );
    }
    out
}
