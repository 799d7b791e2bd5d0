//! Text and JSON reports. JSON objects have sorted keys and every rational
//! is a string, so identical runs give identical bytes.

use std::collections::BTreeMap;

use halfderiv::algebra::{AlgebraSpec, Report};
use halfderiv::catalog::entries;
use halfderiv::deriv::DerivationReport;
use halfderiv::dsl::render_product;
use halfderiv::tpa::{ProductSpec, TpaReport};
use halfderiv::Rational;
use serde_json::{json, Map, Value};

/// A finished command: both renderings, the verdict and any diagnostics
/// destined for standard error.
pub struct Rendered {
    pub text: String,
    pub json: Value,
    pub ok: bool,
    pub diagnostics: Vec<String>,
}

impl Rendered {
    pub fn plain(text: String) -> Self {
        let json = json!({ "text": text });
        Rendered { text, json, ok: true, diagnostics: Vec::new() }
    }

    pub fn json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(&sorted(&self.json)).expect("JSON values always serialize");
        s.push('\n');
        s
    }
}

/// Rebuilds every object with its keys in order, whatever map type
/// serde_json was compiled with.
fn sorted(v: &Value) -> Value {
    match v {
        Value::Object(m) => {
            let ordered: BTreeMap<&String, Value> = m.iter().map(|(k, v)| (k, sorted(v))).collect();
            Value::Object(ordered.into_iter().map(|(k, v)| (k.clone(), v)).collect::<Map<_, _>>())
        }
        Value::Array(a) => Value::Array(a.iter().map(sorted).collect()),
        other => other.clone(),
    }
}

fn displayed(twice: i64) -> String {
    Rational::new(twice, 2).to_string()
}

fn params_json(params: &BTreeMap<String, Rational>) -> Value {
    Value::Object(params.iter().map(|(k, v)| (k.clone(), Value::String(v.to_string()))).collect())
}

fn params_text(params: &BTreeMap<String, Rational>) -> String {
    if params.is_empty() {
        return String::new();
    }
    let p: Vec<String> = params.iter().map(|(k, v)| format!("{k}={v}")).collect();
    format!(" ({})", p.join(", "))
}

pub fn list() -> Rendered {
    let mut text = String::new();
    let mut items = Vec::new();
    for e in entries() {
        let reps: Vec<String> = e.representatives.iter().map(|(l, m)| format!("lambda={l},mu={m}")).collect();
        text.push_str(&format!("{:<10} {}", e.name, e.description));
        if !e.params.is_empty() {
            text.push_str(&format!(" [params: {}; e.g. {}]", e.params.join(", "), reps.join(" | ")));
        }
        text.push('\n');
        items.push(json!({
            "name": e.name,
            "description": e.description,
            "params": e.params,
            "representatives": reps,
        }));
    }
    Rendered { text, json: json!({ "entries": items }), ok: true, diagnostics: Vec::new() }
}

fn checks_json(spec: &AlgebraSpec, reports: &[&Report]) -> Value {
    Value::Array(
        reports
            .iter()
            .map(|r| {
                let v: Vec<Value> = r
                    .violations
                    .iter()
                    .map(|v| {
                        let w: Vec<String> = v.witness.iter().map(|s| spec.fmt_symbol(s)).collect();
                        json!({ "witness": w, "residual": spec.fmt_element(&v.residual) })
                    })
                    .collect();
                json!({
                    "check": r.check,
                    "tuples_checked": r.tuples_checked,
                    "passed": r.passed(),
                    "violations": v,
                })
            })
            .collect(),
    )
}

fn checks_text(spec: &AlgebraSpec, reports: &[&Report], text: &mut String, diagnostics: &mut Vec<String>) {
    for r in reports {
        let verdict = if r.passed() { "ok" } else { "FAILED" };
        text.push_str(&format!(
            "{}: {verdict} ({} tuples, {} violations)\n",
            r.check,
            r.tuples_checked,
            r.violations.len()
        ));
        for v in &r.violations {
            text.push_str(&format!("  {}\n", v.describe(spec)));
        }
        if let Some(first) = r.violations.first() {
            diagnostics.push(format!("{} violated at {}", r.check, first.describe(spec)));
        }
    }
}

pub fn validation(spec: &AlgebraSpec, neq: i64, checks: &[Report]) -> Rendered {
    let refs: Vec<&Report> = checks.iter().collect();
    let ok = refs.iter().all(|r| r.passed());
    let mut text = format!("algebra {}{} checked up to |index| <= {neq}\n", spec.name(), params_text(spec.params()));
    let mut diagnostics = Vec::new();
    checks_text(spec, &refs, &mut text, &mut diagnostics);
    let json = json!({
        "algebra": spec.name(),
        "params": params_json(spec.params()),
        "window": { "neq": neq.to_string() },
        "checks": checks_json(spec, &refs),
        "ok": ok,
    });
    Rendered { text, json, ok, diagnostics }
}

pub fn derivations(spec: &AlgebraSpec, r: &DerivationReport, expect: Option<&BTreeMap<i64, usize>>) -> Rendered {
    let dims = r.dims();
    let mut mismatches = Vec::new();
    for (&g, &want) in expect.into_iter().flatten() {
        match dims.get(&g) {
            None => mismatches.push(format!("degree {} was expected but not solved", displayed(g))),
            Some(&got) if got != want => {
                mismatches.push(format!("degree {}: expected dimension {want}, found {got}", displayed(g)))
            }
            Some(_) => {}
        }
    }
    let mut diagnostics = mismatches.clone();
    for d in r.degrees.iter().filter(|d| !d.residual_checked) {
        diagnostics.push(format!("degree {}: a generator fails the residual re-check", displayed(d.degree)));
    }
    let ok = diagnostics.is_empty();

    let w = &r.window;
    let mut text = format!(
        "algebra {}{} delta={} window neq={} nunk={} ncore={}\n",
        r.algebra,
        params_text(&r.params),
        r.delta,
        displayed(w.n_eq),
        displayed(w.n_unk),
        displayed(w.n_core)
    );
    let mut degrees = Vec::new();
    for d in &r.degrees {
        text.push_str(&format!(
            "degree {}: dim {} (unknowns {}, equations {}, residual {})\n",
            displayed(d.degree),
            d.interior_dim,
            d.unknowns,
            d.equations,
            if d.residual_checked { "checked" } else { "FAILED" }
        ));
        let mut gens = Vec::new();
        for g in &d.generators {
            text.push_str(&format!("  {}\n", g.description));
            let coeffs: Vec<Value> = g
                .coefficients
                .iter()
                .map(|(s, t, c)| json!([spec.fmt_symbol(s), spec.fmt_symbol(t), c.to_string()]))
                .collect();
            gens.push(json!({ "description": g.description, "coefficients": coeffs }));
        }
        degrees.push(json!({
            "degree": displayed(d.degree),
            "interior_dim": d.interior_dim,
            "raw_dim": d.raw_dim,
            "unknowns": d.unknowns,
            "equations": d.equations,
            "generators": gens,
            "residual_checked": d.residual_checked,
        }));
    }
    let dims_text: Vec<String> = dims.iter().map(|(g, n)| format!("{}:{n}", displayed(*g))).collect();
    text.push_str(&format!("dims {}\n", dims_text.join(",")));
    for m in &mismatches {
        text.push_str(&format!("MISMATCH {m}\n"));
    }
    let dims_json: Map<String, Value> = dims.iter().map(|(g, n)| (displayed(*g), json!(n))).collect();
    let mut json = json!({
        "algebra": r.algebra,
        "params": params_json(&r.params),
        "delta": r.delta.to_string(),
        "window": { "neq": displayed(w.n_eq), "nunk": displayed(w.n_unk), "ncore": displayed(w.n_core) },
        "degrees": degrees,
        "dims": dims_json,
        "ok": ok,
    });
    if expect.is_some() {
        json["expect_mismatches"] = json!(mismatches);
    }
    Rendered { text, json, ok, diagnostics }
}

pub fn tpa(spec: &AlgebraSpec, p: &ProductSpec, neq: i64, r: &TpaReport) -> Rendered {
    let refs = r.reports();
    let ok = r.passed();
    let classification = match (ok, p.is_zero()) {
        (_, true) => "trivial (zero product)",
        (true, false) => "nontrivial transposed Poisson structure",
        (false, false) => "not a transposed Poisson structure",
    };
    let product = render_product(spec, p);
    let mut text = format!("algebra {}{} checked up to |index| <= {neq}\n", spec.name(), params_text(spec.params()));
    text.push_str(&product);
    let mut diagnostics = Vec::new();
    checks_text(spec, &refs, &mut text, &mut diagnostics);
    text.push_str(&format!("verdict: {classification}\n"));
    let json = json!({
        "algebra": spec.name(),
        "params": params_json(spec.params()),
        "product": product,
        "window": { "neq": neq.to_string() },
        "checks": checks_json(spec, &refs),
        "classification": classification,
        "ok": ok,
    });
    Rendered { text, json, ok, diagnostics }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keys_are_sorted() {
        let v = json!({ "b": 1, "a": { "z": 2, "y": [ { "d": 1, "c": 2 } ] } });
        let s = serde_json::to_string(&sorted(&v)).unwrap();
        assert_eq!(s, r#"{"a":{"y":[{"c":2,"d":1}],"z":2},"b":1}"#);
    }

    #[test]
    fn displayed_degrees() {
        assert_eq!(displayed(-3), "-3/2");
        assert_eq!(displayed(4), "2");
        assert_eq!(displayed(0), "0");
    }
}
