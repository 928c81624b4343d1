//! Browser bindings. Each operation takes strings and returns a JSON
//! document, so the page needs no glue beyond `JSON.parse`.

use eqlf::kernel::{trace_render, CheckConfig, Kernel, RuleKind, Signature, Verdict};
use eqlf::parse::{parse_class, parse_object, parse_signature, print_object, to_telescope, ParseError};
use eqlf::stdsigs::{self, CorpusId};
use eqlf::syntax::Telescope;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

fn parse_error(what: &str, e: &ParseError) -> Value {
    json!({
        "ok": false,
        "stage": "parse",
        "where": what,
        "line": e.span.start_line,
        "column": e.span.start_col,
        "message": e.to_string(),
    })
}

fn failure(stage: &str, message: impl ToString) -> Value {
    json!({ "ok": false, "stage": stage, "message": message.to_string() })
}

fn config(fuel: u32, eta: bool) -> CheckConfig {
    CheckConfig {
        fuel: u64::from(fuel.max(1)),
        eta,
        trace: true,
    }
}

/// Checked kernel plus context, or the JSON error to report.
fn setup(source: &str, ctx: &str, cfg: CheckConfig) -> Result<(Kernel, Telescope), Value> {
    let decls = parse_signature(source).map_err(|e| parse_error("signature", &e))?;
    let sig = Signature::check(&to_telescope(&decls), cfg).map_err(|e| failure("signature", e))?;
    let k = Kernel::new(sig, cfg);
    let ctx = to_telescope(&parse_signature(ctx).map_err(|e| parse_error("context", &e))?);
    k.check_context(&ctx).map_err(|e| failure("context", e))?;
    Ok((k, ctx))
}

pub fn check_signature_json(source: &str) -> Value {
    let decls = match parse_signature(source) {
        Ok(d) => d,
        Err(e) => return parse_error("signature", &e),
    };
    match Signature::check(&to_telescope(&decls), CheckConfig::default()) {
        Ok(sig) => json!({
            "ok": true,
            "declarations": sig.len(),
            "reductions": sig.rules().iter().filter(|r| r.kind == RuleKind::Reduction)
                .map(|r| r.name.to_string()).collect::<Vec<_>>(),
            "expansions": sig.rules().iter().filter(|r| r.kind == RuleKind::Expansion)
                .map(|r| r.name.to_string()).collect::<Vec<_>>(),
            "warnings": sig.warnings().iter().map(|w| w.to_string()).collect::<Vec<_>>(),
        }),
        Err(e) => failure("signature", e),
    }
}

pub fn equal_json(source: &str, ctx: &str, lhs: &str, rhs: &str, class: &str, fuel: u32, eta: bool) -> Value {
    let (k, ctx) = match setup(source, ctx, config(fuel, eta)) {
        Ok(x) => x,
        Err(v) => return v,
    };
    let parsed = (|| Ok::<_, Value>((
        parse_object(lhs).map_err(|e| parse_error("left", &e))?,
        parse_object(rhs).map_err(|e| parse_error("right", &e))?,
        parse_class(class).map_err(|e| parse_error("class", &e))?,
    )))();
    let (a, b, c) = match parsed {
        Ok(x) => x,
        Err(v) => return v,
    };
    if let Err(e) = k.check_class(&ctx, &c) {
        return failure("class", e);
    }
    for (side, o) in [("left", &a), ("right", &b)] {
        if let Err(e) = k.check_object(&ctx, o, &c) {
            return failure(side, e);
        }
    }
    let (v, steps) = k.equal_objects_traced(&ctx, &a, &b, &c);
    json!({
        "ok": true,
        "verdict": v.to_string(),
        "proven": v == Verdict::ProvenEqual,
        "trace": trace_render(&steps).lines().collect::<Vec<_>>(),
    })
}

pub fn normalize_json(source: &str, ctx: &str, expr: &str, fuel: u32) -> Value {
    let (k, ctx) = match setup(source, ctx, config(fuel, true)) {
        Ok(x) => x,
        Err(v) => return v,
    };
    let o = match parse_object(expr) {
        Ok(o) => o,
        Err(e) => return parse_error("expression", &e),
    };
    if let Err(e) = k.infer_object(&ctx, &o) {
        return failure("expression", e);
    }
    let (r, steps) = k.normalize_traced(&ctx, &o);
    let trace: Vec<String> = trace_render(&steps).lines().map(str::to_string).collect();
    match r {
        Ok(n) => json!({ "ok": true, "normal": print_object(&n), "steps": steps.len(), "trace": trace }),
        Err(e) => json!({ "ok": false, "stage": "normalize", "message": e.to_string(), "trace": trace }),
    }
}

/// Layered source of a bundled signature, or an empty string.
pub fn corpus_source_text(id: &str) -> String {
    id.parse::<CorpusId>()
        .map(|id| stdsigs::entry(id).source())
        .unwrap_or_default()
}

#[wasm_bindgen]
pub fn check_signature(source: &str) -> String {
    check_signature_json(source).to_string()
}

#[wasm_bindgen]
pub fn equal(source: &str, ctx: &str, lhs: &str, rhs: &str, class: &str, fuel: u32, eta: bool) -> String {
    equal_json(source, ctx, lhs, rhs, class, fuel, eta).to_string()
}

#[wasm_bindgen]
pub fn normalize(source: &str, ctx: &str, expr: &str, fuel: u32) -> String {
    normalize_json(source, ctx, expr, fuel).to_string()
}

#[wasm_bindgen]
pub fn corpus_source(id: &str) -> String {
    corpus_source_text(id)
}

/// Bundled signature ids, comma separated.
#[wasm_bindgen]
pub fn corpus_ids() -> String {
    CorpusId::ALL.map(|c| c.as_str()).join(",")
}
