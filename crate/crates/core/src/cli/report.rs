use serde_json::{json, Map, Value};

use crate::coeff::rational::to_pq;
use crate::relations::CheckReport;

use super::config::{CMode, OutputFormat, SuiteConfig};

pub const REPORT_VERSION: &str = env!("CARGO_PKG_VERSION");

fn c_value(c: &CMode) -> Value {
    match c {
        CMode::Symbolic => Value::String("sym".into()),
        CMode::Value(r) => Value::String(to_pq(r)),
    }
}

fn check_value(r: &CheckReport) -> Value {
    let mut obj = Map::new();
    obj.insert("name".into(), Value::String(r.name.clone()));
    obj.insert(
        "instance".into(),
        json!({
            "relation": r.instance.relation,
            "builder": r.instance.builder,
            "spec": r.instance.spec,
            "order": r.instance.order,
            "indices": r.instance.indices,
        }),
    );
    obj.insert("pass".into(), Value::Bool(r.pass));
    if let Some(w) = &r.witness {
        let mut wit = Map::new();
        wit.insert("u".into(), json!(w.u));
        if let Some(v) = w.v {
            wit.insert("v".into(), json!(v));
        }
        wit.insert("residual".into(), Value::String(w.residual.clone()));
        obj.insert("witness".into(), Value::Object(wit));
    }
    Value::Object(obj)
}

/// Run metadata placed ahead of the checks.
pub fn envelope(config: &SuiteConfig) -> Map<String, Value> {
    let mut obj = Map::new();
    obj.insert("version".into(), Value::String(REPORT_VERSION.into()));
    obj.insert("spec".into(), Value::String(config.spec.to_string()));
    obj.insert(
        "params".into(),
        json!({
            "n": config.spec.rank,
            "m": config.m,
            "K": config.order,
            "c": c_value(&config.c),
        }),
    );
    obj
}

/// JSON document for `reports`; without metadata only the checks array is written.
pub fn report_json(meta: Option<Map<String, Value>>, reports: &[CheckReport]) -> Value {
    let mut obj = meta.unwrap_or_default();
    obj.insert("checks".into(), Value::Array(reports.iter().map(check_value).collect()));
    Value::Object(obj)
}

fn text_lines(reports: &[CheckReport]) -> String {
    let mut out = String::new();
    for r in reports {
        let idx: Vec<String> = r.instance.indices.iter().map(i32::to_string).collect();
        out.push_str(&format!(
            "{} {} {} {} K={} [{}]",
            if r.pass { "PASS" } else { "FAIL" },
            r.name,
            r.instance.builder,
            r.instance.spec,
            r.instance.order,
            idx.join(",")
        ));
        if let Some(w) = &r.witness {
            match w.v {
                Some(v) => out.push_str(&format!(" at u^-{} v^-{}: {}", w.u, v, w.residual)),
                None => out.push_str(&format!(" at u^-{}: {}", w.u, w.residual)),
            }
        }
        out.push('\n');
    }
    let failed = reports.iter().filter(|r| !r.pass).count();
    out.push_str(&format!("{} checks, {} failed\n", reports.len(), failed));
    out
}

/// Serialized report in the requested format.
pub fn emit_report(meta: Option<Map<String, Value>>, reports: &[CheckReport], format: OutputFormat) -> Vec<u8> {
    match format {
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(&report_json(meta, reports)).expect("values serialize");
            s.push('\n');
            s.into_bytes()
        }
        OutputFormat::Text => text_lines(reports).into_bytes(),
    }
}
