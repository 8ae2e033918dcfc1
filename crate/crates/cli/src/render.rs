//! Text and JSON renderings of a report. Both are pure functions of the
//! report, so equal reports render to equal bytes.

use std::fmt::Write;

use serde_json::Value;

use crate::execute::Report;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Json,
    Text,
}

pub fn render(report: &Report, format: Format) -> String {
    let value = report.to_json();
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&value).expect("report values serialize");
            s.push('\n');
            s
        }
        Format::Text => render_text(&value),
    }
}

fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "none".into(),
        Value::Array(items) => format!("[{}]", items.iter().map(compact).collect::<Vec<_>>().join(", ")),
        other => other.to_string(),
    }
}

fn jet_line(out: &mut String, label: &str, jet: &Value) {
    let classical = if jet["classical"] == Value::Bool(true) {
        format!("classical (dim {})", jet["dim"])
    } else {
        format!("NOT classical (dim {} ≠ {})", jet["dim"], jet["classical_dim"])
    };
    let _ = writeln!(out, "{label}: order {}, width {}, {classical}", jet["order"], jet["width"]);
    let _ = writeln!(out, "  point: {}", compact(&jet["point"]));
    let _ = writeln!(out, "  generators: {}", compact(&jet["generators"]));
}

fn fields(out: &mut String, v: &Value, skip: &[&str]) {
    if let Value::Object(map) = v {
        for (k, x) in map {
            if skip.contains(&k.as_str()) {
                continue;
            }
            if x.is_object() && x.get("generators").is_some() {
                jet_line(out, &format!("  {k}"), x);
            } else if x.is_object() && x.get("basis").is_some() {
                let _ = writeln!(out, "  {}: subspace of dim {}", k.replace('_', " "), x["dim"]);
            } else {
                let _ = writeln!(out, "  {}: {}", k.replace('_', " "), compact(x));
            }
        }
    }
}

fn render_text(report: &Value) -> String {
    let mut out = String::new();
    for b in report["bindings"].as_array().into_iter().flatten() {
        if let Some(e) = b.get("error") {
            let _ = writeln!(out, "binding {} ({}) failed: {}", compact(&b["name"]), compact(&b["kind"]), compact(e));
        }
    }
    for entry in report["results"].as_array().into_iter().flatten() {
        let index = &entry["index"];
        let op = compact(&entry["op"]);
        let subject = compact(&entry["subject"]);
        if let Some(e) = entry.get("error") {
            let _ = writeln!(out, "[{index}] {op} {subject}: error: {}", compact(e));
            continue;
        }
        let r = &entry["result"];
        match op.as_str() {
            "jet" | "hat" | "pushforward" => jet_line(&mut out, &format!("[{index}] {op} {subject}"), r),
            "info" => {
                let classical = if r["classical"] == Value::Bool(true) { "classical" } else { "not classical" };
                let _ = writeln!(
                    out,
                    "[{index}] algebra {subject}: dim {}, order {}, width {}, der dim {}, filtration {}, {classical}",
                    r["dim"],
                    r["order"],
                    r["width"],
                    r["der_dim"],
                    compact(&r["filtration"])
                );
            }
            "derive" => {
                jet_line(&mut out, &format!("[{index}] derived jet of {subject}"), &r["derived"]);
                fields(&mut out, r, &["derived"]);
            }
            _ => {
                let _ = writeln!(out, "[{index}] {op} {subject}");
                fields(&mut out, r, &[]);
            }
        }
    }
    let status = if report["status"] == 0 { "ok" } else { "errors" };
    let _ = writeln!(out, "status: {status}");
    out
}
