use serde_json::Value;

use crate::commands::Output;
use crate::dsl::{Diagnostic, Severity};

const BOLD: &str = "\x1b[1m";
const RED: &str = "\x1b[31;1m";
const YELLOW: &str = "\x1b[33;1m";
const RESET: &str = "\x1b[0m";

/// Pretty JSON; object keys come out sorted because `serde_json::Map` is a `BTreeMap`.
pub fn json(out: &Output) -> String {
    let mut s = serde_json::to_string_pretty(&serde_json::to_value(out).expect("serializable")).expect("valid JSON");
    s.push('\n');
    s
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn rows(prefix: &str, v: &Value, acc: &mut Vec<(String, String)>) {
    match v {
        Value::Object(m) if !m.is_empty() => {
            for (k, x) in m {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                rows(&key, x, acc);
            }
        }
        other => acc.push((prefix.to_string(), cell(other))),
    }
}

/// Two aligned columns of dotted keys and compact values.
pub fn table(out: &Output, color: bool) -> String {
    let mut acc = vec![("command".to_string(), out.command.clone())];
    rows("parameters", &out.parameters, &mut acc);
    rows("report", &out.report, &mut acc);
    let width = acc.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    let mut s = String::new();
    for (k, v) in acc {
        let pad = " ".repeat(width - k.len());
        if color {
            s.push_str(&format!("{BOLD}{k}{RESET}{pad}  {v}\n"));
        } else {
            s.push_str(&format!("{k}{pad}  {v}\n"));
        }
    }
    s
}

/// `origin:line:column: error: message`, with the location parts omitted when unknown.
pub fn diagnostic(origin: &str, d: &Diagnostic, color: bool) -> String {
    let (label, paint) = match d.severity {
        Severity::Error => ("error", RED),
        Severity::Warning => ("warning", YELLOW),
    };
    let label = if color { format!("{paint}{label}{RESET}") } else { label.to_string() };
    let mut loc = origin.to_string();
    if let Some(s) = d.span {
        loc = format!("{loc}:{}:{}", s.line, s.column);
    }
    if loc.is_empty() {
        format!("{label}: {}\n", d.message)
    } else {
        format!("{loc}: {label}: {}\n", d.message)
    }
}
