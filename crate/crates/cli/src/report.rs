use std::fmt::Write as _;

use hopf_core::group::{AbelianInvariants, GroupSignature};
use hopf_core::hopf::Provenance;
use serde::Serialize;
use serde_json::{Map, Value};

use crate::error::is_cap;

/// One line of a section: a named item, its measured values and an
/// optional pass/fail verdict.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Row {
    pub item: String,
    pub values: Map<String, Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<bool>,
}

impl Row {
    pub fn new(item: impl Into<String>) -> Self {
        Row { item: item.into(), values: Map::new(), verdict: None }
    }

    pub fn value(mut self, key: &str, v: impl Into<Value>) -> Self {
        self.values.insert(key.to_string(), v.into());
        self
    }

    pub fn invariants(self, key: &str, inv: Option<&AbelianInvariants>) -> Self {
        self.value(key, invariants_value(inv))
    }

    /// Order and invariant factors (or `null` when non-abelian).
    pub fn signature(self, prefix: &str, sig: &GroupSignature) -> Self {
        let order_key = if prefix.is_empty() { "order".to_string() } else { format!("{prefix} order") };
        let inv_key = if prefix.is_empty() { "invariants".to_string() } else { format!("{prefix} invariants") };
        self.value(&order_key, sig.order).invariants(&inv_key, sig.invariants.as_ref())
    }

    pub fn verdict(mut self, passed: bool) -> Self {
        self.verdict = Some(passed);
        self
    }
}

pub fn invariants_value(inv: Option<&AbelianInvariants>) -> Value {
    match inv {
        Some(inv) => Value::from(inv.factors().to_vec()),
        None => Value::Null,
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SectionError {
    /// `"cap"` for resource caps, `"error"` otherwise.
    pub kind: String,
    pub message: String,
}

impl SectionError {
    pub fn from_core(context: &str, e: &hopf_core::Error) -> Self {
        SectionError {
            kind: if is_cap(e) { "cap".into() } else { "error".into() },
            message: format!("{context}: {e}"),
        }
    }
}

/// The output of one task or one verification suite.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Section {
    pub name: String,
    #[serde(skip_serializing_if = "Map::is_empty")]
    pub inputs: Map<String, Value>,
    pub rows: Vec<Row>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub provenance: Vec<Provenance>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<SectionError>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<u64>,
}

impl Section {
    pub fn new(name: impl Into<String>) -> Self {
        Section { name: name.into(), inputs: Map::new(), rows: Vec::new(), provenance: Vec::new(), error: None, wall_ms: None }
    }

    pub fn input(mut self, key: &str, v: impl Into<Value>) -> Self {
        self.inputs.insert(key.to_string(), v.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.error.is_none() && self.rows.iter().all(|r| r.verdict != Some(false))
    }

    pub fn failures(&self) -> usize {
        self.rows.iter().filter(|r| r.verdict == Some(false)).count()
    }
}

#[derive(Clone, Copy, Debug, Serialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    Failed,
    Cap,
}

impl Status {
    pub fn exit_code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::Failed => 1,
            Status::Cap => 3,
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Report {
    pub title: String,
    pub order_cap: usize,
    pub sections: Vec<Section>,
    pub status: Status,
}

impl Report {
    pub fn new(title: impl Into<String>, sections: Vec<Section>) -> Self {
        let status = if sections.iter().any(|s| s.error.as_ref().is_some_and(|e| e.kind == "cap")) {
            Status::Cap
        } else if sections.iter().all(Section::passed) {
            Status::Ok
        } else {
            Status::Failed
        };
        Report { title: title.into(), order_cap: hopf_core::group::default_order_cap(), sections, status }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "{} (order cap {})", self.title, self.order_cap).unwrap();
        for s in &self.sections {
            out.push('\n');
            let mark = if s.error.is_some() {
                "ERROR"
            } else if s.passed() {
                "ok"
            } else {
                "FAIL"
            };
            write!(out, "[{mark}] {}", s.name).unwrap();
            if let Some(ms) = s.wall_ms {
                write!(out, "  ({ms} ms)").unwrap();
            }
            out.push('\n');
            if !s.inputs.is_empty() {
                let inputs: Vec<String> = s.inputs.iter().map(|(k, v)| format!("{k} = {}", render(v))).collect();
                writeln!(out, "  inputs: {}", inputs.join(", ")).unwrap();
            }
            // A new header whenever the columns change.
            let mut start = 0;
            while start < s.rows.len() {
                let keys: Vec<&String> = s.rows[start].values.keys().collect();
                let end = (start..s.rows.len())
                    .find(|&i| s.rows[i].values.keys().collect::<Vec<_>>() != keys)
                    .unwrap_or(s.rows.len());
                out.push_str(&table(&s.rows[start..end]));
                start = end;
            }
            for p in &s.provenance {
                let inputs: Vec<String> = p.inputs.iter().map(|(k, v)| format!("{k}: {v}")).collect();
                writeln!(out, "  provenance: {} {{{}}}", p.route, inputs.join("; ")).unwrap();
            }
            if let Some(e) = &s.error {
                writeln!(out, "  {}: {}", e.kind, e.message).unwrap();
            }
        }
        let failed = self.sections.iter().filter(|s| !s.passed()).count();
        writeln!(
            out,
            "\nstatus: {} ({} sections, {failed} failed)",
            serde_json::to_value(self.status).unwrap().as_str().unwrap(),
            self.sections.len()
        )
        .unwrap();
        out
    }
}

fn render(v: &Value) -> String {
    match v {
        Value::Null => "-".into(),
        Value::Bool(true) => "yes".into(),
        Value::Bool(false) => "no".into(),
        Value::String(s) => s.clone(),
        Value::Array(items) if items.is_empty() => "trivial".into(),
        Value::Array(items) => format!("({})", items.iter().map(render).collect::<Vec<_>>().join(", ")),
        other => other.to_string(),
    }
}

/// Rows as an aligned table; columns are the value keys in order of first
/// appearance.
fn table(rows: &[Row]) -> String {
    let mut columns: Vec<String> = Vec::new();
    for r in rows {
        for k in r.values.keys() {
            if !columns.contains(k) {
                columns.push(k.clone());
            }
        }
    }
    let with_verdict = rows.iter().any(|r| r.verdict.is_some());
    let mut grid: Vec<Vec<String>> = Vec::new();
    let mut header = vec!["item".to_string()];
    header.extend(columns.iter().cloned());
    if with_verdict {
        header.push("verdict".into());
    }
    grid.push(header);
    for r in rows {
        let mut line = vec![r.item.clone()];
        line.extend(columns.iter().map(|c| r.values.get(c).map(render).unwrap_or_default()));
        if with_verdict {
            line.push(match r.verdict {
                Some(true) => "pass".into(),
                Some(false) => "FAIL".into(),
                None => String::new(),
            });
        }
        grid.push(line);
    }
    let widths: Vec<usize> =
        (0..grid[0].len()).map(|c| grid.iter().map(|l| l[c].chars().count()).max().unwrap_or(0)).collect();
    let mut out = String::new();
    for line in grid {
        let cells: Vec<String> = line.iter().zip(&widths).map(|(cell, &w)| format!("{cell:<w$}")).collect();
        writeln!(out, "  {}", cells.join("  ").trim_end()).unwrap();
    }
    out
}
