//! Experiment reports: JSON for machines, aligned columns for people.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    Fail,
    /// Reported for context, never gating.
    Info,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Info => "INFO",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Claim {
    pub id: String,
    /// The mathematical statement the claim checks.
    pub statement: String,
    pub verdict: Verdict,
    pub evidence: String,
}

impl Claim {
    pub fn new(id: &str, statement: &str, verdict: Verdict, evidence: impl Into<String>) -> Self {
        Claim {
            id: id.into(),
            statement: statement.into(),
            verdict,
            evidence: evidence.into(),
        }
    }

    pub fn check(id: &str, statement: &str, ok: bool, evidence: impl Into<String>) -> Self {
        Claim::new(id, statement, Verdict::from_bool(ok), evidence)
    }
}

/// One experiment's parameters, evidence rows and verdicts. Every row is an
/// object with a `series` key naming the table it belongs to.
#[derive(Clone, Debug, Serialize)]
pub struct CheckpointReport {
    pub experiment: String,
    pub params: Map<String, Value>,
    pub rows: Vec<Map<String, Value>>,
    pub claims: Vec<Claim>,
    pub cap: u64,
    pub seed: Option<u64>,
    pub tolerances: Map<String, Value>,
}

impl CheckpointReport {
    pub fn new(experiment: &str, cap: u64) -> Self {
        CheckpointReport {
            experiment: experiment.into(),
            params: Map::new(),
            rows: Vec::new(),
            claims: Vec::new(),
            cap,
            seed: None,
            tolerances: Map::new(),
        }
    }

    pub fn param(&mut self, key: &str, v: impl Into<Value>) -> &mut Self {
        self.params.insert(key.into(), v.into());
        self
    }

    pub fn tolerance(&mut self, key: &str, v: impl Into<Value>) -> &mut Self {
        self.tolerances.insert(key.into(), v.into());
        self
    }

    /// Appends a row; `fields` must be a JSON object.
    pub fn row(&mut self, series: &str, fields: Value) {
        let mut m = Map::new();
        m.insert("series".into(), Value::String(series.into()));
        if let Value::Object(o) = fields {
            m.extend(o);
        }
        self.rows.push(m);
    }

    pub fn claim(&mut self, c: Claim) {
        self.claims.push(c);
    }

    /// No claim failed.
    pub fn passed(&self) -> bool {
        self.claims.iter().all(|c| c.verdict != Verdict::Fail)
    }

    pub fn claim_by_id(&self, id: &str) -> Option<&Claim> {
        self.claims.iter().find(|c| c.id == id)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "== {} ==", self.experiment);
        for (k, v) in &self.params {
            let _ = writeln!(out, "  {k}: {}", plain(v));
        }
        let _ = writeln!(out, "  cap: {}", self.cap);
        if let Some(s) = self.seed {
            let _ = writeln!(out, "  seed: {s}");
        }
        for (k, v) in &self.tolerances {
            let _ = writeln!(out, "  tolerance {k}: {}", plain(v));
        }
        let mut order: Vec<&str> = Vec::new();
        for r in &self.rows {
            let s = r["series"].as_str().unwrap_or("");
            if !order.contains(&s) {
                order.push(s);
            }
        }
        for s in order {
            let rows: Vec<&Map<String, Value>> = self
                .rows
                .iter()
                .filter(|r| r["series"].as_str() == Some(s))
                .collect();
            let _ = writeln!(out, "\n  [{s}]");
            let cols: Vec<&String> = rows[0].keys().filter(|k| *k != "series").collect();
            let cells: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    cols.iter()
                        .map(|c| r.get(*c).map(plain).unwrap_or_default())
                        .collect()
                })
                .collect();
            let widths: Vec<usize> = cols
                .iter()
                .enumerate()
                .map(|(i, c)| {
                    cells
                        .iter()
                        .map(|r| r[i].len())
                        .chain([c.len()])
                        .max()
                        .unwrap()
                })
                .collect();
            let header: Vec<String> = cols
                .iter()
                .zip(&widths)
                .map(|(c, w)| format!("{c:>w$}"))
                .collect();
            let _ = writeln!(out, "  {}", header.join("  "));
            for r in cells {
                let line: Vec<String> = r
                    .iter()
                    .zip(&widths)
                    .map(|(c, w)| format!("{c:>w$}"))
                    .collect();
                let _ = writeln!(out, "  {}", line.join("  "));
            }
        }
        let _ = writeln!(out, "\n  claims:");
        for c in &self.claims {
            let _ = writeln!(
                out,
                "  {:<4}  {}: {}",
                c.verdict.as_str(),
                c.id,
                c.statement
            );
            let _ = writeln!(out, "        {}", c.evidence);
        }
        out
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}
