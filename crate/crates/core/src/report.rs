//! The versioned report envelope shared by the CLI and the examples, with
//! JSON and plain-text renderings.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::analysis::ScanReport;
use crate::criteria::ProbeReport;
use crate::envelopes::CertificationReport;
use crate::verdict::{Status, Verdict};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValueRow {
    pub n: u64,
    /// Exact decimal value.
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportEnvelope {
    pub schema_version: u32,
    pub tool: String,
    pub tool_version: String,
    pub command: String,
    /// Echo of the effective configuration.
    pub config: BTreeMap<String, String>,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub values: Vec<ValueRow>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub verdicts: Vec<Verdict>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub scans: Vec<ScanReport>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub certifications: Vec<CertificationReport>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub probes: Vec<ProbeReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

impl ReportEnvelope {
    pub fn new(command: impl Into<String>) -> Self {
        ReportEnvelope {
            schema_version: SCHEMA_VERSION,
            tool: env!("CARGO_PKG_NAME").into(),
            tool_version: env!("CARGO_PKG_VERSION").into(),
            command: command.into(),
            config: BTreeMap::new(),
            status: Status::Verified,
            values: Vec::new(),
            verdicts: Vec::new(),
            scans: Vec::new(),
            certifications: Vec::new(),
            probes: Vec::new(),
            timing_ms: None,
        }
    }

    pub fn echo(&mut self, key: &str, value: impl ToString) {
        self.config.insert(key.to_string(), value.to_string());
    }

    pub fn push_verdict(&mut self, v: Verdict) {
        self.status = self.status.combine(v.status);
        self.verdicts.push(v);
    }

    pub fn push_scan(&mut self, s: ScanReport) {
        self.push_verdict(s.to_verdict());
        self.scans.push(s);
    }

    pub fn push_certification(&mut self, c: CertificationReport) {
        self.push_verdict(c.to_verdict());
        self.certifications.push(c);
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if !self.values.is_empty() && self.verdicts.is_empty() {
            for row in &self.values {
                let _ = writeln!(out, "{}", row.value);
            }
            return out;
        }
        let _ = writeln!(out, "{} {} — {}", self.tool, self.tool_version, self.command);
        for (k, v) in &self.config {
            let _ = writeln!(out, "  {k} = {v}");
        }
        for v in &self.verdicts {
            out.push('\n');
            render_verdict(v, 0, &mut out);
        }
        for p in &self.probes {
            out.push('\n');
            render_probe(p, &mut out);
        }
        let _ = writeln!(out, "\noverall: {}", self.status);
        if let Some(ms) = self.timing_ms {
            let _ = writeln!(out, "time: {ms} ms");
        }
        out
    }
}

const SHOWN: usize = 12;

/// Indented, human-readable rendering of a verdict tree.
pub fn render_verdict(v: &Verdict, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    let _ = writeln!(out, "{pad}[{}] {}", v.status, v.label);
    let _ = writeln!(out, "{pad}    checked: {}", v.horizon.description);
    if !v.thresholds.is_empty() {
        let t: Vec<String> = v.thresholds.iter().map(|(k, n)| format!("{k}={n}")).collect();
        let _ = writeln!(out, "{pad}    thresholds: {}", t.join(" "));
    }
    let mut list = |name: &str, ws: &[crate::verdict::Witness]| {
        if ws.is_empty() {
            return;
        }
        let _ = writeln!(out, "{pad}    {name} ({}):", ws.len());
        for w in ws.iter().take(SHOWN) {
            let idx: Vec<String> = w.indices.iter().map(u64::to_string).collect();
            let note = if w.note.is_empty() { String::new() } else { format!("  ({})", w.note) };
            if w.lhs.is_empty() && w.rhs.is_empty() {
                let _ = writeln!(out, "{pad}      at {}{note}", idx.join(","));
            } else {
                let _ = writeln!(out, "{pad}      at {}: {} vs {}{note}", idx.join(","), w.lhs, w.rhs);
            }
        }
        if ws.len() > SHOWN {
            let _ = writeln!(out, "{pad}      ... {} more", ws.len() - SHOWN);
        }
    };
    list("witnesses", &v.witnesses);
    list("unresolved", &v.unresolved);
    list("below threshold", &v.below_threshold);
    for note in &v.notes {
        let _ = writeln!(out, "{pad}    note: {note}");
    }
    for p in &v.parts {
        render_verdict(p, depth + 1, out);
    }
}

pub fn render_probe(p: &ProbeReport, out: &mut String) {
    let _ = writeln!(out, "[{:?}] {} for {} (n0 = {}, F(n0) = {})", p.status, p.label, p.sequence, p.n0, p.f_n0);
    for w in &p.windows {
        let _ = writeln!(out, "    max on [{}, {}]: {}", w.from, w.to, w.max_decimal);
    }
}

/// Flattens a verdict tree into CSV rows: label, status, indices, lhs, rhs, note.
pub fn verdict_csv<W: std::io::Write>(verdicts: &[Verdict], out: W) -> Result<(), csv::Error> {
    fn walk<W: std::io::Write>(v: &Verdict, w: &mut csv::Writer<W>) -> Result<(), csv::Error> {
        let status = v.status.to_string();
        if v.witnesses.is_empty() && v.unresolved.is_empty() {
            w.write_record([v.label.as_str(), &status, "", "", "", ""])?;
        }
        for (kind, ws) in [("witness", &v.witnesses), ("unresolved", &v.unresolved)] {
            for x in ws {
                let idx: Vec<String> = x.indices.iter().map(u64::to_string).collect();
                let note = if x.note.is_empty() { kind.to_string() } else { format!("{kind}: {}", x.note) };
                w.write_record([v.label.as_str(), &status, &idx.join(";"), &x.lhs, &x.rhs, &note])?;
            }
        }
        v.parts.iter().try_for_each(|p| walk(p, w))
    }
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["label", "status", "indices", "lhs", "rhs", "note"])?;
    for v in verdicts {
        walk(v, &mut w)?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verdict::{Horizon, Witness};

    #[test]
    fn json_round_trip_is_byte_identical() {
        let mut r = ReportEnvelope::new("test");
        r.echo("horizon", 10);
        let mut v = Verdict::new("x", Horizon::indices(1, 10));
        v.refute(Witness::new(vec![3], "12345678901234567890123", "7"));
        r.push_verdict(v);
        let text = r.to_json();
        let again = ReportEnvelope::from_json(&text).unwrap().to_json();
        assert_eq!(text, again);
        assert!(text.contains("\"schema_version\": 1"));
        assert_eq!(r.status, Status::Refuted);
    }
}
