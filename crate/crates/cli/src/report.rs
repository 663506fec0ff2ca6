//! Check records and their JSON / CSV forms.

use std::collections::BTreeMap;
use std::fmt;
use std::io::Write;
use std::path::Path;

use carleman::scalar::decimal::to_scientific;
use carleman::{Interval, Outcome, Scope, Verdict};
use serde::{Deserialize, Serialize};

use crate::config::Format;
use crate::error::CliError;

pub const CSV_HEADER: [&str; 7] = ["id", "anchor", "verdict", "witness", "lower", "upper", "seconds"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Status {
    Holds,
    Fails,
    Inconclusive,
    /// The check could not run, e.g. a construction precondition failed.
    Error,
}

impl From<Outcome> for Status {
    fn from(o: Outcome) -> Self {
        match o {
            Outcome::Holds => Status::Holds,
            Outcome::Fails => Status::Fails,
            Outcome::Inconclusive => Status::Inconclusive,
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Holds => "Holds",
            Status::Fails => "Fails",
            Status::Inconclusive => "Inconclusive",
            Status::Error => "Error",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Record {
    pub id: String,
    /// The inequality or identity being checked, as it is stated in the source.
    pub anchor: String,
    pub verdict: Status,
    pub witness: String,
    /// Decimal endpoints of the reported enclosure, rounded outward.
    pub lower: Option<String>,
    pub upper: Option<String>,
    /// Wall time, only when timings are requested.
    pub seconds: Option<f64>,
}

impl Record {
    pub fn new(id: impl Into<String>, anchor: &str, verdict: Status, witness: impl Into<String>) -> Self {
        Record {
            id: id.into(),
            anchor: anchor.to_string(),
            verdict,
            witness: witness.into(),
            lower: None,
            upper: None,
            seconds: None,
        }
    }

    pub fn error(id: impl Into<String>, anchor: &str, err: impl fmt::Display) -> Self {
        Record::new(id, anchor, Status::Error, err.to_string())
    }

    /// Record for a core verdict. A failing witness contributes its left-hand
    /// enclosure; the right-hand side goes into the text.
    pub fn from_verdict(id: impl Into<String>, anchor: &str, v: &Verdict, digits: u32) -> Self {
        let mut r = Record::new(id, anchor, v.outcome.into(), describe(v, digits));
        if let Some(lhs) = v.witness.as_ref().and_then(|w| w.lhs.as_ref()) {
            r = r.with_enclosure(lhs, digits);
        }
        r
    }

    pub fn with_enclosure(mut self, x: &Interval, digits: u32) -> Self {
        self.lower = Some(to_scientific(x.lo(), digits, false));
        self.upper = Some(to_scientific(x.hi(), digits, true));
        self
    }
}

/// Human-readable summary of a verdict.
pub fn describe(v: &Verdict, digits: u32) -> String {
    let mut parts = Vec::new();
    if v.checked > 0 {
        let noun = if v.checked == 1 { "comparison" } else { "comparisons" };
        parts.push(format!("{} {noun}", v.checked));
    }
    if let Some((a, b)) = v.window {
        parts.push(format!("window {a}..{b}"));
    }
    if let Scope::Global { provenance } = &v.scope {
        parts.push(format!("global: {provenance}"));
    }
    if let Some(w) = &v.witness {
        let mut s = format!("{} at {:?}", w.note, w.at);
        if let Some(rhs) = &w.rhs {
            s.push_str(&format!(
                " against [{}, {}]",
                to_scientific(rhs.lo(), digits, false),
                to_scientific(rhs.hi(), digits, true)
            ));
        }
        parts.push(s);
    }
    if let Some(t) = &v.trend {
        parts.push(format!("trend {}: growth {}", t.note, t.growth));
    }
    parts.join("; ")
}

/// Timing data kept apart from the records so that records stay reproducible.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    pub wall_seconds: f64,
    pub seconds: BTreeMap<String, f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub version: String,
    pub config: BTreeMap<String, String>,
    pub records: Vec<Record>,
    pub metadata: Metadata,
}

impl Report {
    pub fn new(config: BTreeMap<String, String>, mut records: Vec<Record>) -> Self {
        records.sort_by(|a, b| a.id.cmp(&b.id));
        Report {
            version: env!("CARGO_PKG_VERSION").to_string(),
            config,
            records,
            metadata: Metadata::default(),
        }
    }

    /// 0 all Holds, 1 any Fails, 3 any Error, 2 any Inconclusive.
    pub fn exit_code(&self) -> u8 {
        let any = |s| self.records.iter().any(|r| r.verdict == s);
        if any(Status::Fails) {
            1
        } else if any(Status::Error) {
            3
        } else if any(Status::Inconclusive) {
            2
        } else {
            0
        }
    }

    pub fn count(&self, s: Status) -> usize {
        self.records.iter().filter(|r| r.verdict == s).count()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }

    pub fn write_csv<W: Write>(&self, w: W) -> csv::Result<()> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(CSV_HEADER)?;
        for r in &self.records {
            let seconds = r.seconds.map(|s| format!("{s:.6}")).unwrap_or_default();
            out.write_record([
                r.id.as_str(),
                &r.anchor,
                &r.verdict.to_string(),
                &r.witness,
                r.lower.as_deref().unwrap_or(""),
                r.upper.as_deref().unwrap_or(""),
                &seconds,
            ])?;
        }
        out.flush()?;
        Ok(())
    }

    pub fn to_csv(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("csv is utf-8")
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json() + "\n",
            Format::Csv => self.to_csv(),
        }
    }
}

/// Plain data output (sequence values, curves, coefficients).
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Table {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(self).expect("table serializes") + "\n",
            Format::Csv => {
                let mut out = csv::Writer::from_writer(Vec::new());
                out.write_record(&self.columns).expect("writing to memory");
                for r in &self.rows {
                    out.write_record(r).expect("writing to memory");
                }
                String::from_utf8(out.into_inner().expect("flush")).expect("csv is utf-8")
            }
        }
    }
}

/// Writes `text` to `path`, or to stdout without a path.
pub fn write_output(text: &str, path: Option<&Path>) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Io {
            path: p.display().to_string(),
            message: e.to_string(),
        }),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| CliError::Io {
                    path: "<stdout>".into(),
                    message: e.to_string(),
                })
        }
    }
}

pub fn emit_report(report: &Report, path: Option<&Path>, format: Format) -> Result<(), CliError> {
    write_output(&report.render(format), path)
}
