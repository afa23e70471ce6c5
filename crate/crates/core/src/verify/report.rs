use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Duration;

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportRow {
    pub input: String,
    pub outcome: String,
    pub chi: i64,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
}

/// Outcome of one checker. The JSON form leaves out the wall clock so that
/// repeated runs serialize identically.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub check: String,
    pub parameters: BTreeMap<String, Value>,
    pub rows: Vec<ReportRow>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub verdict: Verdict,
    #[serde(skip)]
    pub wall_clock: Duration,
}

impl VerificationReport {
    pub fn new(check: &str) -> Self {
        let mut parameters = BTreeMap::new();
        parameters.insert(
            "version".to_string(),
            Value::from(env!("CARGO_PKG_VERSION")),
        );
        VerificationReport {
            check: check.to_string(),
            parameters,
            rows: Vec::new(),
            notes: Vec::new(),
            verdict: Verdict::Pass,
            wall_clock: Duration::ZERO,
        }
    }

    pub fn param(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.parameters.insert(key.to_string(), value.into());
        self
    }

    pub fn push(&mut self, row: ReportRow) {
        if !row.pass {
            self.verdict = Verdict::Fail;
        }
        self.rows.push(row);
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    /// Appends every row and note of `other`, prefixing its check name.
    pub fn absorb(&mut self, other: VerificationReport) {
        for mut row in other.rows {
            row.input = format!("{}: {}", other.check, row.input);
            self.push(row);
        }
        for n in other.notes {
            self.note(format!("{}: {n}", other.check));
        }
        self.wall_clock += other.wall_clock;
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn to_table(&self) -> String {
        let w_in = self
            .rows
            .iter()
            .map(|r| r.input.len())
            .max()
            .unwrap_or(5)
            .max(5);
        let w_out = self
            .rows
            .iter()
            .map(|r| r.outcome.len())
            .max()
            .unwrap_or(7)
            .max(7);
        let mut s = String::new();
        let _ = writeln!(s, "check: {}", self.check);
        for (k, v) in &self.parameters {
            let _ = writeln!(s, "  {k} = {v}");
        }
        let _ = writeln!(
            s,
            "{:<w_in$}  {:<w_out$}  {:>4}  result",
            "input", "outcome", "chi"
        );
        for r in &self.rows {
            let _ = write!(
                s,
                "{:<w_in$}  {:<w_out$}  {:>4}  {}",
                r.input,
                r.outcome,
                r.chi,
                if r.pass { "pass" } else { "FAIL" }
            );
            if let Some(d) = &r.detail {
                let _ = write!(s, "  ({d})");
            }
            s.push('\n');
        }
        for n in &self.notes {
            let _ = writeln!(s, "note: {n}");
        }
        let _ = writeln!(
            s,
            "verdict: {} ({} rows, {:.3} s)",
            if self.passed() { "pass" } else { "FAIL" },
            self.rows.len(),
            self.wall_clock.as_secs_f64()
        );
        s
    }
}
