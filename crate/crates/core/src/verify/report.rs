use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::{self, Write};
use std::time::Duration;

use serde::Serialize;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Match,
    Mismatch,
    /// No independent right-hand side; only the auxiliary checks apply.
    Informational,
}

/// One verified grid point.
#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub theorem: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub case: Option<u8>,
    pub n: usize,
    pub lambda: String,
    pub mu: String,
    pub lhs: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs: Option<String>,
    pub status: Status,
    /// Named boolean checks; the row is a mismatch iff any is false.
    pub checks: BTreeMap<String, bool>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub values: BTreeMap<String, String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_order: Option<i64>,
    /// Wall time; left out of the JSON so repeated runs are byte-identical.
    #[serde(skip)]
    pub elapsed: Duration,
    #[serde(skip)]
    pub sort_key: (Vec<i64>, Vec<i64>, String),
}

impl VerificationReport {
    pub fn new(theorem: &str, n: usize, lambda: String, mu: String) -> Self {
        VerificationReport {
            theorem: theorem.to_string(),
            case: None,
            n,
            lambda,
            mu,
            lhs: String::new(),
            rhs: None,
            status: Status::Informational,
            checks: BTreeMap::new(),
            values: BTreeMap::new(),
            oracle_order: None,
            elapsed: Duration::ZERO,
            sort_key: (Vec::new(), Vec::new(), String::new()),
        }
    }

    pub fn check(&mut self, name: &str, ok: bool) {
        self.checks.insert(name.to_string(), ok);
    }

    pub fn value(&mut self, name: &str, v: impl ToString) {
        self.values.insert(name.to_string(), v.to_string());
    }

    /// Sets `status` from the checks; `comparable` rows have an independent RHS.
    pub fn finish(&mut self, comparable: bool) {
        self.status = if self.checks.values().any(|ok| !ok) {
            Status::Mismatch
        } else if comparable {
            Status::Match
        } else {
            Status::Informational
        };
    }

    pub fn failed(&self) -> bool {
        self.status == Status::Mismatch
    }

    fn key(&self) -> (&str, usize, &Vec<i64>, &Vec<i64>, &str, &str, &str) {
        (
            &self.theorem,
            self.n,
            &self.sort_key.0,
            &self.sort_key.1,
            &self.sort_key.2,
            &self.lambda,
            &self.mu,
        )
    }
}

/// Reports in canonical order.
#[derive(Clone, Debug, Default)]
pub struct ReportSet {
    pub reports: Vec<VerificationReport>,
}

impl ReportSet {
    pub fn new(mut reports: Vec<VerificationReport>) -> Self {
        reports.sort_by(|a, b| a.key().cmp(&b.key()));
        ReportSet { reports }
    }

    pub fn extend(&mut self, other: ReportSet) {
        self.reports.extend(other.reports);
        self.reports.sort_by(|a, b| a.key().cmp(&b.key()));
    }

    pub fn any_mismatch(&self) -> bool {
        self.reports.iter().any(|r| r.failed())
    }

    pub fn write_jsonl<W: Write>(&self, mut w: W) -> io::Result<()> {
        for r in &self.reports {
            serde_json::to_writer(&mut w, r)?;
            w.write_all(b"\n")?;
        }
        Ok(())
    }

    /// Per-theorem counts: rows, matches, mismatches, informational, seconds.
    pub fn summary(&self) -> String {
        let mut rows: BTreeMap<&str, [usize; 4]> = BTreeMap::new();
        let mut secs: BTreeMap<&str, f64> = BTreeMap::new();
        for r in &self.reports {
            let e = rows.entry(&r.theorem).or_default();
            e[0] += 1;
            match r.status {
                Status::Match => e[1] += 1,
                Status::Mismatch => e[2] += 1,
                Status::Informational => e[3] += 1,
            }
            *secs.entry(&r.theorem).or_default() += r.elapsed.as_secs_f64();
        }
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{:<18} {:>6} {:>6} {:>9} {:>14} {:>9}",
            "theorem", "rows", "match", "mismatch", "informational", "cpu-s"
        );
        for (k, v) in &rows {
            let _ = writeln!(
                out,
                "{:<18} {:>6} {:>6} {:>9} {:>14} {:>9.2}",
                k, v[0], v[1], v[2], v[3], secs[k]
            );
        }
        let mismatched: Vec<&VerificationReport> = self.reports.iter().filter(|r| r.failed()).collect();
        if !mismatched.is_empty() {
            let _ = writeln!(out, "\nmismatches:");
            for r in mismatched.iter().take(40) {
                let bad: Vec<&str> = r.checks.iter().filter(|(_, ok)| !**ok).map(|(k, _)| k.as_str()).collect();
                let _ = writeln!(out, "  {} n={} lambda={} mu={} failed={}", r.theorem, r.n, r.lambda, r.mu, bad.join(","));
            }
            if mismatched.len() > 40 {
                let _ = writeln!(out, "  ... {} more", mismatched.len() - 40);
            }
        }
        out
    }
}
