//! Structured outcomes of axiom suites.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::algebra::Element;
use crate::error::{Error, Result};

pub const REPORT_VERSION: u32 = 1;
const MAX_WITNESSES: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
    PreconditionFailed,
    ExpectedFailConfirmed,
}

impl Status {
    pub fn is_ok(self) -> bool {
        matches!(self, Status::Pass | Status::ExpectedFailConfirmed)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Inconclusive => "inconclusive",
            Status::PreconditionFailed => "precondition_failed",
            Status::ExpectedFailConfirmed => "expected_fail_confirmed",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub inputs: Vec<String>,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Clause {
    pub name: String,
    pub status: Status,
    pub checked: usize,
    pub failures: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<Witness>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    /// Reported but not part of the verdict.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub informational: bool,
}

/// Accumulates comparisons for one clause.
#[derive(Debug)]
pub struct ClauseCheck {
    name: String,
    checked: usize,
    failures: usize,
    witnesses: Vec<Witness>,
    notes: Vec<String>,
    inconclusive: bool,
    informational: bool,
}

impl ClauseCheck {
    pub fn new(name: impl Into<String>) -> ClauseCheck {
        ClauseCheck {
            name: name.into(),
            checked: 0,
            failures: 0,
            witnesses: Vec::new(),
            notes: Vec::new(),
            inconclusive: false,
            informational: false,
        }
    }

    pub fn informational(mut self) -> ClauseCheck {
        self.informational = true;
        self
    }

    /// Counts one comparison; builds the witness lazily on failure.
    pub fn record(&mut self, ok: bool, witness: impl FnOnce() -> Witness) -> bool {
        self.checked += 1;
        if !ok {
            self.failures += 1;
            if self.witnesses.len() < MAX_WITNESSES {
                self.witnesses.push(witness());
            }
        }
        ok
    }

    /// Records an evaluation error: missing data is inconclusive, inconsistency is a failure.
    pub fn error(&mut self, inputs: Vec<String>, e: &Error) {
        match e {
            Error::Inconsistent(m) => {
                self.record(false, || Witness {
                    inputs,
                    lhs: m.clone(),
                    rhs: "consistent evaluation".into(),
                });
            }
            other => {
                self.inconclusive = true;
                if self.notes.len() < MAX_WITNESSES {
                    self.notes.push(format!("{}: {other}", inputs.join(", ")));
                }
            }
        }
    }

    /// Compares two computed sides; evaluation errors are routed through `error`.
    pub fn compare(
        &mut self,
        inputs: impl FnOnce() -> Vec<String>,
        sides: Result<(Element, Element)>,
        show: impl Fn(&Element) -> String,
    ) -> bool {
        match sides {
            Ok((l, r)) => self.record(l == r, || Witness {
                inputs: inputs(),
                lhs: show(&l),
                rhs: show(&r),
            }),
            Err(e) => {
                self.error(inputs(), &e);
                false
            }
        }
    }

    pub fn note(&mut self, n: impl Into<String>) {
        self.notes.push(n.into());
    }

    pub fn mark_inconclusive(&mut self, why: impl Into<String>) {
        self.inconclusive = true;
        self.notes.push(why.into());
    }

    pub fn passed(&self) -> bool {
        self.failures == 0 && !self.inconclusive
    }

    pub fn finish(self) -> Clause {
        let status = if self.failures > 0 {
            Status::Fail
        } else if self.inconclusive {
            Status::Inconclusive
        } else {
            Status::Pass
        };
        Clause {
            name: self.name,
            status,
            checked: self.checked,
            failures: self.failures,
            witnesses: self.witnesses,
            notes: self.notes,
            informational: self.informational,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub suite: String,
    pub subject: String,
    pub status: Status,
    pub window: String,
    pub seed: u64,
    pub clauses: Vec<Clause>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl CheckReport {
    pub fn new(suite: &str, subject: &str, window: &str, seed: u64, clauses: Vec<Clause>) -> CheckReport {
        let mut r = CheckReport {
            suite: suite.into(),
            subject: subject.into(),
            status: Status::Pass,
            window: window.into(),
            seed,
            clauses,
            notes: Vec::new(),
        };
        r.status = r.aggregate();
        r
    }

    pub fn precondition_failed(suite: &str, subject: &str, window: &str, seed: u64, why: &str) -> CheckReport {
        let clause = Clause {
            name: "precondition".into(),
            status: Status::PreconditionFailed,
            checked: 0,
            failures: 0,
            witnesses: Vec::new(),
            notes: vec![why.into()],
            informational: false,
        };
        CheckReport::new(suite, subject, window, seed, vec![clause])
    }

    fn aggregate(&self) -> Status {
        let verdict: Vec<Status> = self
            .clauses
            .iter()
            .filter(|c| !c.informational)
            .map(|c| c.status)
            .collect();
        if verdict.contains(&Status::PreconditionFailed) {
            Status::PreconditionFailed
        } else if verdict.contains(&Status::Fail) {
            Status::Fail
        } else if verdict.contains(&Status::Inconclusive) {
            Status::Inconclusive
        } else {
            Status::Pass
        }
    }

    pub fn with_note(mut self, n: impl Into<String>) -> CheckReport {
        self.notes.push(n.into());
        self
    }

    pub fn is_ok(&self) -> bool {
        self.status.is_ok()
    }

    pub fn clause(&self, name: &str) -> Option<&Clause> {
        self.clauses.iter().find(|c| c.name == name)
    }

    pub fn witnesses(&self) -> impl Iterator<Item = &Witness> {
        self.clauses.iter().flat_map(|c| c.witnesses.iter())
    }

    /// Applies a claim that this suite must fail: a failure becomes confirmed,
    /// a pass becomes a failure.
    pub fn expect_failure(mut self) -> CheckReport {
        match self.status {
            Status::Fail => {
                self.status = Status::ExpectedFailConfirmed;
                for c in &mut self.clauses {
                    if c.status == Status::Fail {
                        c.status = Status::ExpectedFailConfirmed;
                    }
                }
            }
            Status::Pass => {
                self.status = Status::Fail;
                self.clauses.push(Clause {
                    name: "expected failure".into(),
                    status: Status::Fail,
                    checked: 1,
                    failures: 1,
                    witnesses: vec![Witness {
                        inputs: vec![self.subject.clone()],
                        lhs: "suite passed".into(),
                        rhs: "suite declared to fail".into(),
                    }],
                    notes: Vec::new(),
                    informational: false,
                });
            }
            _ => {}
        }
        self
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "[{}] {} :: {} (window: {}, seed: {})",
            self.status.as_str(),
            self.suite,
            self.subject,
            self.window,
            self.seed
        );
        for c in &self.clauses {
            let _ = writeln!(
                s,
                "  - {}: {} ({} checked, {} failing){}",
                c.name,
                c.status.as_str(),
                c.checked,
                c.failures,
                if c.informational { " [informational]" } else { "" }
            );
            for w in &c.witnesses {
                let _ = writeln!(s, "      at ({})", w.inputs.join(", "));
                let _ = writeln!(s, "        lhs = {}", w.lhs);
                let _ = writeln!(s, "        rhs = {}", w.rhs);
            }
            for n in &c.notes {
                let _ = writeln!(s, "      note: {n}");
            }
        }
        for n in &self.notes {
            let _ = writeln!(s, "  note: {n}");
        }
        s
    }
}

/// Collection of reports as emitted by the command line.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportSet {
    pub report_version: u32,
    pub status: Status,
    pub reports: Vec<CheckReport>,
}

impl ReportSet {
    pub fn new(reports: Vec<CheckReport>) -> ReportSet {
        let status = if reports.iter().all(CheckReport::is_ok) {
            Status::Pass
        } else {
            Status::Fail
        };
        ReportSet {
            report_version: REPORT_VERSION,
            status,
            reports,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_text(&self) -> String {
        let mut s: String = self.reports.iter().map(CheckReport::to_text).collect();
        let _ = writeln!(s, "overall: {}", self.status.as_str());
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn failing(name: &str) -> Clause {
        let mut c = ClauseCheck::new(name);
        c.record(false, || Witness {
            inputs: vec!["a".into()],
            lhs: "1".into(),
            rhs: "0".into(),
        });
        c.finish()
    }

    #[test]
    fn aggregation_order() {
        let pass = ClauseCheck::new("p").finish();
        let r = CheckReport::new("s", "x", "w", 0, vec![pass.clone(), failing("f")]);
        assert_eq!(r.status, Status::Fail);
        let mut inc = ClauseCheck::new("i");
        inc.mark_inconclusive("no rule");
        let r = CheckReport::new("s", "x", "w", 0, vec![pass.clone(), inc.finish()]);
        assert_eq!(r.status, Status::Inconclusive);
        let info = ClauseCheck::new("f").informational();
        let mut info = info;
        info.record(false, || Witness { inputs: vec![], lhs: String::new(), rhs: String::new() });
        let r = CheckReport::new("s", "x", "w", 0, vec![pass, info.finish()]);
        assert_eq!(r.status, Status::Pass);
    }

    #[test]
    fn expected_failure_semantics() {
        let r = CheckReport::new("s", "x", "w", 0, vec![failing("f")]).expect_failure();
        assert_eq!(r.status, Status::ExpectedFailConfirmed);
        assert!(r.witnesses().count() >= 1);
        let r = CheckReport::new("s", "x", "w", 0, vec![ClauseCheck::new("p").finish()]).expect_failure();
        assert_eq!(r.status, Status::Fail);
        assert!(r.witnesses().count() >= 1);
    }

    #[test]
    fn witnesses_capped() {
        let mut c = ClauseCheck::new("c");
        for _ in 0..10 {
            c.record(false, || Witness { inputs: vec![], lhs: String::new(), rhs: String::new() });
        }
        let c = c.finish();
        assert_eq!(c.failures, 10);
        assert_eq!(c.witnesses.len(), MAX_WITNESSES);
    }
}
