use std::fmt::{self, Display};
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub case: String,
    pub check: String,
    pub expected: String,
    pub got: String,
}

/// An anomaly that is not a bug of the implementation, such as a conjugator
/// that cannot be repaired over a finite field.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Finding {
    pub case: String,
    pub kind: String,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckTally {
    pub name: String,
    pub cases: u64,
    pub failures: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub spaces: Vec<String>,
    pub seed: u64,
    pub slow: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Findings,
    Fail,
}

impl Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Findings => "findings",
            Status::Fail => "fail",
        })
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite_id: String,
    pub status: Status,
    pub config: ConfigEcho,
    pub cases_run: u64,
    pub checks: Vec<CheckTally>,
    pub failures: Vec<Failure>,
    pub findings: Vec<Finding>,
    /// Not serialized, so that reports of identical runs are byte-identical.
    #[serde(skip)]
    pub wall_time: Duration,
}

impl PartialEq for SuiteReport {
    fn eq(&self, other: &SuiteReport) -> bool {
        self.suite_id == other.suite_id
            && self.status == other.status
            && self.config == other.config
            && self.cases_run == other.cases_run
            && self.checks == other.checks
            && self.failures == other.failures
            && self.findings == other.findings
    }
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.findings.is_empty()
    }

    /// 0 on a clean pass, 1 on failures, 2 on findings alone.
    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Findings => 2,
        }
    }

    pub fn check(&self, name: &str) -> Option<&CheckTally> {
        self.checks.iter().find(|c| c.name == name)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Text,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Format> {
        match s {
            "json" => Ok(Format::Json),
            "text" => Ok(Format::Text),
            other => Err(Error::Parse(format!("unknown format '{other}'"))),
        }
    }
}

pub fn emit_report(report: &SuiteReport, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
            s.push('\n');
            s
        }
        Format::Text => {
            let mut out = format!(
                "suite {}: {} ({} cases, {:.3}s)\n",
                report.suite_id,
                report.status,
                report.cases_run,
                report.wall_time.as_secs_f64()
            );
            for c in &report.checks {
                let mark = if c.failures == 0 { "ok" } else { "FAIL" };
                out.push_str(&format!("  [{mark}] {} ({} cases, {} failures)\n", c.name, c.cases, c.failures));
            }
            for f in &report.failures {
                out.push_str(&format!(
                    "  failure: {} | {} | expected {} | got {}\n",
                    f.check, f.case, f.expected, f.got
                ));
            }
            for f in &report.findings {
                out.push_str(&format!("  finding: {} | {} | {}\n", f.kind, f.case, f.detail));
            }
            out
        }
    }
}

pub fn parse_report(json: &str) -> Result<SuiteReport> {
    serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))
}

/// Collects checks, failures and findings while a suite runs.
#[derive(Debug, Default)]
pub(crate) struct Recorder {
    case: String,
    cases_run: u64,
    checks: Vec<CheckTally>,
    failures: Vec<Failure>,
    findings: Vec<Finding>,
}

impl Recorder {
    /// Starts a new case; later checks and findings are attributed to it.
    pub fn case(&mut self, label: impl Into<String>) {
        self.case = label.into();
        self.cases_run += 1;
    }

    fn tally(&mut self, name: &str) -> &mut CheckTally {
        let idx = match self.checks.iter().position(|c| c.name == name) {
            Some(i) => i,
            None => {
                self.checks.push(CheckTally { name: name.to_string(), cases: 0, failures: 0 });
                self.checks.len() - 1
            }
        };
        &mut self.checks[idx]
    }

    pub fn check(&mut self, name: &str, ok: bool, detail: impl FnOnce() -> (String, String)) -> bool {
        let tally = self.tally(name);
        tally.cases += 1;
        if !ok {
            tally.failures += 1;
            let (expected, got) = detail();
            self.failures.push(Failure { case: self.case.clone(), check: name.to_string(), expected, got });
        }
        ok
    }

    pub fn check_eq<T: PartialEq + Display>(&mut self, name: &str, expected: &T, got: &T) -> bool {
        let ok = expected == got;
        self.check(name, ok, || (expected.to_string(), got.to_string()))
    }

    pub fn finding(&mut self, kind: &str, detail: impl Into<String>) {
        self.findings.push(Finding { case: self.case.clone(), kind: kind.to_string(), detail: detail.into() });
    }

    pub fn finish(self, suite_id: &str, config: ConfigEcho, wall_time: Duration) -> SuiteReport {
        let status = if !self.failures.is_empty() {
            Status::Fail
        } else if !self.findings.is_empty() {
            Status::Findings
        } else {
            Status::Pass
        };
        SuiteReport {
            suite_id: suite_id.to_string(),
            status,
            config,
            cases_run: self.cases_run,
            checks: self.checks,
            failures: self.failures,
            findings: self.findings,
            wall_time,
        }
    }
}
