//! Verification reports and their human and JSON renderings.

use std::fmt::Write as _;
use std::time::Duration;

use serde::Serialize;

use crate::error::AlgebraError;

pub const SCHEMA_VERSION: u32 = 1;

/// Why a single trial failed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub message: String,
    /// `(name, value)` pairs in the element grammar.
    pub inputs: Vec<(String, String)>,
    pub residual: Option<String>,
}

impl Failure {
    pub fn new(message: impl Into<String>) -> Self {
        Failure { message: message.into(), inputs: Vec::new(), residual: None }
    }

    pub fn input(mut self, name: impl Into<String>, value: impl Into<String>) -> Self {
        self.inputs.push((name.into(), value.into()));
        self
    }

    pub fn residual(mut self, value: impl Into<String>) -> Self {
        self.residual = Some(value.into());
        self
    }
}

impl From<AlgebraError> for Failure {
    fn from(e: AlgebraError) -> Self {
        Failure::new(e.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TrialFailure {
    pub trial: usize,
    pub seed: u64,
    pub message: String,
    pub inputs: Vec<Input>,
    pub residual: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Input {
    pub name: String,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub schema: u32,
    pub command: String,
    pub suite: String,
    pub seed: u64,
    pub attempted: usize,
    pub passed: usize,
    pub failures: Vec<TrialFailure>,
    pub duration_seconds: f64,
}

impl VerificationReport {
    pub fn new(
        command: String,
        suite: &str,
        seed: u64,
        outcomes: Vec<(u64, Result<(), Failure>)>,
        duration: Duration,
    ) -> Self {
        let attempted = outcomes.len();
        let failures: Vec<TrialFailure> = outcomes
            .into_iter()
            .enumerate()
            .filter_map(|(trial, (seed, r))| {
                r.err().map(|f| TrialFailure {
                    trial,
                    seed,
                    message: f.message,
                    inputs: f.inputs.into_iter().map(|(name, value)| Input { name, value }).collect(),
                    residual: f.residual,
                })
            })
            .collect();
        VerificationReport {
            schema: SCHEMA_VERSION,
            command,
            suite: suite.to_string(),
            seed,
            attempted,
            passed: attempted - failures.len(),
            failures,
            duration_seconds: duration.as_secs_f64(),
        }
    }

    pub fn success(&self) -> bool {
        self.passed == self.attempted
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn render(&self, color: bool, max_details: usize) -> String {
        let (tag, paint) = if self.success() { ("PASS", "\x1b[32m") } else { ("FAIL", "\x1b[31m") };
        let tag = if color { format!("{paint}{tag}\x1b[0m") } else { tag.to_string() };
        let mut out = String::new();
        let _ = writeln!(out, "{}", self.command);
        let _ = writeln!(
            out,
            "{tag} {}: {}/{} trials passed (seed {}, {:.2} s)",
            self.suite, self.passed, self.attempted, self.seed, self.duration_seconds
        );
        for f in self.failures.iter().take(max_details) {
            let _ = writeln!(out, "  trial {} (seed {:#018x}): {}", f.trial, f.seed, f.message);
            for i in &f.inputs {
                let _ = writeln!(out, "    {} = {}", i.name, i.value);
            }
            if let Some(r) = &f.residual {
                let _ = writeln!(out, "    residual: {r}");
            }
        }
        if self.failures.len() > max_details {
            let _ = writeln!(out, "  ... and {} more failing trials", self.failures.len() - max_details);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_and_rendering() {
        let outcomes = vec![
            (11, Ok(())),
            (12, Err(Failure::new("closure fails").input("A", "[[\"v1\"]]").residual("v1"))),
            (13, Ok(())),
        ];
        let r = VerificationReport::new("verify preadjoint-closure".into(), "preadjoint-closure", 5, outcomes, Duration::from_millis(20));
        assert_eq!((r.attempted, r.passed), (3, 2));
        assert!(!r.success());
        assert_eq!(r.failures[0].trial, 1);
        let text = r.render(false, 5);
        assert!(text.contains("FAIL preadjoint-closure: 2/3 trials passed"));
        assert!(text.contains("residual: v1"));
        let json: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(json["schema"], 1);
        assert_eq!(json["failures"][0]["inputs"][0]["name"], "A");
    }
}
