use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::process::ExitCode;

use serde::Serialize;

/// How a command ended, mapped onto the process exit code.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Success,
    Falsified,
    ResourceLimit,
}

impl Outcome {
    pub fn code(self) -> ExitCode {
        match self {
            Outcome::Success => ExitCode::SUCCESS,
            Outcome::Falsified => ExitCode::from(1),
            Outcome::ResourceLimit => ExitCode::from(2),
        }
    }

    /// The worse of two outcomes.
    pub fn and(self, other: Outcome) -> Outcome {
        use Outcome::*;
        match (self, other) {
            (ResourceLimit, _) | (_, ResourceLimit) => ResourceLimit,
            (Falsified, _) | (_, Falsified) => Falsified,
            _ => Success,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub subject: String,
    pub verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Stage {
    pub index: u64,
    pub label: String,
    pub items: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: &'static str,
    pub inputs: BTreeMap<String, String>,
    pub verdicts: Vec<Verdict>,
    pub stages: Vec<Stage>,
    pub runtimes: Vec<u64>,
    pub fuel: u64,
    pub outcome: Outcome,
}

impl Report {
    pub fn new(command: &'static str, fuel: u64) -> Self {
        Report {
            command,
            inputs: BTreeMap::new(),
            verdicts: Vec::new(),
            stages: Vec::new(),
            runtimes: Vec::new(),
            fuel,
            outcome: Outcome::Success,
        }
    }

    pub fn input(&mut self, name: &str, value: impl Into<String>) -> &mut Self {
        self.inputs.insert(name.to_string(), value.into());
        self
    }

    pub fn verdict(
        &mut self,
        subject: impl Into<String>,
        verdict: impl Into<String>,
        detail: Option<String>,
    ) {
        self.verdicts.push(Verdict {
            subject: subject.into(),
            verdict: verdict.into(),
            detail,
        });
    }

    pub fn settle(&mut self, outcome: Outcome) {
        self.outcome = self.outcome.and(outcome);
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command: {}", self.command);
        for (k, v) in &self.inputs {
            let _ = writeln!(out, "{k}: {v}");
        }
        for s in &self.stages {
            let _ = writeln!(out, "stage {} {}", s.index, s.label);
            for item in &s.items {
                let _ = writeln!(out, "    {item}");
            }
        }
        for v in &self.verdicts {
            match &v.detail {
                Some(d) => writeln!(out, "{}: {} ({d})", v.subject, v.verdict),
                None => writeln!(out, "{}: {}", v.subject, v.verdict),
            }
            .expect("string write");
        }
        if !self.runtimes.is_empty() {
            let list: Vec<String> = self.runtimes.iter().map(u64::to_string).collect();
            let _ = writeln!(out, "runtimes: {}", list.join(" "));
        }
        let _ = writeln!(out, "fuel: {}", self.fuel);
        out
    }

    pub fn render_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
