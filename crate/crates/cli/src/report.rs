use std::process::ExitCode;

use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    Verified,
    Refuted,
    UnknownAtDepth,
    BudgetExhausted,
}

impl Verdict {
    pub fn exit_code(self) -> u8 {
        match self {
            Verdict::Pass | Verdict::Verified => 0,
            Verdict::Fail | Verdict::Refuted => 1,
            Verdict::UnknownAtDepth | Verdict::BudgetExhausted => 2,
        }
    }
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Counters {
    pub nodes: u64,
    pub structures: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub command: Vec<String>,
    pub verdict: Verdict,
    /// What the verdict rests on: maps, extracted elements, counterexamples.
    pub witnesses: Value,
    pub counters: Counters,
    pub wall_ms: u128,
}

impl RunReport {
    pub fn exit(&self) -> ExitCode {
        ExitCode::from(self.verdict.exit_code())
    }
}

/// A command's result before the echo and timing are attached.
pub struct Outcome {
    pub verdict: Verdict,
    pub witnesses: Value,
    pub counters: Counters,
}

impl Outcome {
    pub fn new(verdict: Verdict, witnesses: Value) -> Self {
        Outcome {
            verdict,
            witnesses,
            counters: Counters::default(),
        }
    }

    pub fn with_counters(mut self, nodes: u64, structures: usize) -> Self {
        self.counters = Counters { nodes, structures };
        self
    }
}
