//! Run reports. Field order is fixed and maps are sorted, so a report is a
//! pure function of the instance and the seed (timings aside).

use serde::Serialize;
use serde_json::Value;
use setconj::polyhedra::Polyhedron;
use setconj::rational::{format_vec, Rat};

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub instance: String,
    pub seed: u64,
    pub passed: bool,
    pub tasks: Vec<TaskReport>,
}

#[derive(Debug, Clone, Serialize)]
pub struct TaskReport {
    /// Position in the instance's task list.
    pub index: usize,
    pub task: String,
    pub target: String,
    pub passed: bool,
    /// First counterexample, present only on failure.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    pub details: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports always serialize");
        s.push('\n');
        s
    }

    pub fn first_failure(&self) -> Option<&TaskReport> {
        self.tasks.iter().find(|t| !t.passed)
    }
}

pub fn polys(ps: &[Polyhedron]) -> Value {
    Value::from(ps.iter().map(ToString::to_string).collect::<Vec<_>>())
}

pub fn vector(v: &[Rat]) -> Value {
    Value::from(format_vec(v))
}

pub fn show(v: &[Rat]) -> String {
    format!("[{}]", format_vec(v).join(" "))
}
