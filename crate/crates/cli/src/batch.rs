//! Newline-delimited JSON configs in, one JSON result per line out.

use jacobi_spectral::exec::map_slice;
use jacobi_spectral::inverse::Verdict;
use jacobi_spectral::Execution;
use serde::Serialize;
use serde_json::{json, Value};

use crate::config::RunConfig;
use crate::run::execute;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub runs: usize,
    pub succeeded: usize,
    pub confirmed: usize,
    pub violated: usize,
    pub errors: usize,
    pub malformed: usize,
}

pub struct BatchOutput {
    /// One compact JSON object per non-blank input line, in input order.
    pub lines: Vec<String>,
    pub summary: Summary,
}

impl BatchOutput {
    pub fn exit_code(&self) -> u8 {
        if self.summary.violated > 0 {
            1
        } else {
            0
        }
    }

    /// Result lines followed by the summary line.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for l in &self.lines {
            s.push_str(l);
            s.push('\n');
        }
        s.push_str(&json!({ "summary": self.summary }).to_string());
        s.push('\n');
        s
    }
}

enum Entry {
    Malformed(String),
    Failed(String),
    Done(Value, Option<Verdict>),
}

/// Runs every entry (in parallel under [`Execution::Parallel`]). Blank
/// lines are skipped; malformed lines and failed runs are reported in
/// place and do not stop the batch.
pub fn run_batch(input: &str, exec: Execution) -> BatchOutput {
    let entries: Vec<(usize, &str)> = input
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| (i + 1, l))
        .collect();
    let results = map_slice(exec, &entries, |&(_, line)| {
        match serde_json::from_str::<RunConfig>(line) {
            Err(e) => Entry::Malformed(e.to_string()),
            Ok(config) => match execute(&config) {
                Ok(o) => Entry::Done(o.document, o.verdict),
                Err(e) => Entry::Failed(e.to_string()),
            },
        }
    });

    let mut summary = Summary::default();
    let mut lines = Vec::with_capacity(results.len());
    for ((line_no, _), entry) in entries.iter().zip(results) {
        summary.runs += 1;
        let value = match entry {
            Entry::Malformed(msg) => {
                summary.malformed += 1;
                json!({"line": line_no, "status": "malformed", "error": msg})
            }
            Entry::Failed(msg) => {
                summary.errors += 1;
                json!({"line": line_no, "status": "error", "error": msg})
            }
            Entry::Done(mut doc, verdict) => {
                let status = match verdict {
                    Some(Verdict::Confirmed) => {
                        summary.confirmed += 1;
                        "confirmed"
                    }
                    Some(Verdict::Violated) => {
                        summary.violated += 1;
                        "violated"
                    }
                    None => "ok",
                };
                summary.succeeded += 1;
                doc["line"] = json!(line_no);
                doc["status"] = json!(status);
                doc
            }
        };
        lines.push(value.to_string());
    }
    BatchOutput { lines, summary }
}
