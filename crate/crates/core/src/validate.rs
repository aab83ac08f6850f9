//! Re-check a persisted template against the construction.
//!
//! The file is read as raw JSON so every problem can be reported with the
//! JSON pointer of the offending field. The template is then rebuilt from
//! its parameters and compared field by field.

use serde::Serialize;
use serde_json::Value;

use crate::disk_curves::encircled_punctures;
use crate::link_template::{build_template_with, loop_heights, LinkTemplate, Loop};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Finding {
    pub pointer: String,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub ok: bool,
    pub findings: Vec<Finding>,
}

struct Collector {
    findings: Vec<Finding>,
}

impl Collector {
    fn fail(&mut self, pointer: impl Into<String>, message: impl Into<String>) {
        self.findings.push(Finding { pointer: pointer.into(), message: message.into() });
    }

    fn uint(&mut self, v: &Value, pointer: &str) -> Option<usize> {
        match v.pointer(pointer).and_then(Value::as_u64) {
            Some(x) => Some(x as usize),
            None => {
                self.fail(pointer, "expected a non-negative integer");
                None
            }
        }
    }

    fn int(&mut self, v: &Value, pointer: &str) -> Option<i64> {
        match v.pointer(pointer).and_then(Value::as_i64) {
            Some(x) => Some(x),
            None => {
                self.fail(pointer, "expected an integer");
                None
            }
        }
    }

    fn boolean(&mut self, v: &Value, pointer: &str) -> Option<bool> {
        match v.pointer(pointer).and_then(Value::as_bool) {
            Some(x) => Some(x),
            None => {
                self.fail(pointer, "expected a boolean");
                None
            }
        }
    }
}

fn parse(v: &Value, c: &mut Collector) -> Option<LinkTemplate> {
    let n = c.uint(v, "/n");
    let l = c.uint(v, "/l");
    let monodromy_shift = c.uint(v, "/monodromy_shift");
    let extra_full_twists = c.int(v, "/extra_full_twists");
    let has_augmentation = c.boolean(v, "/has_augmentation");
    let path_length = c.uint(v, "/path_length");
    let Some(raw_loops) = v.pointer("/loops").and_then(Value::as_array) else {
        c.fail("/loops", "expected an array");
        return None;
    };
    let mut loops = Vec::with_capacity(raw_loops.len());
    for k in 0..raw_loops.len() {
        let base = format!("/loops/{k}");
        let i = c.int(v, &format!("{base}/i"));
        let j = c.uint(v, &format!("{base}/j"));
        let step = c.uint(v, &format!("{base}/step"));
        let strands = match v.pointer(&format!("{base}/strands")).and_then(Value::as_array) {
            Some(xs) => xs
                .iter()
                .enumerate()
                .map(|(s, x)| c.uint(x, "").or_else(|| {
                    c.findings.pop();
                    c.fail(format!("{base}/strands/{s}"), "expected a non-negative integer");
                    None
                }))
                .collect::<Option<Vec<usize>>>(),
            None => {
                c.fail(format!("{base}/strands"), "expected an array");
                None
            }
        };
        if let (Some(i), Some(j), Some(step), Some(strands)) = (i, j, step, strands) {
            loops.push(Loop { i, j, strands, step });
        }
    }
    if !c.findings.is_empty() {
        return None;
    }
    Some(LinkTemplate {
        n: n?,
        l: l?,
        monodromy_shift: monodromy_shift?,
        extra_full_twists: extra_full_twists?,
        has_augmentation: has_augmentation?,
        path_length: path_length?,
        loops,
    })
}

fn describe(lp: &Loop) -> String {
    format!("loop {} at step {}", lp.label(), lp.step)
}

fn compare(found: &LinkTemplate, expected: &LinkTemplate, c: &mut Collector) {
    let scalar = |c: &mut Collector, field: &str, got: String, want: String| {
        if got != want {
            c.fail(format!("/{field}"), format!("{field} is {got}, expected {want}"));
        }
    };
    scalar(c, "monodromy_shift", found.monodromy_shift.to_string(), expected.monodromy_shift.to_string());
    scalar(c, "has_augmentation", found.has_augmentation.to_string(), expected.has_augmentation.to_string());
    scalar(c, "path_length", found.path_length.to_string(), expected.path_length.to_string());
    if found.loops.len() != expected.loops.len() {
        c.fail("/loops", format!("{} loops, expected {}", found.loops.len(), expected.loops.len()));
    }
    for (k, (got, want)) in found.loops.iter().zip(&expected.loops).enumerate() {
        let base = format!("/loops/{k}");
        if got.i != want.i {
            c.fail(format!("{base}/i"), format!("{}: index {}, expected {}", describe(got), got.i, want.i));
        }
        if got.j != want.j {
            c.fail(format!("{base}/j"), format!("{}: width {}, expected {}", describe(got), got.j, want.j));
        }
        if got.step != want.step {
            c.fail(format!("{base}/step"), format!("{}: step {}, expected {}", describe(got), got.step, want.step));
        }
        if got.strands != want.strands {
            c.fail(
                format!("{base}/strands"),
                format!("{}: strands {:?}, expected {:?}", describe(got), got.strands, want.strands),
            );
        }
    }
}

/// Internal consistency of the file on its own terms.
fn self_consistency(t: &LinkTemplate, c: &mut Collector) {
    for (k, lp) in t.loops.iter().enumerate() {
        match lp.curve(t.n) {
            Ok(curve) => {
                if lp.strands != encircled_punctures(&curve) {
                    c.fail(format!("/loops/{k}/strands"), format!("{}: strands do not match its curve", describe(lp)));
                }
            }
            Err(e) => c.fail(format!("/loops/{k}"), format!("{}: {e}", describe(lp))),
        }
    }
    if c.findings.is_empty() {
        if let Err(e) = loop_heights(t) {
            c.fail("/loops", e.to_string());
        }
    }
}

/// Validate a template document.
pub fn validate_template_json(v: &Value) -> ValidationReport {
    let mut c = Collector { findings: Vec::new() };
    if let Some(found) = parse(v, &mut c) {
        match build_template_with(found.n, found.l, found.extra_full_twists) {
            Ok(expected) => {
                self_consistency(&found, &mut c);
                compare(&found, &expected, &mut c);
            }
            Err(e) => c.fail("/l", e.to_string()),
        }
    }
    // one fault can surface through several checks
    c.findings.dedup();
    ValidationReport { ok: c.findings.is_empty(), findings: c.findings }
}

pub fn validate_template_str(text: &str) -> ValidationReport {
    match serde_json::from_str::<Value>(text) {
        Ok(v) => validate_template_json(&v),
        Err(e) => ValidationReport {
            ok: false,
            findings: vec![Finding { pointer: String::new(), message: format!("not JSON: {e}") }],
        },
    }
}
