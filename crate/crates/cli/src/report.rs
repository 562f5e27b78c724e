//! Results of running a script, in text and JSON form.
//!
//! Relation blocks are shown canonically: the basis of each block is
//! flattened row-major, brought to reduced row echelon form with unit
//! pivots, and each row is printed back as a matrix. Two runs that produce
//! the same subspaces therefore print the same text, whatever basis the
//! numerics happened to pick.

use std::fmt::Write;

use num_complex::Complex64;
use qcpo_core::{ComplexMatrix, DensityState, QRelation, QuantumSet};
use serde_json::{json, Value as Json};

use crate::ast::{Mode, Span};
use crate::diagnostic::Diagnostic;
use crate::json;

pub const HEADER: &str = "qcpo report v1";

#[derive(Debug, Clone)]
pub enum Value {
    Set(QuantumSet),
    Rel(QRelation),
    State(DensityState),
}

#[derive(Debug, Clone)]
pub enum Outcome {
    Defined(Value),
    Printed(Value),
    Check {
        mode: Mode,
        passed: bool,
        detail: Option<String>,
    },
}

#[derive(Debug, Clone)]
pub struct Entry {
    pub span: Span,
    pub source: String,
    pub outcome: Outcome,
}

#[derive(Debug, Clone, Default)]
pub struct Report {
    pub entries: Vec<Entry>,
    pub error: Option<Diagnostic>,
}

impl Report {
    pub fn failures(&self) -> usize {
        self.entries
            .iter()
            .filter(|e| matches!(e.outcome, Outcome::Check { passed: false, .. }))
            .count()
    }

    /// 0 when every check holds, 1 when one fails, 2 on an error.
    pub fn exit_code(&self) -> i32 {
        if self.error.is_some() {
            2
        } else if self.failures() > 0 {
            1
        } else {
            0
        }
    }

    fn status(&self) -> String {
        match (&self.error, self.failures()) {
            (Some(_), _) => "error".into(),
            (None, 0) => "ok".into(),
            (None, n) => format!("failed {n}"),
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{HEADER}\n");
        for e in &self.entries {
            writeln!(out, "{} {}", e.span, e.source).unwrap();
            match &e.outcome {
                Outcome::Defined(v) => writeln!(out, "  = {}", summary(v)).unwrap(),
                Outcome::Printed(v) => out.push_str(&indent(&render(v), "  ")),
                Outcome::Check {
                    mode,
                    passed,
                    detail,
                } => {
                    let verdict = match (mode, passed) {
                        (_, true) => "true",
                        (Mode::Check, false) => "false",
                        (Mode::Assert, false) => "ASSERTION FAILED",
                    };
                    match detail {
                        Some(d) => writeln!(out, "  {verdict} ({d})").unwrap(),
                        None => writeln!(out, "  {verdict}").unwrap(),
                    }
                }
            }
        }
        if let Some(d) = &self.error {
            writeln!(out, "error {d}").unwrap();
        }
        writeln!(out, "status: {}", self.status()).unwrap();
        out
    }

    pub fn to_json(&self) -> Json {
        let entries: Vec<Json> = self
            .entries
            .iter()
            .map(|e| {
                let outcome = match &e.outcome {
                    Outcome::Defined(v) => json!({"kind": "defined", "value": value_json(v)}),
                    Outcome::Printed(v) => json!({"kind": "printed", "value": value_json(v)}),
                    Outcome::Check {
                        mode,
                        passed,
                        detail,
                    } => json!({
                        "kind": match mode { Mode::Check => "check", Mode::Assert => "assert" },
                        "passed": passed,
                        "detail": detail,
                    }),
                };
                json!({
                    "line": e.span.line,
                    "col": e.span.col,
                    "statement": e.source,
                    "outcome": outcome,
                })
            })
            .collect();
        let error = self
            .error
            .as_ref()
            .map(|d| json!({"line": d.span.line, "col": d.span.col, "message": d.message}));
        json!({
            "version": HEADER,
            "entries": entries,
            "error": error,
            "status": self.status(),
        })
    }
}

fn value_json(v: &Value) -> Json {
    match v {
        Value::Set(s) => json!({"set": json::set_to_json(s)}),
        Value::Rel(r) => json!({"relation": json::relation_to_json(r)}),
        Value::State(m) => json!({"state": json::state_to_json(m)}),
    }
}

fn summary(v: &Value) -> String {
    match v {
        Value::Set(s) => format!("set {s}"),
        Value::Rel(r) => format!(
            "relation {} -> {}, {} nonzero block(s)",
            r.dom(),
            r.cod(),
            r.nonzero_blocks()
        ),
        Value::State(m) => format!("state on {}", m.space()),
    }
}

fn indent(text: &str, pad: &str) -> String {
    text.lines().map(|l| format!("{pad}{l}\n")).collect()
}

/// Multi-line rendering used by `print` and the `lift`/`qft` commands.
pub fn render(v: &Value) -> String {
    match v {
        Value::Set(s) => format!("set {s}\n"),
        Value::Rel(r) => render_relation(r),
        Value::State(m) => render_state(m),
    }
}

pub fn render_relation(r: &QRelation) -> String {
    let mut out = format!("relation {} -> {}\n", r.dom(), r.cod());
    for ((i, j), space) in r.blocks() {
        if space.is_zero() {
            continue;
        }
        let (rows, cols) = (space.cod_dim(), space.dom_dim());
        let tag = if space.is_full() { ", full" } else { "" };
        writeln!(
            out,
            "  {} -> {}: dim {}{tag}",
            r.dom().label(i),
            r.cod().label(j),
            space.dim()
        )
        .unwrap();
        if space.is_full() {
            continue;
        }
        for row in canonical_rows(space.basis(), rows, cols) {
            let m = ComplexMatrix::from_fn(rows, cols, |a, b| row[a * cols + b]);
            writeln!(out, "    {}", matrix_text(&m)).unwrap();
        }
    }
    out
}

pub fn render_state(m: &DensityState) -> String {
    let mut out = format!("state on {}\n", m.space());
    for (i, b) in m.blocks().iter().enumerate() {
        writeln!(out, "  {}: {}", m.space().label(i), matrix_text(b)).unwrap();
    }
    out
}

/// Reduced row echelon form of the row-major coefficient rows.
fn canonical_rows(basis: &[ComplexMatrix], rows: usize, cols: usize) -> Vec<Vec<Complex64>> {
    let mut a: Vec<Vec<Complex64>> = basis
        .iter()
        .map(|m| {
            (0..rows)
                .flat_map(|r| (0..cols).map(move |c| (r, c)))
                .map(|(r, c)| m[(r, c)])
                .collect()
        })
        .collect();
    let n = rows * cols;
    let tol = 1e-9;
    let mut pivot_row = 0;
    for col in 0..n {
        if pivot_row == a.len() {
            break;
        }
        let best = (pivot_row..a.len())
            .max_by(|&x, &y| a[x][col].norm().total_cmp(&a[y][col].norm()))
            .unwrap();
        if a[best][col].norm() <= tol {
            continue;
        }
        a.swap(pivot_row, best);
        let p = a[pivot_row][col];
        for x in a[pivot_row].iter_mut() {
            *x /= p;
        }
        let prow = a[pivot_row].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r != pivot_row {
                let k = row[col];
                for (x, y) in row.iter_mut().zip(&prow) {
                    *x -= k * y;
                }
            }
        }
        pivot_row += 1;
    }
    a.truncate(pivot_row);
    a
}

pub fn matrix_text(m: &ComplexMatrix) -> String {
    let rows: Vec<String> = (0..m.nrows())
        .map(|r| {
            let cells: Vec<String> = (0..m.ncols()).map(|c| complex_text(m[(r, c)])).collect();
            format!("[{}]", cells.join(", "))
        })
        .collect();
    format!("[{}]", rows.join(", "))
}

fn real_text(x: f64) -> String {
    let s = format!("{x:.6}");
    if s.trim_start_matches('-')
        .chars()
        .all(|c| c == '0' || c == '.')
    {
        "0.000000".into()
    } else {
        s
    }
}

pub fn complex_text(z: Complex64) -> String {
    let re = real_text(z.re);
    let im = real_text(z.im);
    match (re == "0.000000", im == "0.000000") {
        (_, true) => re,
        (true, false) => format!("{im}i"),
        (false, false) => match im.strip_prefix('-') {
            Some(abs) => format!("{re}-{abs}i"),
            None => format!("{re}+{im}i"),
        },
    }
}
