//! Command output: labelled rows, model-vs-reference comparisons and oracle
//! diagnostics, rendered as an aligned table, CSV or JSON.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Input {
    pub name: String,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Row {
    pub label: String,
    pub value: f64,
    pub unit: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RatioOf {
    ModelOverReference,
    ReferenceOverModel,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Comparison {
    pub label: String,
    pub model: Option<f64>,
    pub reference: Option<f64>,
    pub ratio_of: RatioOf,
    /// Absent unless both sides exist and the quotient is finite.
    pub ratio: Option<f64>,
    pub unit: String,
}

impl Comparison {
    pub fn new(label: impl Into<String>, model: Option<f64>, reference: Option<f64>, ratio_of: RatioOf, unit: &str) -> Self {
        let mut c = Self { label: label.into(), model, reference, ratio_of, ratio: None, unit: unit.to_string() };
        c.ratio = c.compute_ratio();
        c
    }

    pub fn compute_ratio(&self) -> Option<f64> {
        let (num, den) = match self.ratio_of {
            RatioOf::ModelOverReference => (self.model?, self.reference?),
            RatioOf::ReferenceOverModel => (self.reference?, self.model?),
        };
        let r = num / den;
        r.is_finite().then_some(r)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Diagnostic {
    pub label: String,
    /// `None` when the oracle itself failed.
    pub residual: Option<f64>,
    pub tolerance: f64,
    pub passed: bool,
}

impl Diagnostic {
    pub fn new(label: impl Into<String>, residual: Option<f64>, tolerance: f64) -> Self {
        let mut d = Self { label: label.into(), residual, tolerance, passed: false };
        d.passed = d.check();
        d
    }

    pub fn check(&self) -> bool {
        self.residual.is_some_and(|r| r <= self.tolerance)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub inputs: Vec<Input>,
    pub rows: Vec<Row>,
    pub comparisons: Vec<Comparison>,
    pub diagnostics: Vec<Diagnostic>,
    pub errors: Vec<String>,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Self { command: command.into(), ..Self::default() }
    }

    pub fn input(&mut self, name: &str, value: impl ToString) {
        self.inputs.push(Input { name: name.to_string(), value: value.to_string() });
    }

    /// Adds a row, or an error entry if `value` is not finite.
    pub fn row(&mut self, label: impl Into<String>, value: f64, unit: &str) {
        let label = label.into();
        if value.is_finite() {
            self.rows.push(Row { label, value, unit: unit.to_string() });
        } else {
            self.errors.push(format!("{label}: non-finite result"));
        }
    }

    pub fn compare(&mut self, c: Comparison) {
        self.comparisons.push(c);
    }

    pub fn diagnose(&mut self, d: Diagnostic) {
        self.diagnostics.push(d);
    }

    pub fn error(&mut self, message: impl ToString) {
        self.errors.push(message.to_string());
    }

    pub fn passed(&self) -> bool {
        self.diagnostics.iter().all(|d| d.passed)
    }

    /// 0 on success, 2 if a diagnostic failed, 1 if an error was recorded.
    pub fn exit_code(&self) -> i32 {
        if !self.passed() {
            2
        } else if !self.errors.is_empty() {
            1
        } else {
            0
        }
    }

    /// The same report with every derived column (ratios, pass flags)
    /// recomputed from its inputs.
    pub fn recomputed(&self) -> Report {
        let mut out = self.clone();
        for c in &mut out.comparisons {
            c.ratio = c.compute_ratio();
        }
        for d in &mut out.diagnostics {
            d.passed = d.check();
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports hold only finite numbers")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Report> {
        serde_json::from_str(text)
    }

    /// Parses `text`, recomputes the derived columns and checks that the
    /// serialization is unchanged.
    pub fn roundtrips(text: &str) -> bool {
        Report::from_json(text).is_ok_and(|r| r.recomputed().to_json() == text)
    }

    pub fn render(&self, format: Format, digits: usize) -> String {
        match format {
            Format::Table => self.to_table(digits),
            Format::Csv => self.to_csv(digits),
            Format::Json => self.to_json(),
        }
    }

    pub fn to_csv(&self, digits: usize) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        let num = |v: Option<f64>| v.map(|x| format_sig(x, digits)).unwrap_or_default();
        let mut records: Vec<[String; 8]> = Vec::new();
        records.push(["section", "label", "value", "unit", "reference", "ratio", "tolerance", "status"].map(String::from));
        for i in &self.inputs {
            records.push(["input".into(), i.name.clone(), i.value.clone(), String::new(), String::new(), String::new(), String::new(), String::new()]);
        }
        for r in &self.rows {
            records.push(["row".into(), r.label.clone(), num(Some(r.value)), r.unit.clone(), String::new(), String::new(), String::new(), String::new()]);
        }
        for c in &self.comparisons {
            records.push([
                "comparison".into(),
                c.label.clone(),
                num(c.model),
                c.unit.clone(),
                num(c.reference),
                num(c.ratio),
                String::new(),
                String::new(),
            ]);
        }
        for d in &self.diagnostics {
            records.push([
                "diagnostic".into(),
                d.label.clone(),
                num(d.residual),
                "1".into(),
                String::new(),
                String::new(),
                num(Some(d.tolerance)),
                status(d.passed).into(),
            ]);
        }
        for e in &self.errors {
            records.push(["error".into(), e.clone(), String::new(), String::new(), String::new(), String::new(), String::new(), String::new()]);
        }
        for rec in records {
            w.write_record(&rec).expect("writing to memory");
        }
        String::from_utf8(w.into_inner().expect("flush to memory")).expect("csv output is utf-8")
    }

    pub fn to_table(&self, digits: usize) -> String {
        let mut out = String::new();
        let num = |v: Option<f64>| v.map(|x| format_sig(x, digits)).unwrap_or_else(|| "undefined".into());
        let _ = writeln!(out, "{}", self.command);
        if !self.inputs.is_empty() {
            out.push('\n');
            let rows: Vec<Vec<String>> = self.inputs.iter().map(|i| vec![i.name.clone(), i.value.clone()]).collect();
            aligned(&mut out, &["input", "value"], &rows);
        }
        if !self.rows.is_empty() {
            out.push('\n');
            let rows: Vec<Vec<String>> = self
                .rows
                .iter()
                .map(|r| vec![r.label.clone(), format_sig(r.value, digits), r.unit.clone()])
                .collect();
            aligned(&mut out, &["quantity", "value", "unit"], &rows);
        }
        if !self.comparisons.is_empty() {
            out.push('\n');
            let rows: Vec<Vec<String>> = self
                .comparisons
                .iter()
                .map(|c| {
                    let ratio_name = match c.ratio_of {
                        RatioOf::ModelOverReference => "model/ref",
                        RatioOf::ReferenceOverModel => "ref/model",
                    };
                    vec![c.label.clone(), num(c.model), num(c.reference), c.unit.clone(), num(c.ratio), ratio_name.into()]
                })
                .collect();
            aligned(&mut out, &["comparison", "model", "reference", "unit", "ratio", ""], &rows);
        }
        if !self.diagnostics.is_empty() {
            out.push('\n');
            let rows: Vec<Vec<String>> = self
                .diagnostics
                .iter()
                .map(|d| vec![d.label.clone(), num(d.residual), format_sig(d.tolerance, 3), status(d.passed).into()])
                .collect();
            aligned(&mut out, &["check", "residual", "tolerance", "status"], &rows);
        }
        for e in &self.errors {
            let _ = writeln!(out, "\nerror: {e}");
        }
        out
    }
}

fn status(passed: bool) -> &'static str {
    if passed {
        "pass"
    } else {
        "FAIL"
    }
}

fn aligned(out: &mut String, header: &[&str], rows: &[Vec<String>]) {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (w, cell) in widths.iter_mut().zip(r) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<&str>| -> String {
        let mut s = String::new();
        for (i, (cell, w)) in cells.iter().zip(&widths).enumerate() {
            if i > 0 {
                s.push_str("  ");
            }
            let pad = w - cell.chars().count();
            s.push_str(cell);
            s.push_str(&" ".repeat(pad));
        }
        s.trim_end().to_string()
    };
    let _ = writeln!(out, "{}", line(header.to_vec()));
    for r in rows {
        let _ = writeln!(out, "{}", line(r.iter().map(String::as_str).collect()));
    }
}

/// Formats `v` with `digits` significant digits, switching to exponent form
/// outside `[1e-3, 1e6)`.
pub fn format_sig(v: f64, digits: usize) -> String {
    let digits = digits.max(1);
    if v == 0.0 {
        return "0".into();
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let sci = format!("{:.*e}", digits - 1, v);
    let exp: i32 = sci.rsplit('e').next().and_then(|e| e.parse().ok()).unwrap_or(0);
    if (-3..6).contains(&exp) {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        format!("{v:.decimals$}")
    } else {
        sci
    }
}
