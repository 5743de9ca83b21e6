//! Reports and their two serializations. The text form is rendered from the
//! same value that is written out as JSON.

use std::fmt::Write;

use clap::ValueEnum;
use hfi_core::invariants::Triple;
use num_rational::Rational64;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripleJson {
    #[serde(rename = "V_lower")]
    pub v_lower: i64,
    #[serde(rename = "V0")]
    pub v0: i64,
    #[serde(rename = "V_upper")]
    pub v_upper: i64,
}

impl From<Triple> for TripleJson {
    fn from(t: Triple) -> Self {
        TripleJson { v_lower: t.v_lower, v0: t.v0, v_upper: t.v_upper }
    }
}

impl std::fmt::Display for TripleJson {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {}, {})", self.v_lower, self.v0, self.v_upper)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Towers {
    #[serde(rename = "d_A")]
    pub d_a: i64,
    #[serde(rename = "d_B")]
    pub d_b: i64,
    #[serde(rename = "d_lower_A")]
    pub d_lower_a: i64,
    #[serde(rename = "d_upper_A")]
    pub d_upper_a: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedDim {
    pub grading: i64,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyRow {
    pub grading: i64,
    #[serde(rename = "A")]
    pub a: usize,
    #[serde(rename = "B")]
    pub b: usize,
    pub cone: usize,
}

/// Rationals are written as strings such as `"-1/2"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DTriple {
    pub d_lower: String,
    pub d: String,
    pub d_upper: String,
}

impl DTriple {
    pub fn new(d_lower: Rational64, d: Rational64, d_upper: Rational64) -> Self {
        DTriple { d_lower: d_lower.to_string(), d: d.to_string(), d_upper: d_upper.to_string() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurgeryJson {
    pub p: i64,
    pub terms: DTriple,
    pub reversed: DTriple,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComputeReport {
    pub knot: String,
    pub provenance: String,
    pub generators: usize,
    pub tau: Option<i64>,
    pub genus: i64,
    pub alexander: String,
    pub determinant: i64,
    pub depth: i64,
    pub margin: i64,
    pub involution: String,
    pub correction_terms: TripleJson,
    pub towers: Towers,
    /// Reduced part of the cone homology.
    pub reduced: Vec<GradedDim>,
    pub homology: Vec<HomologyRow>,
    pub surgery: Option<SurgeryJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub generators: usize,
    pub maslov: String,
    pub violations: Vec<String>,
    pub involution: Option<String>,
    pub valid: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableCell {
    pub computed: TripleJson,
    pub expected: TripleJson,
}

impl TableCell {
    pub fn matches(&self) -> bool {
        self.computed == self.expected
    }

    fn render(&self) -> String {
        if self.matches() {
            self.computed.to_string()
        } else {
            format!("{} != {}", self.computed, self.expected)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub sigma: i64,
    pub arf0: TableCell,
    pub arf1: TableCell,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TablesReport {
    pub rows: Vec<TableRow>,
}

impl TablesReport {
    pub fn all_match(&self) -> bool {
        self.rows.iter().all(|r| r.arf0.matches() && r.arf1.matches())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckLine {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub suite: String,
    pub seed: Option<u64>,
    pub checks: Vec<CheckLine>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "report", rename_all = "snake_case")]
pub enum Report {
    Compute(ComputeReport),
    Check(CheckReport),
    Tables(TablesReport),
    Verify(VerifyReport),
}

impl Report {
    /// Whether the report records a validation failure.
    pub fn failed(&self) -> bool {
        match self {
            Report::Compute(_) => false,
            Report::Check(r) => !r.valid,
            Report::Tables(r) => !r.all_match(),
            Report::Verify(r) => !r.all_passed(),
        }
    }

    pub fn emit(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut out = serde_json::to_string_pretty(self).expect("reports always serialize");
                out.push('\n');
                out
            }
            Format::Text => match self {
                Report::Compute(r) => compute_text(r),
                Report::Check(r) => check_text(r),
                Report::Tables(r) => tables_text(r),
                Report::Verify(r) => verify_text(r),
            },
        }
    }
}

/// Left-aligned columns separated by two spaces, indented by two.
fn table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, &w)| format!("{c:<w$}")).collect();
        format!("  {}\n", padded.join("  ").trim_end())
    };
    let mut out = line(headers.to_vec());
    for row in rows {
        out += &line(row.iter().map(String::as_str).collect());
    }
    out
}

fn fields(pairs: &[(&str, String)]) -> String {
    let width = pairs.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    pairs.iter().map(|(k, v)| format!("{k:<width$}  {v}\n")).collect()
}

fn d_rows(d: &DTriple) -> Vec<Vec<String>> {
    vec![vec![d.d_lower.clone(), d.d.clone(), d.d_upper.clone()]]
}

fn compute_text(r: &ComputeReport) -> String {
    let mut out = fields(&[
        ("knot", r.knot.clone()),
        ("provenance", r.provenance.clone()),
        ("generators", r.generators.to_string()),
        ("tau", r.tau.map_or_else(|| "-".into(), |t| t.to_string())),
        ("genus", r.genus.to_string()),
        ("Alexander", r.alexander.clone()),
        ("determinant", r.determinant.to_string()),
        ("depth", format!("{} (margin {})", r.depth, r.margin)),
        ("involution", r.involution.clone()),
    ]);
    let t = r.correction_terms;
    out += "\ncorrection terms\n";
    out += &table(&["V_lower", "V0", "V_upper"], &[vec![t.v_lower.to_string(), t.v0.to_string(), t.v_upper.to_string()]]);
    let w = &r.towers;
    out += "\ntower bottoms\n";
    out += &table(
        &["d_A", "d_B", "d_lower_A", "d_upper_A"],
        &[vec![w.d_a.to_string(), w.d_b.to_string(), w.d_lower_a.to_string(), w.d_upper_a.to_string()]],
    );
    out += "\nhomology ranks by grading\n";
    let rows: Vec<Vec<String>> = r
        .homology
        .iter()
        .map(|h| vec![h.grading.to_string(), h.a.to_string(), h.b.to_string(), h.cone.to_string()])
        .collect();
    out += &table(&["grading", "A0+", "B+", "cone"], &rows);
    let reduced: Vec<String> = r.reduced.iter().map(|r| format!("{} in grading {}", r.dim, r.grading)).collect();
    let _ = writeln!(out, "\nreduced part of the cone: {}", if reduced.is_empty() { "none".into() } else { reduced.join(", ") });
    if let Some(s) = &r.surgery {
        let _ = writeln!(out, "\n{}-surgery", s.p);
        out += &table(&["d_lower", "d", "d_upper"], &d_rows(&s.terms));
        out += "\nreversed orientation\n";
        out += &table(&["d_lower", "d", "d_upper"], &d_rows(&s.reversed));
    }
    out
}

fn check_text(r: &CheckReport) -> String {
    let mut out = fields(&[
        ("name", r.name.clone()),
        ("generators", r.generators.to_string()),
        ("maslov", r.maslov.clone()),
        ("complex", if r.violations.is_empty() { "ok".into() } else { format!("{} violations", r.violations.len()) }),
        ("involution", r.involution.clone().unwrap_or_else(|| "none given".into()).replace('\n', "; ")),
        ("result", if r.valid { "valid".into() } else { "INVALID".into() }),
    ]);
    for v in &r.violations {
        let _ = writeln!(out, "  {v}");
    }
    out
}

fn tables_text(r: &TablesReport) -> String {
    let mut out = String::new();
    let render = |keep: &dyn Fn(i64) -> bool| {
        let rows: Vec<Vec<String>> = r
            .rows
            .iter()
            .filter(|row| keep(row.sigma))
            .map(|row| vec![row.sigma.to_string(), row.arf0.render(), row.arf1.render()])
            .collect();
        table(&["sigma", "Arf = 0", "Arf = 1"], &rows)
    };
    if r.rows.iter().any(|row| row.sigma <= 0) {
        out += "sigma <= 0\n";
        out += &render(&|s| s <= 0);
    }
    if r.rows.iter().any(|row| row.sigma > 0) {
        if !out.is_empty() {
            out.push('\n');
        }
        out += "sigma > 0\n";
        out += &render(&|s| s > 0);
    }
    let cells = 2 * r.rows.len();
    let _ = writeln!(
        out,
        "\n{}",
        if r.all_match() {
            format!("all {cells} computed triples agree with the closed form")
        } else {
            let bad = r.rows.iter().map(|row| usize::from(!row.arf0.matches()) + usize::from(!row.arf1.matches())).sum::<usize>();
            format!("{bad} of {cells} computed triples disagree with the closed form")
        }
    );
    out
}

fn verify_text(r: &VerifyReport) -> String {
    let mut out = match r.seed {
        Some(seed) => format!("suite {} (seed {seed})\n", r.suite),
        None => format!("suite {}\n", r.suite),
    };
    for c in &r.checks {
        let _ = writeln!(out, "{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
    }
    let passed = r.checks.iter().filter(|c| c.passed).count();
    let _ = writeln!(out, "{passed} of {} checks passed", r.checks.len());
    out
}
