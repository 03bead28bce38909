use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{Format, RunConfig};
use crate::jet::TableEntry;

pub const SCHEMA_VERSION: u32 = 1;

/// Process exit status of a run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ErrorKind {
    Syntax,
    Scope,
    ClosureViolation,
    UnresolvedSpectrum,
    Other,
}

impl ErrorKind {
    pub fn exit_code(self) -> i32 {
        match self {
            ErrorKind::Other => 1,
            ErrorKind::Syntax => 2,
            ErrorKind::Scope => 3,
            ErrorKind::ClosureViolation => 4,
            ErrorKind::UnresolvedSpectrum => 5,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorReport {
    pub kind: ErrorKind,
    pub exit_code: i32,
    pub message: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub position: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub factors: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub element: Option<String>,
}

impl ErrorReport {
    pub fn new(kind: ErrorKind, message: impl Into<String>) -> Self {
        ErrorReport {
            kind,
            exit_code: kind.exit_code(),
            message: message.into(),
            position: None,
            expected: None,
            factors: None,
            element: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquationReport {
    pub rhs: String,
    pub order: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LambdaReport {
    pub candidates: Vec<String>,
    pub unresolved: Vec<String>,
    pub pivots: Vec<String>,
    pub generic_rank: usize,
    pub generic_kernel: bool,
    /// Weights used for the fixed-weight ansatz.
    pub weights: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnsatzReport {
    pub description: String,
    pub generators: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimEntry {
    pub q: u32,
    pub v: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub q: u32,
    pub relation: String,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShiftReport {
    pub selected: Vec<String>,
    /// One matrix per selected coordinate, row-major.
    pub matrices: Vec<Vec<Vec<String>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockReport {
    pub lambda: Vec<String>,
    pub k: Vec<u32>,
    pub size: usize,
    pub elements: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureReport {
    pub rho: usize,
    pub blocks: Vec<BlockReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictReport {
    pub target: String,
    pub exists: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shape: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<TableEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub method: Option<String>,
    pub certificate: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriterionReport {
    pub full: VerdictReport,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub direct: Option<VerdictReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub agree: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckEntry {
    pub expr: String,
    pub symmetry: bool,
    pub defect: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: u32,
    pub config: RunConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub equation: Option<EquationReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda_search: Option<LambdaReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ansatz: Option<AnsatzReport>,
    pub basis: Vec<String>,
    pub dims: Vec<DimEntry>,
    pub bounds: Vec<BoundReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shift: Option<ShiftReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub structure: Option<StructureReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub criterion: Option<CriterionReport>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub check: Vec<CheckEntry>,
    pub notes: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorReport>,
    /// Wall-clock time in milliseconds; only present when requested.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
}

impl Report {
    pub fn new(config: RunConfig) -> Self {
        Report {
            schema: SCHEMA_VERSION,
            config,
            equation: None,
            lambda_search: None,
            ansatz: None,
            basis: Vec::new(),
            dims: Vec::new(),
            bounds: Vec::new(),
            shift: None,
            structure: None,
            criterion: None,
            check: Vec::new(),
            notes: Vec::new(),
            error: None,
            timing_ms: None,
        }
    }

    pub fn exit_code(&self) -> i32 {
        self.error.as_ref().map_or(0, |e| e.exit_code)
    }
}

pub fn emit_report(report: &Report, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Human => render_human(report),
    }
}

fn verdict_lines(out: &mut String, name: &str, v: &VerdictReport) {
    let _ = writeln!(
        out,
        "  {name}: {} depending on {}",
        if v.exists { "exists" } else { "none" },
        v.target
    );
    if let Some(w) = &v.witness {
        let _ = writeln!(out, "    witness: {w}");
    }
    if let (Some(shape), Some(l)) = (&v.shape, &v.lambda) {
        let _ = writeln!(out, "    shape: {shape}, lambda = ({})", l.join(", "));
    }
    let _ = writeln!(out, "    {}", v.certificate);
}

fn render_human(r: &Report) -> String {
    let mut out = String::new();
    if let Some(eq) = &r.equation {
        let _ = writeln!(out, "equation: u_t = {}  (order {})", eq.rhs, eq.order);
    }
    if let Some(l) = &r.lambda_search {
        let _ = writeln!(out, "lambda candidates: {{{}}}", l.candidates.join(", "));
        if !l.unresolved.is_empty() {
            let _ = writeln!(out, "unresolved factors: {}", l.unresolved.join(", "));
        }
    }
    if let Some(a) = &r.ansatz {
        let _ = writeln!(out, "{}", a.description);
    }
    if r.ansatz.is_some() {
        let _ = writeln!(out, "basis ({}):", r.basis.len());
        for (i, b) in r.basis.iter().enumerate() {
            let _ = writeln!(out, "  [{i}] {b}");
        }
    }
    if !r.dims.is_empty() {
        let _ = writeln!(out, "  q | v(q)");
        for d in &r.dims {
            let _ = writeln!(out, "  {:>1} | {}", d.q, d.v);
        }
    }
    for b in &r.bounds {
        let _ = writeln!(out, "bound {}: {}", if b.pass { "pass" } else { "FAIL" }, b.relation);
    }
    if let Some(s) = &r.structure {
        let _ = writeln!(out, "blocks (rho = {}):", s.rho);
        for b in &s.blocks {
            let _ = writeln!(
                out,
                "  lambda = ({}), k = {:?}, size {}: {}",
                b.lambda.join(", "),
                b.k,
                b.size,
                b.elements.join(", ")
            );
        }
    }
    if let Some(c) = &r.criterion {
        let _ = writeln!(out, "criterion:");
        verdict_lines(&mut out, "full", &c.full);
        if let Some(d) = &c.direct {
            verdict_lines(&mut out, "direct", d);
        }
    }
    for c in &r.check {
        let _ = writeln!(out, "check {}: symmetry: {} (defect {})", c.expr, c.symmetry, c.defect);
    }
    for n in &r.notes {
        let _ = writeln!(out, "note: {n}");
    }
    if let Some(t) = r.timing_ms {
        let _ = writeln!(out, "time: {t:.1} ms");
    }
    out
}
