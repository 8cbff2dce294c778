//! The report produced for one scene, its JSON form and its text rendering.
//! Both renderings read the same [`Report`], so they carry the same numbers.

use std::fmt::Write;

use parchern_core::dsl::Diagnostic;
use parchern_core::RingElement;
use serde::Serialize;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Term {
    /// Exact coefficient, `"p/q"` or an integer.
    pub coeff: String,
    /// Generator powers in declaration order; empty for the constant term.
    pub monomial: Vec<(String, u32)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Class {
    pub text: String,
    pub terms: Vec<Term>,
}

impl Class {
    pub fn of(e: &RingElement) -> Self {
        let ring = e.ring();
        let terms = e
            .sorted_terms()
            .into_iter()
            .map(|(m, c)| Term {
                coeff: c.to_string(),
                monomial: m
                    .exponents()
                    .iter()
                    .zip(ring.generators())
                    .filter(|(e, _)| **e > 0)
                    .map(|(e, g)| (g.name.clone(), *e))
                    .collect(),
            })
            .collect();
        Class {
            text: e.to_string(),
            terms,
        }
    }

    pub fn list(es: &[RingElement]) -> Vec<Class> {
        es.iter().map(Class::of).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneratorInfo {
    pub name: String,
    pub degree: u32,
    pub kind: &'static str,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VarietyInfo {
    pub name: String,
    pub dim: u32,
    pub generators: Vec<GeneratorInfo>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParabolicInfo {
    pub name: String,
    pub rank: u32,
    #[serde(rename = "N")]
    pub n: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityResult {
    pub name: String,
    pub passed: bool,
    pub residual: Vec<Class>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Outcome {
    Chern {
        #[serde(rename = "N")]
        n: String,
        classes: Vec<Class>,
    },
    Ch {
        parts: Vec<Class>,
    },
    Ctpoly {
        polynomial: String,
        coefficients: Vec<Class>,
    },
    Degree {
        value: String,
    },
    Grothendieck {
        passed: bool,
        #[serde(rename = "N")]
        n: String,
        tilde: Vec<Class>,
        /// Coefficients of `1, h, ..., h^{r-1}` of the reduced relation.
        residual: Vec<Class>,
        residual_text: String,
    },
    Corollary1 {
        passed: bool,
        residual: Vec<Class>,
    },
    Prop1 {
        passed: bool,
        checks: Vec<IdentityResult>,
    },
    Error {
        message: String,
    },
}

impl Outcome {
    pub fn failed_verification(&self) -> bool {
        match self {
            Outcome::Grothendieck { passed, .. }
            | Outcome::Corollary1 { passed, .. }
            | Outcome::Prop1 { passed, .. } => !passed,
            _ => false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CommandResult {
    pub command: String,
    pub line: u32,
    pub column: u32,
    #[serde(flatten)]
    pub outcome: Outcome,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_us: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiagnosticInfo {
    pub severity: String,
    pub line: u32,
    pub column: u32,
    pub message: String,
}

impl From<&Diagnostic> for DiagnosticInfo {
    fn from(d: &Diagnostic) -> Self {
        DiagnosticInfo {
            severity: d.severity.to_string(),
            line: d.line(),
            column: d.column(),
            message: d.message.clone(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    VerificationFailed,
    ParseError,
    SemanticError,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::VerificationFailed => 1,
            Status::ParseError => 2,
            Status::SemanticError => 3,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::VerificationFailed => "verification failed",
            Status::ParseError => "parse error",
            Status::SemanticError => "semantic error",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub schema: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub variety: Option<VarietyInfo>,
    pub parabolics: Vec<ParabolicInfo>,
    pub results: Vec<CommandResult>,
    pub status: Status,
    pub exit_code: i32,
    pub diagnostics: Vec<DiagnosticInfo>,
}

impl Report {
    pub fn failed(status: Status, diagnostics: &[Diagnostic]) -> Self {
        Report {
            schema: SCHEMA_VERSION,
            variety: None,
            parabolics: Vec::new(),
            results: Vec::new(),
            status,
            exit_code: status.exit_code(),
            diagnostics: diagnostics.iter().map(DiagnosticInfo::from).collect(),
        }
    }
}

/// Report of a `--random` sweep.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepReport {
    pub schema: u32,
    pub seed: u64,
    pub count: usize,
    pub scenes: Vec<SweepScene>,
    pub status: Status,
    pub exit_code: i32,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepScene {
    pub index: usize,
    pub source: String,
    pub report: Report,
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

fn write_classes(out: &mut String, label: &str, classes: &[Class]) {
    for (i, c) in classes.iter().enumerate() {
        writeln!(out, "  {label}_{i} = {}", c.text).unwrap();
    }
}

fn pass(b: bool) -> &'static str {
    if b {
        "PASS"
    } else {
        "FAIL"
    }
}

pub fn render_text(report: &Report) -> String {
    let mut out = String::new();
    if let Some(v) = &report.variety {
        let gens: Vec<String> = v
            .generators
            .iter()
            .map(|g| match g.kind {
                "divisor" => g.name.clone(),
                _ => format!("{} (deg {})", g.name, g.degree),
            })
            .collect();
        writeln!(
            out,
            "variety {} (dim {}): {}",
            v.name,
            v.dim,
            gens.join(", ")
        )
        .unwrap();
    }
    for p in &report.parabolics {
        writeln!(out, "parabolic {}: rank {}, N = {}", p.name, p.rank, p.n).unwrap();
    }
    for r in &report.results {
        let head = format!("[{}:{}] {}", r.line, r.column, r.command);
        match &r.outcome {
            Outcome::Chern { n, classes } => {
                writeln!(out, "{head}").unwrap();
                writeln!(out, "  N = {n}").unwrap();
                write_classes(&mut out, "c", classes);
            }
            Outcome::Ch { parts } => {
                writeln!(out, "{head}").unwrap();
                write_classes(&mut out, "ch", parts);
            }
            Outcome::Ctpoly { polynomial, .. } => {
                writeln!(out, "{head}").unwrap();
                writeln!(out, "  c_t = {polynomial}").unwrap();
            }
            Outcome::Degree { value } => {
                writeln!(out, "{head}").unwrap();
                writeln!(out, "  degree = {value}").unwrap();
            }
            Outcome::Grothendieck {
                passed,
                n,
                tilde,
                residual_text,
                ..
            } => {
                writeln!(out, "{head}: {}", pass(*passed)).unwrap();
                writeln!(out, "  N = {n}").unwrap();
                write_classes(&mut out, "C~", tilde);
                writeln!(out, "  residual = {residual_text}").unwrap();
            }
            Outcome::Corollary1 { passed, residual } => {
                writeln!(out, "{head}: {}", pass(*passed)).unwrap();
                write_classes(&mut out, "residual", residual);
            }
            Outcome::Prop1 { passed, checks } => {
                writeln!(out, "{head}: {}", pass(*passed)).unwrap();
                for c in checks {
                    writeln!(out, "  {}: {}", c.name, pass(c.passed)).unwrap();
                    write_classes(&mut out, "  residual", &c.residual);
                }
            }
            Outcome::Error { message } => {
                writeln!(out, "{head}: ERROR").unwrap();
                writeln!(out, "  {message}").unwrap();
            }
        }
        if let Some(us) = r.elapsed_us {
            writeln!(out, "  time = {us} us").unwrap();
        }
    }
    writeln!(
        out,
        "status: {} (exit {})",
        report.status.label(),
        report.exit_code
    )
    .unwrap();
    out
}
