//! Library behind the `hinge` binary.
//!
//! Every command is a function returning the text destined for stdout
//! together with the process exit status, so the binary stays a thin
//! argument parser and the commands can be tested in-process.
//!
//! Exit statuses: 0 success, 1 negative verdict (`NOT-EQUIVALENT`,
//! `MISMATCH`, a failed self-check), 2 malformed input, 3 singular matrix,
//! 4 margin mismatch, 5 problem headers differ, 6 enumeration budget
//! exceeded.

pub mod problem;
pub mod report;
pub mod selfcheck;

use std::fmt;

use hinge_core::hinge::{chi, standard_matrix};
use hinge_core::oracle::{
    double_cosets_brute, enum_gl, predicted_coset_count, realized_bihinges, EnumerationBudget,
};
use hinge_core::reduce::canonical_01;
use hinge_core::{BiHinge, Composition, DimensionMatrix, Error, PrimeField};
use serde::Serialize;

pub use problem::{Problem, ProblemFile};
pub use report::{CellReport, InvariantReport};

/// Environment variable overriding the default enumeration budget.
pub const BUDGET_ENV: &str = "HINGE_BUDGET";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitCode {
    Success = 0,
    Negative = 1,
    Parse = 2,
    Singular = 3,
    Margin = 4,
    HeaderMismatch = 5,
    Budget = 6,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: ExitCode,
    pub message: String,
}

impl CliError {
    pub fn new(code: ExitCode, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Singular => ExitCode::Singular,
            Error::Margin(_) => ExitCode::Margin,
            Error::Budget { .. } => ExitCode::Budget,
            _ => ExitCode::Parse,
        };
        Self::new(code, e.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
}

/// What a command prints and the status it exits with.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub code: ExitCode,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Self {
            stdout,
            code: ExitCode::Success,
        }
    }
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("output serializes");
    s.push('\n');
    s
}

/// Budget from the flag, else from `HINGE_BUDGET`, else the default. A
/// single number applies to both the group and the subspace limit.
pub fn resolve_budget(
    flag: Option<u128>,
    env: Option<&str>,
) -> Result<EnumerationBudget, CliError> {
    if let Some(limit) = flag {
        return Ok(EnumerationBudget::uniform(limit));
    }
    match env {
        Some(raw) => raw
            .trim()
            .parse::<u128>()
            .map(EnumerationBudget::uniform)
            .map_err(|e| CliError::new(ExitCode::Parse, format!("{BUDGET_ENV}={raw:?}: {e}"))),
        None => Ok(EnumerationBudget::default()),
    }
}

/// Parses `"2,1,3"`.
pub fn parse_csv(field: &str, raw: &str) -> Result<Vec<usize>, CliError> {
    raw.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|e| CliError::new(ExitCode::Parse, format!("{field}: {t:?}: {e}")))
        })
        .collect()
}

/// Parses dimension-matrix rows `"1,0;0,1"`.
pub fn parse_rows(field: &str, raw: &str) -> Result<Vec<Vec<usize>>, CliError> {
    raw.split(';').map(|row| parse_csv(field, row)).collect()
}

fn invertible_problem(file: &ProblemFile) -> Result<Problem, CliError> {
    let problem = file.validate()?;
    if !problem.matrix.is_invertible() {
        return Err(CliError::new(ExitCode::Singular, "matrix: not invertible"));
    }
    Ok(problem)
}

/// The full invariant of a problem.
pub fn invariant_report(problem: &Problem) -> Result<InvariantReport, CliError> {
    let h = chi(&problem.matrix, &problem.alpha, &problem.beta)?;
    let canonical = canonical_01(&problem.matrix, &problem.alpha, &problem.beta)?;
    InvariantReport::new(&h, &canonical)
}

pub fn cmd_invariants(file: &ProblemFile, format: Format) -> Result<Output, CliError> {
    let report = invariant_report(&invertible_problem(file)?)?;
    Ok(Output::ok(match format {
        Format::Json => json(&report),
        Format::Text => report.to_text(),
    }))
}

#[derive(Debug, Serialize)]
struct Verdict {
    equivalent: bool,
    verdict: &'static str,
}

pub fn cmd_equivalent(
    a: &ProblemFile,
    b: &ProblemFile,
    format: Format,
) -> Result<Output, CliError> {
    let pa = invertible_problem(a)?;
    let pb = invertible_problem(b)?;
    if !pa.same_header(&pb) {
        return Err(CliError::new(
            ExitCode::HeaderMismatch,
            "modulus, alpha and beta must agree between the two problem files",
        ));
    }
    let same = chi(&pa.matrix, &pa.alpha, &pa.beta)? == chi(&pb.matrix, &pb.alpha, &pb.beta)?;
    let verdict = if same { "EQUIVALENT" } else { "NOT-EQUIVALENT" };
    let stdout = match format {
        Format::Json => json(&Verdict {
            equivalent: same,
            verdict,
        }),
        Format::Text => format!("{verdict}\n"),
    };
    Ok(Output {
        stdout,
        code: if same {
            ExitCode::Success
        } else {
            ExitCode::Negative
        },
    })
}

fn matrix_text(rows: &[Vec<i64>]) -> String {
    rows.iter()
        .map(|r| format!("{}\n", report::join(r)))
        .collect()
}

/// Prints the 0-1 representative as a problem file (JSON) or as rows.
pub fn cmd_canonical(file: &ProblemFile, format: Format) -> Result<Output, CliError> {
    let problem = invertible_problem(file)?;
    let canonical = Problem {
        matrix: canonical_01(&problem.matrix, &problem.alpha, &problem.beta)?,
        ..problem
    }
    .to_file();
    Ok(Output::ok(match format {
        Format::Json => json(&canonical),
        Format::Text => matrix_text(&canonical.matrix),
    }))
}

/// The standard matrix of a dimension table with its bi-hinge.
pub fn cmd_standard(
    dims: &[Vec<usize>],
    alpha: &[usize],
    beta: &[usize],
    modulus: u64,
    format: Format,
) -> Result<Output, CliError> {
    let field = problem::field(modulus)?;
    let alpha = problem::composition("alpha", alpha)?;
    let beta = problem::composition("beta", beta)?;
    let d = DimensionMatrix::new(dims.to_vec(), alpha, beta)?;
    let m = standard_matrix(&d, field);
    let report = InvariantReport::new(&BiHinge::standard(&d, field), &m)?;
    Ok(Output::ok(match format {
        Format::Json => json(&report),
        Format::Text => report.to_text(),
    }))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountReport {
    pub modulus: u32,
    pub alpha: Vec<usize>,
    pub beta: Vec<usize>,
    pub predicted: u128,
    /// Exhaustive double coset count.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub brute: Option<usize>,
    /// Distinct bi-hinges over the whole group.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bihinges: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<&'static str>,
}

/// Counts `T_-(β) \ GL(n, q) / T_+(α)` by the orbit-stabilizer formula and,
/// with `brute`, by exhaustive enumeration.
pub fn count(
    alpha: &Composition,
    beta: &Composition,
    field: PrimeField,
    brute: bool,
    budget: &EnumerationBudget,
) -> Result<CountReport, CliError> {
    let q = field.modulus() as u64;
    let predicted = predicted_coset_count(alpha, beta, q)?;
    let mut report = CountReport {
        modulus: field.modulus(),
        alpha: alpha.parts().to_vec(),
        beta: beta.parts().to_vec(),
        predicted,
        brute: None,
        bihinges: None,
        verdict: None,
    };
    if brute {
        let cosets = double_cosets_brute(alpha.n(), field, alpha, beta, budget)?.len();
        let group = enum_gl(alpha.n(), field, budget)?;
        let hinges = realized_bihinges(&group, alpha, beta)?.len();
        let matched = cosets as u128 == predicted && hinges == cosets;
        report.brute = Some(cosets);
        report.bihinges = Some(hinges);
        report.verdict = Some(if matched { "MATCH" } else { "MISMATCH" });
    }
    Ok(report)
}

pub fn cmd_count(
    alpha: &[usize],
    beta: &[usize],
    modulus: u64,
    brute: bool,
    budget: &EnumerationBudget,
    format: Format,
) -> Result<Output, CliError> {
    let field = problem::field(modulus)?;
    let alpha = problem::composition("alpha", alpha)?;
    let beta = problem::composition("beta", beta)?;
    if alpha.n() != beta.n() {
        return Err(CliError::new(
            ExitCode::Margin,
            format!("alpha sums to {}, beta sums to {}", alpha.n(), beta.n()),
        ));
    }
    let report = count(&alpha, &beta, field, brute, budget)?;
    let stdout = match format {
        Format::Json => json(&report),
        Format::Text => {
            let mut s = format!("predicted {}\n", report.predicted);
            if let (Some(b), Some(h), Some(v)) = (report.brute, report.bihinges, report.verdict) {
                s += &format!("brute {b}\nbihinges {h}\n{v}\n");
            }
            s
        }
    };
    let code = match report.verdict {
        Some("MISMATCH") => ExitCode::Negative,
        _ => ExitCode::Success,
    };
    Ok(Output { stdout, code })
}
