//! Problem files: a matrix over GF(p) with the two compositions.

use std::path::Path;

use hinge_core::{Composition, Matrix, PrimeField};
use serde::{Deserialize, Serialize};

use crate::{CliError, ExitCode};

/// On-disk form. Entries may be given unreduced; they are reduced mod
/// `modulus` on load.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub modulus: u64,
    pub alpha: Vec<usize>,
    pub beta: Vec<usize>,
    pub matrix: Vec<Vec<i64>>,
}

/// A validated problem: prime modulus, compositions with equal sums and a
/// square matrix of that size. Invertibility is checked by the commands
/// that need it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Problem {
    pub field: PrimeField,
    pub alpha: Composition,
    pub beta: Composition,
    pub matrix: Matrix,
}

pub(crate) fn composition(field: &str, parts: &[usize]) -> Result<Composition, CliError> {
    Composition::new(parts.to_vec())
        .map_err(|e| CliError::new(ExitCode::Parse, format!("{field}: {e}")))
}

pub(crate) fn field(modulus: u64) -> Result<PrimeField, CliError> {
    PrimeField::new(modulus).map_err(|e| CliError::new(ExitCode::Parse, format!("modulus: {e}")))
}

pub(crate) fn check_margins(
    alpha: &Composition,
    beta: &Composition,
    n: usize,
) -> Result<(), CliError> {
    if alpha.n() != n {
        return Err(CliError::new(
            ExitCode::Margin,
            format!(
                "alpha: parts sum to {}, but the matrix is {n}x{n}",
                alpha.n()
            ),
        ));
    }
    if beta.n() != n {
        return Err(CliError::new(
            ExitCode::Margin,
            format!("beta: parts sum to {}, but the matrix is {n}x{n}", beta.n()),
        ));
    }
    Ok(())
}

impl ProblemFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text)
            .map_err(|e| CliError::new(ExitCode::Parse, format!("problem file: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::new(ExitCode::Parse, format!("{}: {e}", path.display())))?;
        Self::parse(&text)
            .map_err(|e| CliError::new(e.code, format!("{}: {}", path.display(), e.message)))
    }

    pub fn validate(&self) -> Result<Problem, CliError> {
        let field = field(self.modulus)?;
        let alpha = composition("alpha", &self.alpha)?;
        let beta = composition("beta", &self.beta)?;
        let n = self.matrix.len();
        if let Some((r, row)) = self
            .matrix
            .iter()
            .enumerate()
            .find(|(_, row)| row.len() != n)
        {
            return Err(CliError::new(
                ExitCode::Parse,
                format!(
                    "matrix: row {} has {} entries, expected {n}",
                    r + 1,
                    row.len()
                ),
            ));
        }
        check_margins(&alpha, &beta, n)?;
        let matrix = Matrix::from_rows_with_cols(field, n, &self.matrix)
            .map_err(|e| CliError::new(ExitCode::Parse, format!("matrix: {e}")))?;
        Ok(Problem {
            field,
            alpha,
            beta,
            matrix,
        })
    }
}

impl Problem {
    pub fn to_file(&self) -> ProblemFile {
        ProblemFile {
            modulus: self.field.modulus() as u64,
            alpha: self.alpha.parts().to_vec(),
            beta: self.beta.parts().to_vec(),
            matrix: rows_i64(&self.matrix),
        }
    }

    /// Whether `other` has the same modulus and compositions.
    pub fn same_header(&self, other: &Problem) -> bool {
        self.field == other.field && self.alpha == other.alpha && self.beta == other.beta
    }
}

pub(crate) fn rows_u32(m: &Matrix) -> Vec<Vec<u32>> {
    (0..m.rows()).map(|r| m.row(r).to_vec()).collect()
}

pub(crate) fn rows_i64(m: &Matrix) -> Vec<Vec<i64>> {
    (0..m.rows())
        .map(|r| m.row(r).iter().map(|&x| x as i64).collect())
        .collect()
}
