//! Serialized invariants.
//!
//! Each relation is stored as the RREF basis of its graph in `V_i ⊕ W_j`,
//! so two reports are textually equal exactly when the bi-hinges are.

use std::fmt::Write as _;

use hinge_core::{BiHinge, Composition, LinearRelation, Matrix};
use serde::{Deserialize, Serialize};

use crate::problem::{composition, field, rows_u32};
use crate::{CliError, ExitCode};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellReport {
    /// 1-based block indices.
    pub i: usize,
    pub j: usize,
    /// Rows `(ξ, η)` with `ξ ∈ V_i` first.
    pub basis: Vec<Vec<u32>>,
    pub ker: usize,
    pub dom: usize,
    pub im: usize,
    pub indef: usize,
    /// `Θ : dom/ker → im/indef` in pivot-completion bases.
    pub theta: Vec<Vec<u32>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub modulus: u32,
    pub alpha: Vec<usize>,
    pub beta: Vec<usize>,
    pub dimension_matrix: Vec<Vec<usize>>,
    pub cells: Vec<CellReport>,
    pub canonical: Vec<Vec<u32>>,
}

impl InvariantReport {
    pub fn new(h: &BiHinge, canonical: &Matrix) -> Result<Self, CliError> {
        let dims = h.dimension_matrix().map_err(CliError::from)?;
        let mut cells = Vec::with_capacity(h.p() * h.q());
        for i in 0..h.p() {
            for j in 0..h.q() {
                let c = h.cell(i, j);
                cells.push(CellReport {
                    i: i + 1,
                    j: j + 1,
                    basis: rows_u32(c.space().basis()),
                    ker: c.ker().dim(),
                    dom: c.dom().dim(),
                    im: c.im().dim(),
                    indef: c.indef().dim(),
                    theta: rows_u32(&c.theta().map_err(CliError::from)?),
                });
            }
        }
        Ok(Self {
            modulus: h.field().modulus(),
            alpha: h.alpha().parts().to_vec(),
            beta: h.beta().parts().to_vec(),
            dimension_matrix: dims.rows(),
            cells,
            canonical: rows_u32(canonical),
        })
    }

    /// Rebuilds the bi-hinge from the stored bases.
    pub fn to_bihinge(&self) -> Result<BiHinge, CliError> {
        let f = field(self.modulus as u64)?;
        let alpha: Composition = composition("alpha", &self.alpha)?;
        let beta: Composition = composition("beta", &self.beta)?;
        let (p, q) = (alpha.len(), beta.len());
        if self.cells.len() != p * q {
            return Err(CliError::new(
                ExitCode::Parse,
                format!("cells: {} entries for a {p}x{q} grid", self.cells.len()),
            ));
        }
        let mut grid = Vec::with_capacity(p * q);
        for (k, cell) in self.cells.iter().enumerate() {
            let (i, j) = (k / q, k % q);
            if (cell.i, cell.j) != (i + 1, j + 1) {
                return Err(CliError::new(
                    ExitCode::Parse,
                    format!(
                        "cells: entry {} is ({}, {}), expected ({}, {})",
                        k + 1,
                        cell.i,
                        cell.j,
                        i + 1,
                        j + 1
                    ),
                ));
            }
            let (dx, dy) = (alpha.parts()[i], beta.parts()[j]);
            let rows: Vec<Vec<i64>> = cell
                .basis
                .iter()
                .map(|r| r.iter().map(|&x| x as i64).collect())
                .collect();
            let gens = Matrix::from_rows_with_cols(f, dx + dy, &rows)
                .map_err(|e| CliError::new(ExitCode::Parse, format!("cells[{k}].basis: {e}")))?;
            let rel = LinearRelation::from_generators(dx, dy, &gens)
                .map_err(|e| CliError::new(ExitCode::Parse, format!("cells[{k}].basis: {e}")))?;
            grid.push(rel);
        }
        BiHinge::new(alpha, beta, grid)
            .map_err(|e| CliError::new(ExitCode::Parse, format!("cells: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Human-readable layout: relations as `(ξ ; η)` rows with their
    /// dimensions.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let csv = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
        let _ = writeln!(
            out,
            "GF({})  alpha = ({})  beta = ({})",
            self.modulus,
            csv(&self.alpha),
            csv(&self.beta)
        );
        let _ = writeln!(out, "\ndimension matrix (rows i, columns j)");
        for row in &self.dimension_matrix {
            let _ = writeln!(out, "  {}", join(row));
        }
        for cell in &self.cells {
            let dx = self.alpha[cell.i - 1];
            let _ = writeln!(
                out,
                "\nchi({},{}) : V{} (dim {}) -> W{} (dim {})   ker {}  dom {}  indef {}  im {}",
                cell.i,
                cell.j,
                cell.i,
                dx,
                cell.j,
                self.beta[cell.j - 1],
                cell.ker,
                cell.dom,
                cell.indef,
                cell.im
            );
            if cell.basis.is_empty() {
                let _ = writeln!(out, "  (zero relation)");
            }
            for row in &cell.basis {
                let _ = writeln!(out, "  ({} ; {})", join(&row[..dx]), join(&row[dx..]));
            }
            if !cell.theta.is_empty() {
                let theta: Vec<String> = cell
                    .theta
                    .iter()
                    .map(|r| format!("[{}]", join(r)))
                    .collect();
                let _ = writeln!(out, "  theta = {}", theta.join(" "));
            }
        }
        let _ = writeln!(out, "\ncanonical 0-1 representative");
        for row in &self.canonical {
            let _ = writeln!(out, "  {}", join(row));
        }
        out
    }
}

pub(crate) fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(" ")
}
