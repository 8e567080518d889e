//! Gauss/Bruhat reduction: `A = L·P·U` with `L` lower triangular, `U` upper
//! triangular and `P` a permutation matrix, and the canonical 0-1
//! representatives of `P_-(β) \ GL(n) / P_+(α)`.

use crate::error::{Error, Result};
use crate::hinge::{standard_matrix, Composition, DimensionMatrix};
use crate::matrix::Matrix;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpuDecomposition {
    pub l: Matrix,
    pub perm: Matrix,
    pub u: Matrix,
}

/// Factors an invertible matrix as `l · perm · u`.
///
/// Rows are processed top to bottom. The leftmost nonzero entry of the
/// current row is a pivot; column operations clear the rest of that row and
/// row operations clear the rest of that column. What remains is a scaled
/// permutation matrix, whose scaling is moved into `u`.
#[allow(clippy::needless_range_loop)]
pub fn lpu(a: &Matrix) -> Result<LpuDecomposition> {
    if !a.is_square() {
        return Err(Error::Shape(format!(
            "LPU needs a square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    let f = a.field();
    let n = a.rows();
    let mut cur = a.clone();
    // Invariant: a = l_acc · cur · u_acc.
    let mut l_acc = Matrix::identity(f, n);
    let mut u_acc = Matrix::identity(f, n);
    let mut pivot_col = vec![usize::MAX; n];

    for r in 0..n {
        let Some(c) = (0..n).find(|&c| cur.entry(r, c) != 0) else {
            return Err(Error::Singular);
        };
        pivot_col[r] = c;
        let inv = f.inv(cur.entry(r, c))?;
        // col_k -= t·col_c  ⇒  u_acc: row_c += t·row_k.
        for k in c + 1..n {
            let t = f.mul(cur.entry(r, k), inv);
            if t == 0 {
                continue;
            }
            for rr in 0..n {
                let v = f.sub(cur.entry(rr, k), f.mul(t, cur.entry(rr, c)));
                cur.set(rr, k, v);
            }
            for cc in 0..n {
                let v = f.add(u_acc.entry(c, cc), f.mul(t, u_acc.entry(k, cc)));
                u_acc.set(c, cc, v);
            }
        }
        // row_k -= t·row_r  ⇒  l_acc: col_r += t·col_k.
        for k in r + 1..n {
            let t = f.mul(cur.entry(k, c), inv);
            if t == 0 {
                continue;
            }
            for cc in 0..n {
                let v = f.sub(cur.entry(k, cc), f.mul(t, cur.entry(r, cc)));
                cur.set(k, cc, v);
            }
            for rr in 0..n {
                let v = f.add(l_acc.entry(rr, r), f.mul(t, l_acc.entry(rr, k)));
                l_acc.set(rr, r, v);
            }
        }
    }

    let mut seen = vec![false; n];
    for &c in &pivot_col {
        if std::mem::replace(&mut seen[c], true) {
            return Err(Error::Singular);
        }
    }
    // cur = perm · diag(s); fold diag(s) into u.
    let mut perm = Matrix::zeros(f, n, n);
    let mut u = u_acc;
    for (r, &c) in pivot_col.iter().enumerate() {
        perm.set(r, c, 1);
        let s = cur.entry(r, c);
        for cc in 0..n {
            let v = f.mul(s, u.entry(c, cc));
            u.set(c, cc, v);
        }
    }
    debug_assert_eq!(perm, rank_profile_permutation(a));
    Ok(LpuDecomposition { l: l_acc, perm, u })
}

/// The permutation with a unit at `(i, j)` exactly when
/// `r(i,j) − r(i−1,j) − r(i,j−1) + r(i−1,j−1) = 1`, where `r(i, j)` is the
/// rank of the top-left `i × j` submatrix (1-based corners).
#[allow(clippy::needless_range_loop)]
pub fn rank_profile_permutation(a: &Matrix) -> Matrix {
    let n = a.rows();
    let m = a.cols();
    let mut r = vec![vec![0usize; m + 1]; n + 1];
    for i in 1..=n {
        for j in 1..=m {
            r[i][j] = a.submatrix(0..i, 0..j).rank();
        }
    }
    Matrix::from_fn(a.field(), n, m, |i, j| {
        let v = r[i + 1][j + 1] + r[i][j];
        u32::from(v == r[i][j + 1] + r[i + 1][j] + 1)
    })
}

/// `D_ij` = number of units of `perm` in column block `i` (of `α`) and row
/// block `j` (of `β`).
pub fn block_unit_counts(
    perm: &Matrix,
    alpha: &Composition,
    beta: &Composition,
) -> Result<DimensionMatrix> {
    let mut rows = vec![vec![0usize; beta.len()]; alpha.len()];
    for r in 0..perm.rows() {
        for c in 0..perm.cols() {
            if perm.entry(r, c) != 0 {
                rows[alpha.block_of(c)][beta.block_of(r)] += 1;
            }
        }
    }
    DimensionMatrix::new(rows, alpha.clone(), beta.clone())
}

/// Canonical 0-1 representative of `P_-(β)·a·P_+(α)`.
pub fn canonical_01(a: &Matrix, alpha: &Composition, beta: &Composition) -> Result<Matrix> {
    if a.is_square() && (alpha.n() != a.rows() || beta.n() != a.rows()) {
        return Err(Error::Margin(format!(
            "alpha sums to {}, beta to {}, n = {}",
            alpha.n(),
            beta.n(),
            a.rows()
        )));
    }
    let dec = lpu(a)?;
    let d = block_unit_counts(&dec.perm, alpha, beta)?;
    Ok(standard_matrix(&d, a.field()))
}
