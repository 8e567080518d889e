//! Bi-hinges: the complete invariant of the double cosets
//! `T_-(β) \ GL(n) / T_+(α)`.
//!
//! Conventions: vectors are columns and `y = A·x`. The columns of `A` are
//! grouped by `α` into the source blocks `V_1, …, V_p`, the rows by `β`
//! into the target blocks `W_1, …, W_q`. `T_+(α)` acts on the right and
//! `T_-(β)` on the left. Block indices are 0-based in the API; messages
//! and reports use 1-based indices.
//!
//! For an invertible `A`, the relation `χ_ij(A) : V_i ⇉ W_j` consists of the
//! pairs `(ξ, η)` for which some `x_1, …, x_{i-1}` and `y_{j+1}, …, y_q`
//! satisfy
//!
//! ```text
//!   (0, …, 0, η, y_{j+1}, …, y_q) = A · (x_1, …, x_{i-1}, ξ, 0, …, 0).
//! ```
//!
//! It is computed as the image of
//! `H = (V_1 ⊕ … ⊕ V_i) ∩ A⁻¹(W_j ⊕ … ⊕ W_q)` under `h ↦ (h_i, (A·h)_j)`.

use std::fmt;
use std::ops::Range;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::matrix::Matrix;
use crate::relation::LinearRelation;
use crate::subspace::Subspace;

/// Ordered block sizes `(α_1, …, α_p)`, all positive.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Composition {
    parts: Vec<usize>,
}

impl Composition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::Composition("no parts".into()));
        }
        if let Some(pos) = parts.iter().position(|&x| x == 0) {
            return Err(Error::Composition(format!("part {} is zero", pos + 1)));
        }
        Ok(Self { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Number of blocks.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn start(&self, block: usize) -> usize {
        self.parts[..block].iter().sum()
    }

    pub fn block(&self, block: usize) -> Range<usize> {
        let s = self.start(block);
        s..s + self.parts[block]
    }

    /// Coordinates of blocks `blocks.start .. blocks.end`.
    pub fn span(&self, blocks: Range<usize>) -> Range<usize> {
        if blocks.is_empty() {
            return 0..0;
        }
        self.start(blocks.start)..self.start(blocks.end - 1) + self.parts[blocks.end - 1]
    }

    /// Index of the block containing coordinate `coord`.
    pub fn block_of(&self, coord: usize) -> usize {
        let mut acc = 0;
        for (b, &size) in self.parts.iter().enumerate() {
            acc += size;
            if coord < acc {
                return b;
            }
        }
        panic!("coordinate {coord} outside a composition of {}", self.n());
    }

    /// All `2^(n-1)` compositions of `n`, in lexicographic order of parts.
    pub fn all(n: usize) -> Vec<Composition> {
        fn rec(rest: usize, cur: &mut Vec<usize>, out: &mut Vec<Composition>) {
            if rest == 0 {
                out.push(Composition { parts: cur.clone() });
                return;
            }
            for first in 1..=rest {
                cur.push(first);
                rec(rest - first, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if n > 0 {
            rec(n, &mut Vec::new(), &mut out);
        }
        out
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(usize::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A `p × q` table `d_ij` with row sums `α` and column sums `β`.
///
/// `d_ij` is the dimension of the refined blocks `V_i^j` and `W_j^i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DimensionMatrix {
    alpha: Composition,
    beta: Composition,
    d: Vec<usize>,
}

impl DimensionMatrix {
    pub fn new(rows: Vec<Vec<usize>>, alpha: Composition, beta: Composition) -> Result<Self> {
        let (p, q) = (alpha.len(), beta.len());
        if rows.len() != p || rows.iter().any(|r| r.len() != q) {
            return Err(Error::Margin(format!("dimension table must be {p}x{q}")));
        }
        for (i, row) in rows.iter().enumerate() {
            let s: usize = row.iter().sum();
            if s != alpha.parts()[i] {
                return Err(Error::Margin(format!(
                    "row {} sums to {s}, alpha_{} = {}",
                    i + 1,
                    i + 1,
                    alpha.parts()[i]
                )));
            }
        }
        for j in 0..q {
            let s: usize = rows.iter().map(|r| r[j]).sum();
            if s != beta.parts()[j] {
                return Err(Error::Margin(format!(
                    "column {} sums to {s}, beta_{} = {}",
                    j + 1,
                    j + 1,
                    beta.parts()[j]
                )));
            }
        }
        Ok(Self {
            alpha,
            beta,
            d: rows.into_iter().flatten().collect(),
        })
    }

    pub fn alpha(&self) -> &Composition {
        &self.alpha
    }

    pub fn beta(&self) -> &Composition {
        &self.beta
    }

    pub fn get(&self, i: usize, j: usize) -> usize {
        self.d[i * self.beta.len() + j]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.d
            .chunks(self.beta.len())
            .map(<[usize]>::to_vec)
            .collect()
    }

    /// Offset of `V_i^j` inside `V_i`.
    pub fn v_offset(&self, i: usize, j: usize) -> usize {
        (0..j).map(|jj| self.get(i, jj)).sum()
    }

    /// Offset of `W_j^i` inside `W_j`.
    pub fn w_offset(&self, j: usize, i: usize) -> usize {
        (0..i).map(|ii| self.get(ii, j)).sum()
    }
}

/// One failed equality among the bi-hinge axioms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomViolation {
    /// 0-based cell indices.
    pub i: usize,
    pub j: usize,
    pub message: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AxiomReport {
    pub violations: Vec<AxiomViolation>,
}

impl AxiomReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let msgs: Vec<&str> = self.violations.iter().map(|v| v.message.as_str()).collect();
        write!(f, "{}", msgs.join("; "))
    }
}

fn subscript(indices: &[usize]) -> String {
    const DIGITS: [char; 10] = ['₀', '₁', '₂', '₃', '₄', '₅', '₆', '₇', '₈', '₉'];
    let sep = if indices.iter().any(|&k| k >= 10) {
        ","
    } else {
        ""
    };
    indices
        .iter()
        .map(|k| {
            k.to_string()
                .chars()
                .map(|c| DIGITS[c as usize - '0' as usize])
                .collect::<String>()
        })
        .collect::<Vec<_>>()
        .join(sep)
}

/// Cached canonical subspaces of one relation.
struct CellSpaces {
    ker: Subspace,
    dom: Subspace,
    im: Subspace,
    indef: Subspace,
}

impl CellSpaces {
    fn of(l: &LinearRelation) -> Self {
        Self {
            ker: l.ker(),
            dom: l.dom(),
            im: l.im(),
            indef: l.indef(),
        }
    }
}

/// The transforms found by [`BiHinge::normalize`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Normalization {
    pub g: Vec<Matrix>,
    pub h: Vec<Matrix>,
    pub dims: DimensionMatrix,
}

/// A `p × q` grid of relations `χ_ij : V_i ⇉ W_j`.
///
/// Construction only validates shapes; [`BiHinge::check_axioms`] decides
/// whether the grid is a genuine bi-hinge.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BiHinge {
    alpha: Composition,
    beta: Composition,
    grid: Vec<LinearRelation>,
}

impl BiHinge {
    /// `grid` is row-major: cell `(i, j)` at index `i * q + j`.
    pub fn new(alpha: Composition, beta: Composition, grid: Vec<LinearRelation>) -> Result<Self> {
        let (p, q) = (alpha.len(), beta.len());
        if grid.len() != p * q {
            return Err(Error::Shape(format!(
                "{} relations for a {p}x{q} grid",
                grid.len()
            )));
        }
        for (k, cell) in grid.iter().enumerate() {
            let (i, j) = (k / q, k % q);
            if cell.dim_x() != alpha.parts()[i] || cell.dim_y() != beta.parts()[j] {
                return Err(Error::Shape(format!(
                    "cell ({}, {}) is {} ⇉ {}, expected {} ⇉ {}",
                    i + 1,
                    j + 1,
                    cell.dim_x(),
                    cell.dim_y(),
                    alpha.parts()[i],
                    beta.parts()[j]
                )));
            }
            if cell.field() != grid[0].field() {
                return Err(Error::FieldMismatch(
                    grid[0].field().modulus(),
                    cell.field().modulus(),
                ));
            }
        }
        Ok(Self { alpha, beta, grid })
    }

    pub fn alpha(&self) -> &Composition {
        &self.alpha
    }

    pub fn beta(&self) -> &Composition {
        &self.beta
    }

    pub fn p(&self) -> usize {
        self.alpha.len()
    }

    pub fn q(&self) -> usize {
        self.beta.len()
    }

    pub fn field(&self) -> PrimeField {
        self.grid[0].field()
    }

    pub fn cell(&self, i: usize, j: usize) -> &LinearRelation {
        &self.grid[i * self.q() + j]
    }

    pub fn cells(&self) -> &[LinearRelation] {
        &self.grid
    }

    fn spaces(&self) -> Vec<CellSpaces> {
        self.grid.iter().map(CellSpaces::of).collect()
    }

    pub fn check_axioms(&self) -> AxiomReport {
        self.check_axioms_with(&self.spaces())
    }

    fn check_axioms_with(&self, spaces: &[CellSpaces]) -> AxiomReport {
        let (p, q) = (self.p(), self.q());
        let at = |i: usize, j: usize| &spaces[i * q + j];
        let mut violations = Vec::new();
        let mut fail = |i: usize, j: usize, message: String| {
            violations.push(AxiomViolation { i, j, message });
        };
        for i in 0..p {
            for j in 0..q {
                let c = at(i, j);
                let ij = subscript(&[i + 1, j + 1]);
                if j + 1 < q && c.ker != at(i, j + 1).dom {
                    fail(
                        i,
                        j,
                        format!("ker χ{ij} ≠ dom χ{}", subscript(&[i + 1, j + 2])),
                    );
                }
                if i + 1 < p && c.im != at(i + 1, j).indef {
                    fail(
                        i,
                        j,
                        format!("im χ{ij} ≠ indef χ{}", subscript(&[i + 2, j + 1])),
                    );
                }
                if i == 0 && !c.indef.is_zero() {
                    fail(i, j, format!("indef χ{ij} ≠ 0"));
                }
                if i + 1 == p && !c.im.is_full() {
                    fail(i, j, format!("im χ{ij} ≠ W{}", subscript(&[j + 1])));
                }
                if j + 1 == q && !c.ker.is_zero() {
                    fail(i, j, format!("ker χ{ij} ≠ 0"));
                }
                if j == 0 && !c.dom.is_full() {
                    fail(i, j, format!("dom χ{ij} ≠ V{}", subscript(&[i + 1])));
                }
            }
        }
        AxiomReport { violations }
    }

    /// `d_ij = dim dom χ_ij − dim ker χ_ij`. Fails unless the axioms hold;
    /// also checks that `d_ij = dim im χ_ij − dim indef χ_ij`.
    pub fn dimension_matrix(&self) -> Result<DimensionMatrix> {
        self.dimension_matrix_with(&self.spaces())
    }

    fn dimension_matrix_with(&self, spaces: &[CellSpaces]) -> Result<DimensionMatrix> {
        let report = self.check_axioms_with(spaces);
        if !report.is_ok() {
            return Err(Error::Axioms(report.to_string()));
        }
        let q = self.q();
        let mut rows = vec![vec![0; q]; self.p()];
        for (k, c) in spaces.iter().enumerate() {
            let (i, j) = (k / q, k % q);
            let left = c.dom.dim() - c.ker.dim();
            let right = c.im.dim() - c.indef.dim();
            if left != right {
                return Err(Error::InvariantViolation(format!(
                    "cell ({}, {}): dim dom − dim ker = {left} but dim im − dim indef = {right}",
                    i + 1,
                    j + 1
                )));
            }
            rows[i][j] = left;
        }
        DimensionMatrix::new(rows, self.alpha.clone(), self.beta.clone())
    }

    /// The standard bi-hinge of a dimension table.
    ///
    /// `V_i` splits into consecutive coordinate blocks `V_i^1, …, V_i^q` and
    /// `W_j` into `W_j^1, …, W_j^p`. Then `ker χ_ij = V_i^{j+1} ⊕ … ⊕ V_i^q`,
    /// `dom χ_ij = V_i^j ⊕ ker χ_ij`, `indef χ_ij = W_j^1 ⊕ … ⊕ W_j^{i-1}`,
    /// `im χ_ij = indef χ_ij ⊕ W_j^i`, and `Θ` is the coordinate identity
    /// `V_i^j → W_j^i`.
    pub fn standard(d: &DimensionMatrix, field: PrimeField) -> BiHinge {
        let (alpha, beta) = (d.alpha(), d.beta());
        let (p, q) = (alpha.len(), beta.len());
        let mut grid = Vec::with_capacity(p * q);
        for i in 0..p {
            for j in 0..q {
                let dx = alpha.parts()[i];
                let dy = beta.parts()[j];
                let mut gens: Vec<Vec<u32>> = Vec::new();
                let unit = |pos: usize| {
                    let mut v = vec![0u32; dx + dy];
                    v[pos] = 1;
                    v
                };
                for jj in j + 1..q {
                    let off = d.v_offset(i, jj);
                    gens.extend((0..d.get(i, jj)).map(|k| unit(off + k)));
                }
                let (vo, wo) = (d.v_offset(i, j), d.w_offset(j, i));
                for k in 0..d.get(i, j) {
                    let mut v = unit(vo + k);
                    v[dx + wo + k] = 1;
                    gens.push(v);
                }
                for ii in 0..i {
                    let off = d.w_offset(j, ii);
                    gens.extend((0..d.get(ii, j)).map(|k| unit(dx + off + k)));
                }
                let data: Vec<u32> = gens.iter().flatten().copied().collect();
                let m = Matrix::from_data(field, gens.len(), dx + dy, data)
                    .expect("generator rows have uniform width");
                grid.push(LinearRelation::from_generators(dx, dy, &m).expect("width is dx + dy"));
            }
        }
        BiHinge {
            alpha: alpha.clone(),
            beta: beta.clone(),
            grid,
        }
    }

    /// Componentwise action `χ_ij ↦ (g_i × h_j)(χ_ij)` of
    /// `∏ GL(V_i) × ∏ GL(W_j)`.
    pub fn act(&self, g: &[Matrix], h: &[Matrix]) -> Result<BiHinge> {
        self.check_factors(g, h)?;
        self.act_unchecked(g, h)
    }

    fn check_factors(&self, g: &[Matrix], h: &[Matrix]) -> Result<()> {
        if g.len() != self.p() || h.len() != self.q() {
            return Err(Error::Shape(format!(
                "need {} source and {} target transforms, got {} and {}",
                self.p(),
                self.q(),
                g.len(),
                h.len()
            )));
        }
        for (m, &size) in g
            .iter()
            .zip(self.alpha.parts())
            .chain(h.iter().zip(self.beta.parts()))
        {
            if m.rows() != size || m.cols() != size {
                return Err(Error::Shape(format!(
                    "transform is {}x{}, block has size {size}",
                    m.rows(),
                    m.cols()
                )));
            }
            if !m.is_invertible() {
                return Err(Error::Singular);
            }
        }
        Ok(())
    }

    pub(crate) fn act_unchecked(&self, g: &[Matrix], h: &[Matrix]) -> Result<BiHinge> {
        let q = self.q();
        let grid = self
            .grid
            .iter()
            .enumerate()
            .map(|(k, c)| c.act_unchecked(&g[k / q], &h[k % q]))
            .collect::<Result<Vec<_>>>()?;
        Ok(BiHinge {
            alpha: self.alpha.clone(),
            beta: self.beta.clone(),
            grid,
        })
    }

    /// Finds `g`, `h` with `self.act(g, h) == BiHinge::standard(dims)`.
    ///
    /// In each `V_i` the flag `dom χ_i1 ⊇ ker χ_i1 = dom χ_i2 ⊇ … ⊇ 0` gets an
    /// adapted basis from the pivot-completion rows of each `dom/ker`
    /// step; `g_i` maps it to the coordinate layout. In each `W_j` the basis
    /// is pushed forward from those rows through `Θ(χ_ij)` for
    /// `i = 1, …, p`, which aligns the `indef/im` flag and makes every `Θ`
    /// the identity at once.
    pub fn normalize(&self) -> Result<Normalization> {
        let spaces = self.spaces();
        let dims = self.dimension_matrix_with(&spaces)?;
        let (p, q) = (self.p(), self.q());
        let field = self.field();

        let mut reps: Vec<Vec<Vec<Vec<u32>>>> = vec![Vec::with_capacity(q); p];
        let mut g = Vec::with_capacity(p);
        for (i, reps_i) in reps.iter_mut().enumerate() {
            let mut columns = Vec::new();
            for j in 0..q {
                let c = &spaces[i * q + j];
                let block = c.dom.complement_rows(&c.ker);
                columns.extend(block.iter().cloned());
                reps_i.push(block);
            }
            g.push(basis_change(field, self.alpha.parts()[i], &columns)?);
        }

        let mut h = Vec::with_capacity(q);
        for j in 0..q {
            let mut columns = Vec::new();
            for (i, reps_i) in reps.iter().enumerate() {
                let cell = self.cell(i, j);
                let indef = &spaces[i * q + j].indef;
                for xi in &reps_i[j] {
                    columns.push(indef.reduce(&cell.partner(xi)?));
                }
            }
            h.push(basis_change(field, self.beta.parts()[j], &columns)?);
        }
        Ok(Normalization { g, h, dims })
    }
}

/// Inverse of the matrix whose columns are `columns`.
fn basis_change(field: PrimeField, size: usize, columns: &[Vec<u32>]) -> Result<Matrix> {
    if columns.len() != size {
        return Err(Error::InvariantViolation(format!(
            "adapted basis has {} vectors in dimension {size}",
            columns.len()
        )));
    }
    Matrix::from_fn(field, size, size, |r, c| columns[c][r])
        .inverse()
        .map_err(|_| Error::InvariantViolation("adapted basis is not a basis".into()))
}

fn check_problem(a: &Matrix, alpha: &Composition, beta: &Composition) -> Result<()> {
    if !a.is_square() {
        return Err(Error::Shape(format!(
            "matrix is {}x{}, expected square",
            a.rows(),
            a.cols()
        )));
    }
    let n = a.rows();
    if alpha.n() != n {
        return Err(Error::Margin(format!(
            "alpha sums to {}, n = {n}",
            alpha.n()
        )));
    }
    if beta.n() != n {
        return Err(Error::Margin(format!("beta sums to {}, n = {n}", beta.n())));
    }
    if !a.is_invertible() {
        return Err(Error::Singular);
    }
    Ok(())
}

/// The bi-hinge `χ(A)` of an invertible matrix.
pub fn chi(a: &Matrix, alpha: &Composition, beta: &Composition) -> Result<BiHinge> {
    check_problem(a, alpha, beta)?;
    chi_unchecked(a, alpha, beta)
}

/// [`chi`] for inputs already known to be valid.
pub(crate) fn chi_unchecked(
    a: &Matrix,
    alpha: &Composition,
    beta: &Composition,
) -> Result<BiHinge> {
    let field = a.field();
    let n = a.rows();
    let (p, q) = (alpha.len(), beta.len());

    let preimages = (0..q)
        .map(|j| {
            let coords: Vec<usize> = beta.span(j..q).collect();
            Subspace::coordinate(field, n, &coords)?.preimage(a)
        })
        .collect::<Result<Vec<_>>>()?;

    let mut grid = Vec::with_capacity(p * q);
    for i in 0..p {
        let prefix: Vec<usize> = alpha.span(0..i + 1).collect();
        let v_prefix = Subspace::coordinate(field, n, &prefix)?;
        let (xs, dx) = (alpha.block(i), alpha.parts()[i]);
        for (j, pre) in preimages.iter().enumerate() {
            let h = v_prefix.intersect(pre)?;
            let (ys, dy) = (beta.block(j), beta.parts()[j]);
            let mut data = Vec::with_capacity(h.dim() * (dx + dy));
            for r in 0..h.dim() {
                let v = h.basis().row(r);
                let av = a.apply(v)?;
                data.extend_from_slice(&v[xs.clone()]);
                data.extend_from_slice(&av[ys.clone()]);
            }
            let gens = Matrix::from_data(field, h.dim(), dx + dy, data)?;
            grid.push(LinearRelation::from_generators(dx, dy, &gens)?);
        }
    }
    Ok(BiHinge {
        alpha: alpha.clone(),
        beta: beta.clone(),
        grid,
    })
}

/// The 0-1 matrix sending each `V_i^j` coordinate-wise onto `W_j^i`.
pub fn standard_matrix(d: &DimensionMatrix, field: PrimeField) -> Matrix {
    let (alpha, beta) = (d.alpha(), d.beta());
    let n = alpha.n();
    let mut m = Matrix::zeros(field, n, n);
    for i in 0..alpha.len() {
        for j in 0..beta.len() {
            let col = alpha.start(i) + d.v_offset(i, j);
            let row = beta.start(j) + d.w_offset(j, i);
            for k in 0..d.get(i, j) {
                m.set(row + k, col + k, 1);
            }
        }
    }
    m
}

/// Whether `a` and `b` lie in the same double coset `T_-(β)·a·T_+(α)`.
pub fn equivalent(a: &Matrix, b: &Matrix, alpha: &Composition, beta: &Composition) -> Result<bool> {
    if a.field() != b.field() {
        return Err(Error::FieldMismatch(
            a.field().modulus(),
            b.field().modulus(),
        ));
    }
    Ok(chi(a, alpha, beta)? == chi(b, alpha, beta)?)
}
