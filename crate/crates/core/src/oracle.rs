//! Brute-force ground truth over small prime fields: exhaustive enumeration
//! of groups, subspaces, double cosets, bi-hinges and stabilizers, plus the
//! closed-form counts that the enumerations are checked against.
//!
//! Every enumeration is sized before it starts and fails with
//! [`Error::Budget`] instead of running past its [`EnumerationBudget`].

use std::collections::{HashMap, HashSet, VecDeque};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::hinge::{chi_unchecked, BiHinge, Composition, DimensionMatrix};
use crate::matrix::Matrix;
use crate::relation::LinearRelation;
use crate::subspace::Subspace;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationBudget {
    /// Largest group (or product of groups) that may be listed.
    pub max_group_order: u128,
    /// Largest number of subspaces, or of candidate relation grids, that may
    /// be listed.
    pub max_subspace_candidates: u128,
}

impl Default for EnumerationBudget {
    fn default() -> Self {
        Self {
            max_group_order: 10_000_000,
            max_subspace_candidates: 1_000_000,
        }
    }
}

impl EnumerationBudget {
    /// The same limit for groups and for subspace candidates.
    pub fn uniform(limit: u128) -> Self {
        Self {
            max_group_order: limit,
            max_subspace_candidates: limit,
        }
    }

    fn check_group(&self, what: impl FnOnce() -> String, cardinality: u128) -> Result<()> {
        if cardinality > self.max_group_order {
            return Err(Error::Budget {
                what: what(),
                cardinality,
                budget: self.max_group_order,
            });
        }
        Ok(())
    }

    fn check_subspaces(&self, what: impl FnOnce() -> String, cardinality: u128) -> Result<()> {
        if cardinality > self.max_subspace_candidates {
            return Err(Error::Budget {
                what: what(),
                cardinality,
                budget: self.max_subspace_candidates,
            });
        }
        Ok(())
    }
}

fn checked_pow(q: u64, e: usize, what: &str) -> Result<u128> {
    u32::try_from(e)
        .ok()
        .and_then(|e| (q as u128).checked_pow(e))
        .ok_or_else(|| Error::Overflow(what.to_string()))
}

fn checked_mul(a: u128, b: u128, what: &str) -> Result<u128> {
    a.checked_mul(b)
        .ok_or_else(|| Error::Overflow(what.to_string()))
}

/// `|GL(m, q)| = ∏_{k<m} (q^m − q^k)`.
pub fn gl_order(m: usize, q: u64) -> Result<u128> {
    let qm = checked_pow(q, m, "|GL(m, q)|")?;
    let mut acc = 1u128;
    for k in 0..m {
        acc = checked_mul(acc, qm - checked_pow(q, k, "|GL(m, q)|")?, "|GL(m, q)|")?;
    }
    Ok(acc)
}

/// Number of `k`-dimensional subspaces of GF(q)^n.
pub fn gaussian_binomial(n: usize, k: usize, q: u64) -> Result<u128> {
    if k > n {
        return Ok(0);
    }
    let mut num = 1u128;
    let mut den = 1u128;
    for i in 0..k {
        num = checked_mul(
            num,
            checked_pow(q, n - i, "gaussian binomial")? - 1,
            "gaussian binomial",
        )?;
        den = checked_mul(
            den,
            checked_pow(q, i + 1, "gaussian binomial")? - 1,
            "gaussian binomial",
        )?;
    }
    Ok(num / den)
}

/// Number of subspaces of GF(q)^d.
pub fn subspace_count(d: usize, q: u64) -> Result<u128> {
    (0..=d).try_fold(0u128, |acc, k| {
        acc.checked_add(gaussian_binomial(d, k, q)?)
            .ok_or_else(|| Error::Overflow("subspace count".into()))
    })
}

/// Fixed-width key of a matrix: its row-major entries read as base-p digits,
/// first entry most significant.
pub fn matrix_key(m: &Matrix) -> Result<u128> {
    let p = m.field().modulus() as u128;
    checked_pow(p as u64, m.data().len(), "matrix key width")?;
    Ok(m.data().iter().fold(0u128, |acc, &v| acc * p + v as u128))
}

/// All of `GL(n, p)`, built column by column: each new column runs over
/// GF(p)^n in lexicographic order, skipping the span of earlier columns.
pub fn enum_gl(n: usize, field: PrimeField, budget: &EnumerationBudget) -> Result<Vec<Matrix>> {
    let q = field.modulus() as u64;
    let order = gl_order(n, q)?;
    budget.check_group(|| format!("GL({n}, {q})"), order)?;
    let vectors = all_vectors(field, n);
    let mut out = Vec::with_capacity(order as usize);
    let mut columns: Vec<Vec<u32>> = Vec::with_capacity(n);

    fn rec(
        field: PrimeField,
        n: usize,
        vectors: &[Vec<u32>],
        columns: &mut Vec<Vec<u32>>,
        out: &mut Vec<Matrix>,
    ) {
        if columns.len() == n {
            out.push(Matrix::from_fn(field, n, n, |r, c| columns[c][r]));
            return;
        }
        let data: Vec<u32> = columns.iter().flatten().copied().collect();
        let span = Subspace::from_generators(
            n,
            &Matrix::from_data(field, columns.len(), n, data).expect("columns have length n"),
        )
        .expect("width n");
        for v in vectors {
            if !span.contains(v) {
                columns.push(v.clone());
                rec(field, n, vectors, columns, out);
                columns.pop();
            }
        }
    }

    rec(field, n, &vectors, &mut columns, &mut out);
    Ok(out)
}

fn all_vectors(field: PrimeField, n: usize) -> Vec<Vec<u32>> {
    let p = field.modulus();
    let mut out = Vec::new();
    let mut v = vec![0u32; n];
    loop {
        out.push(v.clone());
        if !odometer(&mut v, p) {
            return out;
        }
    }
}

/// Advances `digits` as a base-`p` counter (last digit fastest); returns
/// `false` after wrapping around to all zeros.
fn odometer(digits: &mut [u32], p: u32) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < p {
            return true;
        }
        *d = 0;
    }
    false
}

fn unitriangular(
    comp: &Composition,
    field: PrimeField,
    budget: &EnumerationBudget,
    upper: bool,
    name: &str,
) -> Result<Vec<Matrix>> {
    let n = comp.n();
    let free: Vec<(usize, usize)> = (0..n)
        .flat_map(|r| (0..n).map(move |c| (r, c)))
        .filter(|&(r, c)| {
            let (br, bc) = (comp.block_of(r), comp.block_of(c));
            if upper {
                br < bc
            } else {
                br > bc
            }
        })
        .collect();
    let q = field.modulus() as u64;
    let order = checked_pow(q, free.len(), name)?;
    budget.check_group(|| format!("{name}{comp} over GF({q})"), order)?;
    let mut out = Vec::with_capacity(order as usize);
    let mut digits = vec![0u32; free.len()];
    loop {
        let mut m = Matrix::identity(field, n);
        for (&(r, c), &v) in free.iter().zip(&digits) {
            m.set(r, c, v);
        }
        out.push(m);
        if !odometer(&mut digits, field.modulus()) {
            return Ok(out);
        }
    }
}

/// All of `T_+(α)`.
pub fn enum_t_plus(
    alpha: &Composition,
    field: PrimeField,
    budget: &EnumerationBudget,
) -> Result<Vec<Matrix>> {
    unitriangular(alpha, field, budget, true, "T_+")
}

/// All of `T_-(β)`.
pub fn enum_t_minus(
    beta: &Composition,
    field: PrimeField,
    budget: &EnumerationBudget,
) -> Result<Vec<Matrix>> {
    unitriangular(beta, field, budget, false, "T_-")
}

/// All subspaces of GF(p)^d, by dimension, then pivot set in lexicographic
/// order, then free entries.
pub fn enum_subspaces(
    d: usize,
    field: PrimeField,
    budget: &EnumerationBudget,
) -> Result<Vec<Subspace>> {
    let q = field.modulus() as u64;
    let total = subspace_count(d, q)?;
    budget.check_subspaces(|| format!("subspaces of GF({q})^{d}"), total)?;
    let mut out = Vec::with_capacity(total as usize);
    for k in 0..=d {
        for pivots in combinations(d, k) {
            let free: Vec<(usize, usize)> = pivots
                .iter()
                .enumerate()
                .flat_map(|(r, &pc)| {
                    let pivots = &pivots;
                    (pc + 1..d)
                        .filter(move |c| !pivots.contains(c))
                        .map(move |c| (r, c))
                })
                .collect();
            let mut digits = vec![0u32; free.len()];
            loop {
                let mut basis = Matrix::zeros(field, k, d);
                for (r, &pc) in pivots.iter().enumerate() {
                    basis.set(r, pc, 1);
                }
                for (&(r, c), &v) in free.iter().zip(&digits) {
                    basis.set(r, c, v);
                }
                out.push(Subspace::from_generators(d, &basis)?);
                if !odometer(&mut digits, field.modulus()) {
                    break;
                }
            }
        }
    }
    debug_assert_eq!(out.len() as u128, total);
    Ok(out)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// The double cosets `T_-(β)·A·T_+(α)` partitioning `GL(n, p)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetPartition {
    pub modulus: u32,
    pub alpha: Composition,
    pub beta: Composition,
    /// Each class lists its members in discovery order; classes are ordered
    /// by their first member in the enumeration order of [`enum_gl`].
    pub classes: Vec<Vec<Matrix>>,
}

impl CosetPartition {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }
}

/// Brute-force double cosets by closure: starting from each unvisited
/// element, breadth-first search under right multiplication by the
/// elementary generators `1 + E_rs` of `T_+(α)` (column operations) and
/// left multiplication by those of `T_-(β)` (row operations).
pub fn double_cosets_brute(
    n: usize,
    field: PrimeField,
    alpha: &Composition,
    beta: &Composition,
    budget: &EnumerationBudget,
) -> Result<CosetPartition> {
    let group = enum_gl(n, field, budget)?;
    double_cosets_of(&group, field, alpha, beta)
}

/// [`double_cosets_brute`] over an already enumerated `GL(n, p)`.
pub fn double_cosets_of(
    group: &[Matrix],
    field: PrimeField,
    alpha: &Composition,
    beta: &Composition,
) -> Result<CosetPartition> {
    let n = group.first().map_or(0, Matrix::rows);
    if alpha.n() != n || beta.n() != n {
        return Err(Error::Margin(format!(
            "alpha sums to {}, beta to {}, n = {n}",
            alpha.n(),
            beta.n()
        )));
    }
    let f = field;
    // (target, source): col_target += col_source, resp. row_target += row_source.
    let col_ops: Vec<(usize, usize)> = pairs(n)
        .filter(|&(s, t)| alpha.block_of(s) < alpha.block_of(t))
        .map(|(s, t)| (t, s))
        .collect();
    let row_ops: Vec<(usize, usize)> = pairs(n)
        .filter(|&(t, s)| beta.block_of(t) > beta.block_of(s))
        .collect();

    let mut visited: HashMap<u128, usize> = HashMap::with_capacity(group.len());
    let mut classes: Vec<Vec<Matrix>> = Vec::new();
    for start in group {
        let key = matrix_key(start)?;
        if visited.contains_key(&key) {
            continue;
        }
        let id = classes.len();
        visited.insert(key, id);
        let mut members = Vec::new();
        let mut queue = VecDeque::from([start.clone()]);
        while let Some(m) = queue.pop_front() {
            for &(t, s) in &col_ops {
                let mut next = m.clone();
                for r in 0..n {
                    next.set(r, t, f.add(m.entry(r, t), m.entry(r, s)));
                }
                if visited.insert(matrix_key(&next)?, id).is_none() {
                    queue.push_back(next);
                }
            }
            for &(t, s) in &row_ops {
                let mut next = m.clone();
                for c in 0..n {
                    next.set(t, c, f.add(m.entry(t, c), m.entry(s, c)));
                }
                if visited.insert(matrix_key(&next)?, id).is_none() {
                    queue.push_back(next);
                }
            }
            members.push(m);
        }
        classes.push(members);
    }
    Ok(CosetPartition {
        modulus: field.modulus(),
        alpha: alpha.clone(),
        beta: beta.clone(),
        classes,
    })
}

fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |a| (0..n).map(move |b| (a, b)))
}

/// Every grid of relations `V_i ⇉ W_j` satisfying the bi-hinge axioms.
///
/// The candidate space is the product over cells of all subspaces of
/// `V_i ⊕ W_j`; its size is checked against the budget. The search
/// assigns cells row by row and discards a partial grid as soon as an
/// axiom between two assigned cells fails, which yields the same set as
/// filtering the full product.
pub fn all_bihinges_brute(
    alpha: &Composition,
    beta: &Composition,
    field: PrimeField,
    budget: &EnumerationBudget,
) -> Result<Vec<BiHinge>> {
    let (p, q) = (alpha.len(), beta.len());
    let qq = field.modulus() as u64;
    let mut candidates = 1u128;
    for &a in alpha.parts() {
        for &b in beta.parts() {
            candidates = candidates.saturating_mul(subspace_count(a + b, qq)?);
        }
    }
    budget.check_subspaces(
        || format!("relation grids for alpha = {alpha}, beta = {beta} over GF({qq})"),
        candidates,
    )?;

    struct Candidate {
        rel: LinearRelation,
        ker: Subspace,
        dom: Subspace,
        im: Subspace,
        indef: Subspace,
    }
    let mut per_cell: Vec<Vec<Candidate>> = Vec::with_capacity(p * q);
    for &a in alpha.parts() {
        for &b in beta.parts() {
            let cell = enum_subspaces(a + b, field, budget)?
                .into_iter()
                .map(|s| {
                    let rel = LinearRelation::new(a, b, s).expect("ambient is a + b");
                    Candidate {
                        ker: rel.ker(),
                        dom: rel.dom(),
                        im: rel.im(),
                        indef: rel.indef(),
                        rel,
                    }
                })
                .collect();
            per_cell.push(cell);
        }
    }

    let fits = |choice: &[usize], k: usize, c: &Candidate| -> bool {
        let (i, j) = (k / q, k % q);
        (j > 0 || c.dom.is_full())
            && (j + 1 < q || c.ker.is_zero())
            && (i > 0 || c.indef.is_zero())
            && (i + 1 < p || c.im.is_full())
            && (j == 0 || per_cell[k - 1][choice[k - 1]].ker == c.dom)
            && (i == 0 || per_cell[k - q][choice[k - q]].im == c.indef)
    };

    let mut out = Vec::new();
    let mut choice: Vec<usize> = Vec::with_capacity(p * q);
    let mut next = 0usize;
    loop {
        let k = choice.len();
        if k == p * q {
            let grid = choice
                .iter()
                .enumerate()
                .map(|(kk, &idx)| per_cell[kk][idx].rel.clone())
                .collect();
            let h = BiHinge::new(alpha.clone(), beta.clone(), grid)?;
            debug_assert!(h.check_axioms().is_ok());
            out.push(h);
        } else if let Some(idx) =
            (next..per_cell[k].len()).find(|&idx| fits(&choice, k, &per_cell[k][idx]))
        {
            choice.push(idx);
            next = 0;
            continue;
        }
        // Backtrack.
        match choice.pop() {
            Some(idx) => next = idx + 1,
            None => return Ok(out),
        }
    }
}

/// Every `p × q` table of nonnegative integers with row sums `α` and
/// column sums `β`, in lexicographic row-major order.
pub fn contingency_tables(alpha: &Composition, beta: &Composition) -> Vec<DimensionMatrix> {
    let (p, q) = (alpha.len(), beta.len());
    if alpha.n() != beta.n() {
        return Vec::new();
    }
    fn rec(
        k: usize,
        p: usize,
        q: usize,
        rows: &mut [usize],
        cols: &mut [usize],
        cells: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if k == p * q {
            if rows.iter().chain(cols.iter()).all(|&r| r == 0) {
                out.push(cells.clone());
            }
            return;
        }
        let (i, j) = (k / q, k % q);
        let lo = if j + 1 == q { rows[i] } else { 0 };
        let hi = rows[i].min(cols[j]);
        for v in lo..=hi {
            rows[i] -= v;
            cols[j] -= v;
            cells.push(v);
            rec(k + 1, p, q, rows, cols, cells, out);
            cells.pop();
            rows[i] += v;
            cols[j] += v;
        }
    }
    let mut raw = Vec::new();
    rec(
        0,
        p,
        q,
        &mut alpha.parts().to_vec(),
        &mut beta.parts().to_vec(),
        &mut Vec::new(),
        &mut raw,
    );
    raw.into_iter()
        .map(|cells| {
            let rows = cells.chunks(q).map(<[usize]>::to_vec).collect();
            DimensionMatrix::new(rows, alpha.clone(), beta.clone())
                .expect("margins hold by construction")
        })
        .collect()
}

/// Order of the stabilizer of the standard bi-hinge of `d` in
/// `∏ GL(V_i) × ∏ GL(W_j)`: a reductive part `∏ GL(d_ij)` times unipotent
/// parts of dimension `Σ_i Σ_{j<j'} d_ij d_ij'` and `Σ_j Σ_{i<i'} d_ij d_i'j`.
pub fn stab_order_formula(d: &DimensionMatrix, q: u64) -> Result<u128> {
    let (p, qq) = (d.alpha().len(), d.beta().len());
    let mut acc = 1u128;
    let mut unipotent = 0usize;
    for i in 0..p {
        for j in 0..qq {
            acc = checked_mul(acc, gl_order(d.get(i, j), q)?, "stabilizer order")?;
            for jj in j + 1..qq {
                unipotent += d.get(i, j) * d.get(i, jj);
            }
            for ii in i + 1..p {
                unipotent += d.get(i, j) * d.get(ii, j);
            }
        }
    }
    checked_mul(
        acc,
        checked_pow(q, unipotent, "stabilizer order")?,
        "stabilizer order",
    )
}

/// `|∏ GL(α_i, q)| · |∏ GL(β_j, q)|`.
pub fn levi_order(alpha: &Composition, beta: &Composition, q: u64) -> Result<u128> {
    alpha
        .parts()
        .iter()
        .chain(beta.parts())
        .try_fold(1u128, |acc, &m| {
            checked_mul(acc, gl_order(m, q)?, "Levi order")
        })
}

/// Number of double cosets `T_-(β) \ GL(n, q) / T_+(α)` by orbit-stabilizer:
/// the sum over dimension tables `D` of `levi_order / stab_order_formula(D)`.
pub fn predicted_coset_count(alpha: &Composition, beta: &Composition, q: u64) -> Result<u128> {
    if alpha.n() != beta.n() {
        return Err(Error::Margin(format!(
            "alpha sums to {}, beta sums to {}",
            alpha.n(),
            beta.n()
        )));
    }
    let levi = levi_order(alpha, beta, q)?;
    let mut total = 0u128;
    for d in contingency_tables(alpha, beta) {
        let stab = stab_order_formula(&d, q)?;
        if levi % stab != 0 {
            return Err(Error::InvariantViolation(format!(
                "stabilizer order {stab} does not divide {levi} for {:?}",
                d.rows()
            )));
        }
        total = total
            .checked_add(levi / stab)
            .ok_or_else(|| Error::Overflow("coset count".into()))?;
    }
    Ok(total)
}

/// Stabilizer order and orbit size of the standard bi-hinge of `d` under
/// `∏ GL(V_i) × ∏ GL(W_j)`, both by exhaustive search.
pub fn stabilizer_and_orbit_brute(
    d: &DimensionMatrix,
    field: PrimeField,
    budget: &EnumerationBudget,
) -> Result<(u128, u128)> {
    let q = field.modulus() as u64;
    let levi = levi_order(d.alpha(), d.beta(), q)?;
    budget.check_group(
        || {
            format!(
                "∏GL(alpha) × ∏GL(beta) for alpha = {}, beta = {}",
                d.alpha(),
                d.beta()
            )
        },
        levi,
    )?;
    let factors = d
        .alpha()
        .parts()
        .iter()
        .chain(d.beta().parts())
        .map(|&m| enum_gl(m, field, budget))
        .collect::<Result<Vec<_>>>()?;
    let standard = BiHinge::standard(d, field);
    let p = d.alpha().len();

    let mut stabilizer = 0u128;
    let mut orbit: HashSet<BiHinge> = HashSet::new();
    let mut idx = vec![0usize; factors.len()];
    loop {
        let g: Vec<Matrix> = (0..p).map(|k| factors[k][idx[k]].clone()).collect();
        let h: Vec<Matrix> = (p..factors.len())
            .map(|k| factors[k][idx[k]].clone())
            .collect();
        let image = standard.act_unchecked(&g, &h)?;
        if image == standard {
            stabilizer += 1;
        }
        orbit.insert(image);

        let mut k = factors.len();
        loop {
            if k == 0 {
                return Ok((stabilizer, orbit.len() as u128));
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < factors[k].len() {
                break;
            }
            idx[k] = 0;
        }
    }
}

/// Number of `(g, h)` fixing the standard bi-hinge of `d`.
pub fn stabilizer_brute(
    d: &DimensionMatrix,
    field: PrimeField,
    budget: &EnumerationBudget,
) -> Result<u128> {
    stabilizer_and_orbit_brute(d, field, budget).map(|(s, _)| s)
}

/// Outcome of comparing the bi-hinge invariant with brute-force double
/// cosets on all of `GL(n, p)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompletenessReport {
    pub alpha: Composition,
    pub beta: Composition,
    pub modulus: u32,
    pub cosets: usize,
    pub distinct_bihinges: usize,
    /// Cosets whose members do not share one bi-hinge.
    pub split_cosets: usize,
    /// Bi-hinges shared by more than one coset.
    pub merged_bihinges: usize,
}

impl CompletenessReport {
    pub fn exceptions(&self) -> usize {
        self.split_cosets + self.merged_bihinges
    }
}

/// Checks that `A`, `B` have equal bi-hinges exactly when they lie in the
/// same brute-force double coset. `group` must be all of `GL(n, p)`.
///
/// The invariants are computed in parallel; the result does not depend on
/// the number of worker threads.
pub fn verify_completeness(
    group: &[Matrix],
    field: PrimeField,
    alpha: &Composition,
    beta: &Composition,
) -> Result<CompletenessReport> {
    let partition = double_cosets_of(group, field, alpha, beta)?;
    let invariants: Vec<Vec<BiHinge>> = partition
        .classes
        .par_iter()
        .map(|class| {
            class
                .iter()
                .map(|a| chi_unchecked(a, alpha, beta))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let split_cosets = invariants
        .iter()
        .filter(|class| class.iter().any(|h| *h != class[0]))
        .count();
    let mut owners: HashMap<&BiHinge, HashSet<usize>> = HashMap::new();
    for (id, class) in invariants.iter().enumerate() {
        for h in class {
            owners.entry(h).or_default().insert(id);
        }
    }
    let merged_bihinges = owners.values().filter(|ids| ids.len() > 1).count();
    Ok(CompletenessReport {
        alpha: alpha.clone(),
        beta: beta.clone(),
        modulus: field.modulus(),
        cosets: partition.len(),
        distinct_bihinges: owners.len(),
        split_cosets,
        merged_bihinges,
    })
}

/// Distinct bi-hinges `χ(A)` over all `A` in `group`.
pub fn realized_bihinges(
    group: &[Matrix],
    alpha: &Composition,
    beta: &Composition,
) -> Result<HashSet<BiHinge>> {
    let all = group
        .par_iter()
        .map(|a| chi_unchecked(a, alpha, beta))
        .collect::<Result<Vec<_>>>()?;
    Ok(all.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn comp(parts: &[usize]) -> Composition {
        Composition::new(parts.to_vec()).unwrap()
    }

    fn budget() -> EnumerationBudget {
        EnumerationBudget::default()
    }

    #[test]
    fn group_orders() {
        assert_eq!(gl_order(2, 2).unwrap(), 6);
        assert_eq!(gl_order(2, 3).unwrap(), 48);
        assert_eq!(gl_order(0, 5).unwrap(), 1);
        assert_eq!(enum_gl(2, gf(2), &budget()).unwrap().len(), 6);
        assert_eq!(enum_gl(3, gf(2), &budget()).unwrap().len(), 168);
        assert_eq!(enum_gl(2, gf(3), &budget()).unwrap().len(), 48);
    }

    #[test]
    fn enumerations_are_duplicate_free_and_complete() {
        let g = enum_gl(3, gf(2), &budget()).unwrap();
        let keys: HashSet<u128> = g.iter().map(|m| matrix_key(m).unwrap()).collect();
        assert_eq!(keys.len(), g.len());
        assert!(g.iter().all(Matrix::is_invertible));

        let s = enum_subspaces(3, gf(3), &budget()).unwrap();
        let set: HashSet<&Subspace> = s.iter().collect();
        assert_eq!(set.len(), s.len());
        assert_eq!(s.len() as u128, subspace_count(3, 3).unwrap());
    }

    #[test]
    fn unitriangular_orders() {
        assert_eq!(
            enum_t_plus(&comp(&[1, 1]), gf(2), &budget()).unwrap().len(),
            2
        );
        assert_eq!(enum_t_plus(&comp(&[2]), gf(2), &budget()).unwrap().len(), 1);
        let tm = enum_t_minus(&comp(&[1, 2]), gf(3), &budget()).unwrap();
        assert_eq!(tm.len(), 9);
        assert!(tm.iter().all(|m| m.entry(0, 1) == 0 && m.entry(1, 0) <= 2));
    }

    #[test]
    fn subspace_counts() {
        assert_eq!(enum_subspaces(2, gf(2), &budget()).unwrap().len(), 5);
        assert_eq!(gaussian_binomial(4, 2, 2).unwrap(), 35);
        assert_eq!(enum_subspaces(0, gf(2), &budget()).unwrap().len(), 1);
    }

    #[test]
    fn budget_is_enforced() {
        let tiny = EnumerationBudget::uniform(5);
        match enum_gl(2, gf(2), &tiny) {
            Err(Error::Budget {
                cardinality,
                budget,
                ..
            }) => {
                assert_eq!((cardinality, budget), (6, 5));
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            enum_subspaces(3, gf(2), &tiny),
            Err(Error::Budget { .. })
        ));
        assert_eq!(enum_subspaces(2, gf(2), &tiny).unwrap().len(), 5);
        assert!(matches!(
            all_bihinges_brute(&comp(&[1, 1]), &comp(&[1, 1]), gf(2), &tiny),
            Err(Error::Budget { .. })
        ));
    }

    #[test]
    fn matrix_keys() {
        let m = Matrix::from_rows(gf(3), &[[1, 2], [0, 1]]).unwrap();
        assert_eq!(matrix_key(&m).unwrap(), 27 + 2 * 9 + 1);
        let big = Matrix::zeros(gf(65521), 10, 10);
        assert!(matches!(matrix_key(&big), Err(Error::Overflow(_))));
    }

    #[test]
    fn coset_examples() {
        let one = comp(&[1, 1]);
        let part = double_cosets_brute(2, gf(2), &one, &one, &budget()).unwrap();
        let mut sizes = part.sizes();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![2, 4]);

        let part = double_cosets_brute(2, gf(2), &comp(&[2]), &one, &budget()).unwrap();
        assert_eq!(part.sizes(), vec![2, 2, 2]);

        let triple = comp(&[1, 1, 1]);
        let part = double_cosets_brute(3, gf(2), &triple, &triple, &budget()).unwrap();
        assert_eq!(part.len(), 6);
        assert_eq!(part.sizes().iter().sum::<usize>(), 168);
    }

    #[test]
    fn coset_classes_are_closed() {
        let alpha = comp(&[1, 2]);
        let beta = comp(&[2, 1]);
        let f = gf(2);
        let part = double_cosets_brute(3, f, &alpha, &beta, &budget()).unwrap();
        let tp = enum_t_plus(&alpha, f, &budget()).unwrap();
        let tm = enum_t_minus(&beta, f, &budget()).unwrap();
        for class in &part.classes {
            let keys: HashSet<u128> = class.iter().map(|m| matrix_key(m).unwrap()).collect();
            for m in class {
                for c in &tp {
                    assert!(keys.contains(&matrix_key(&m.mul(c).unwrap()).unwrap()));
                }
                for d in &tm {
                    assert!(keys.contains(&matrix_key(&d.mul(m).unwrap()).unwrap()));
                }
            }
        }
    }

    #[test]
    fn bihinge_enumeration_examples() {
        let one = comp(&[1, 1]);
        assert_eq!(
            all_bihinges_brute(&one, &one, gf(2), &budget())
                .unwrap()
                .len(),
            2
        );
        assert_eq!(
            all_bihinges_brute(&one, &one, gf(3), &budget())
                .unwrap()
                .len(),
            8
        );
        assert_eq!(
            all_bihinges_brute(&comp(&[2]), &one, gf(2), &budget())
                .unwrap()
                .len(),
            3
        );
    }

    #[test]
    fn contingency_examples() {
        let one = comp(&[1, 1]);
        let tables: Vec<Vec<Vec<usize>>> = contingency_tables(&one, &one)
            .iter()
            .map(|d| d.rows())
            .collect();
        assert_eq!(
            tables,
            vec![vec![vec![0, 1], vec![1, 0]], vec![vec![1, 0], vec![0, 1]]]
        );
        assert_eq!(contingency_tables(&comp(&[2, 2]), &comp(&[2, 2])).len(), 3);
        assert!(contingency_tables(&comp(&[2]), &comp(&[1])).is_empty());
    }

    #[test]
    fn stabilizer_examples() {
        let one = comp(&[1, 1]);
        let d = DimensionMatrix::new(vec![vec![1, 1]], comp(&[2]), one.clone()).unwrap();
        assert_eq!(stabilizer_brute(&d, gf(2), &budget()).unwrap(), 2);
        assert_eq!(stab_order_formula(&d, 2).unwrap(), 2);

        let id =
            DimensionMatrix::new(vec![vec![1, 0], vec![0, 1]], one.clone(), one.clone()).unwrap();
        assert_eq!(stabilizer_brute(&id, gf(3), &budget()).unwrap(), 4);
        assert_eq!(stabilizer_brute(&id, gf(2), &budget()).unwrap(), 1);
    }

    #[test]
    fn predicted_counts() {
        let one = comp(&[1, 1]);
        assert_eq!(predicted_coset_count(&one, &one, 2).unwrap(), 2);
        assert_eq!(predicted_coset_count(&one, &one, 3).unwrap(), 8);
        assert_eq!(predicted_coset_count(&comp(&[2]), &one, 2).unwrap(), 3);
        let triple = comp(&[1, 1, 1]);
        assert_eq!(predicted_coset_count(&triple, &triple, 2).unwrap(), 6);
        assert!(predicted_coset_count(&comp(&[2]), &comp(&[1]), 2).is_err());
    }
}
