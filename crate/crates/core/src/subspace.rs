//! Linear subspaces of GF(p)^d in canonical form.
//!
//! A [`Subspace`] stores the reduced row-echelon basis of its row span, with
//! no zero rows. Because RREF is unique, two subspaces are equal as sets
//! exactly when their stored bases are equal entry by entry, so `==` and
//! `Hash` are set semantics.

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::matrix::Matrix;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    /// Canonical representation of the row span of `generators`.
    pub fn from_generators(ambient_dim: usize, generators: &Matrix) -> Result<Self> {
        if generators.cols() != ambient_dim {
            return Err(Error::Shape(format!(
                "generators have {} columns, ambient dimension is {ambient_dim}",
                generators.cols()
            )));
        }
        let (basis, pivots) = generators.rref();
        Ok(Self {
            ambient_dim,
            basis,
            pivots,
        })
    }

    pub fn zero(field: PrimeField, ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            basis: Matrix::zeros(field, 0, ambient_dim),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: PrimeField, ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            basis: Matrix::identity(field, ambient_dim),
            pivots: (0..ambient_dim).collect(),
        }
    }

    /// Span of the standard basis vectors at `coords`.
    pub fn coordinate(field: PrimeField, ambient_dim: usize, coords: &[usize]) -> Result<Self> {
        let mut sorted = coords.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != coords.len() {
            return Err(Error::Shape("repeated coordinate index".into()));
        }
        if let Some(&bad) = sorted.iter().find(|&&c| c >= ambient_dim) {
            return Err(Error::IndexOutOfRange {
                index: bad,
                dim: ambient_dim,
            });
        }
        let basis = Matrix::from_fn(field, sorted.len(), ambient_dim, |r, c| {
            u32::from(sorted[r] == c)
        });
        Ok(Self {
            ambient_dim,
            basis,
            pivots: sorted,
        })
    }

    pub fn field(&self) -> PrimeField {
        self.basis.field()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim
    }

    fn check_compatible(&self, other: &Subspace) -> Result<()> {
        if self.field() != other.field() {
            return Err(Error::FieldMismatch(
                self.field().modulus(),
                other.field().modulus(),
            ));
        }
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::Shape(format!(
                "ambient dimensions {} and {} differ",
                self.ambient_dim, other.ambient_dim
            )));
        }
        Ok(())
    }

    /// Matrix `E` with `self = {x : E·x = 0}` and `ambient_dim - dim` rows.
    pub fn equations(&self) -> Matrix {
        self.basis.kernel().basis
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        Subspace::from_generators(self.ambient_dim, &self.basis.vstack(&other.basis)?)
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        if self.is_full() {
            return Ok(other.clone());
        }
        if other.is_full() {
            return Ok(self.clone());
        }
        Ok(self.equations().vstack(&other.equations())?.kernel())
    }

    /// `{x : a·x ∈ self}` for any matrix `a` with `ambient_dim` rows.
    pub fn preimage(&self, a: &Matrix) -> Result<Subspace> {
        if a.rows() != self.ambient_dim {
            return Err(Error::Shape(format!(
                "map has {} rows, subspace lives in dimension {}",
                a.rows(),
                self.ambient_dim
            )));
        }
        if a.field() != self.field() {
            return Err(Error::FieldMismatch(
                a.field().modulus(),
                self.field().modulus(),
            ));
        }
        Ok(self.equations().mul(a)?.kernel())
    }

    /// `{a·x : x ∈ self}`, where `a` has `ambient_dim` columns.
    pub fn image(&self, a: &Matrix) -> Result<Subspace> {
        if a.cols() != self.ambient_dim {
            return Err(Error::Shape(format!(
                "map has {} columns, subspace lives in dimension {}",
                a.cols(),
                self.ambient_dim
            )));
        }
        let gens = self.basis.mul(&a.transpose())?;
        Subspace::from_generators(a.rows(), &gens)
    }

    /// Image under the map keeping only the coordinates `coords`, in order.
    pub fn project(&self, coords: &[usize]) -> Result<Subspace> {
        let mut seen = vec![false; self.ambient_dim];
        for &c in coords {
            if c >= self.ambient_dim {
                return Err(Error::IndexOutOfRange {
                    index: c,
                    dim: self.ambient_dim,
                });
            }
            if std::mem::replace(&mut seen[c], true) {
                return Err(Error::Shape(format!("coordinate {c} selected twice")));
            }
        }
        Subspace::from_generators(coords.len(), &self.basis.select_cols(coords)?)
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        if v.len() != self.ambient_dim {
            return false;
        }
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Normal form of `v` modulo `self`: subtracts basis rows until `v` is
    /// zero at every pivot column. Two vectors are congruent modulo the
    /// subspace iff their normal forms agree.
    pub fn reduce(&self, v: &[u32]) -> Vec<u32> {
        let f = self.field();
        let mut out = v.to_vec();
        for (r, &pc) in self.pivots.iter().enumerate() {
            let factor = out[pc];
            if factor == 0 {
                continue;
            }
            for (slot, &b) in out.iter_mut().zip(self.basis.row(r)) {
                *slot = f.sub(*slot, f.mul(factor, b));
            }
        }
        out
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient_dim == other.ambient_dim
            && (0..self.dim()).all(|r| other.contains(self.basis.row(r)))
    }

    /// Basis rows of `self` whose pivot columns are not pivots of `smaller`.
    /// When `smaller ⊆ self` these rows span a complement of `smaller`.
    pub fn complement_rows(&self, smaller: &Subspace) -> Vec<Vec<u32>> {
        self.pivots
            .iter()
            .enumerate()
            .filter(|(_, pc)| !smaller.pivots.contains(pc))
            .map(|(r, _)| self.basis.row(r).to_vec())
            .collect()
    }
}
