//! Linear relations `L : X ⇉ Y`, i.e. subspaces of `X ⊕ Y`.
//!
//! Coordinates `0..dim_x` of the ambient space are the `X` part and the
//! remaining `dim_y` coordinates are the `Y` part. Every relation has four
//! canonical subspaces
//!
//! * `ker L = {ξ : (ξ, 0) ∈ L}` and `dom L = {ξ : ∃η, (ξ, η) ∈ L}` in `X`,
//! * `indef L = {η : (0, η) ∈ L}` and `im L = {η : ∃ξ, (ξ, η) ∈ L}` in `Y`,
//!
//! and an invertible operator `Θ(L) : dom L / ker L → im L / indef L`.
//! The quadruple of subspaces together with `Θ` determines `L`.

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::matrix::Matrix;
use crate::subspace::Subspace;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinearRelation {
    dim_x: usize,
    dim_y: usize,
    space: Subspace,
}

impl LinearRelation {
    pub fn new(dim_x: usize, dim_y: usize, space: Subspace) -> Result<Self> {
        if space.ambient_dim() != dim_x + dim_y {
            return Err(Error::Shape(format!(
                "relation space has ambient dimension {}, expected {dim_x} + {dim_y}",
                space.ambient_dim()
            )));
        }
        Ok(Self {
            dim_x,
            dim_y,
            space,
        })
    }

    /// Relation spanned by the rows of `generators`, each of length `dim_x + dim_y`.
    pub fn from_generators(dim_x: usize, dim_y: usize, generators: &Matrix) -> Result<Self> {
        Self::new(
            dim_x,
            dim_y,
            Subspace::from_generators(dim_x + dim_y, generators)?,
        )
    }

    /// Graph `{(x, a·x)}` of a `dim_y × dim_x` matrix.
    pub fn graph(a: &Matrix) -> Self {
        let (dy, dx) = (a.rows(), a.cols());
        let gens = Matrix::from_fn(a.field(), dx, dx + dy, |r, c| {
            if c < dx {
                u32::from(c == r)
            } else {
                a.entry(c - dx, r)
            }
        });
        Self::from_generators(dx, dy, &gens).expect("graph generators have matching width")
    }

    pub fn zero(field: PrimeField, dim_x: usize, dim_y: usize) -> Self {
        Self {
            dim_x,
            dim_y,
            space: Subspace::zero(field, dim_x + dim_y),
        }
    }

    pub fn dim_x(&self) -> usize {
        self.dim_x
    }

    pub fn dim_y(&self) -> usize {
        self.dim_y
    }

    pub fn field(&self) -> PrimeField {
        self.space.field()
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    fn x_coords(&self) -> Vec<usize> {
        (0..self.dim_x).collect()
    }

    fn y_coords(&self) -> Vec<usize> {
        (self.dim_x..self.dim_x + self.dim_y).collect()
    }

    pub fn ker(&self) -> Subspace {
        let x_axis = Subspace::coordinate(self.field(), self.dim_x + self.dim_y, &self.x_coords())
            .expect("coordinates in range");
        self.space
            .intersect(&x_axis)
            .and_then(|s| s.project(&self.x_coords()))
            .expect("shapes agree by construction")
    }

    pub fn dom(&self) -> Subspace {
        self.space
            .project(&self.x_coords())
            .expect("coordinates in range")
    }

    pub fn im(&self) -> Subspace {
        self.space
            .project(&self.y_coords())
            .expect("coordinates in range")
    }

    pub fn indef(&self) -> Subspace {
        let y_axis = Subspace::coordinate(self.field(), self.dim_x + self.dim_y, &self.y_coords())
            .expect("coordinates in range");
        self.space
            .intersect(&y_axis)
            .and_then(|s| s.project(&self.y_coords()))
            .expect("shapes agree by construction")
    }

    /// Some `η` with `(ξ, η) ∈ L`.
    ///
    /// The basis rows of the space with a pivot among the `X` coordinates
    /// have `X`-parts forming the RREF basis of `dom L`, so the coefficients
    /// of `ξ` can be read off at those pivots.
    pub fn partner(&self, xi: &[u32]) -> Result<Vec<u32>> {
        if xi.len() != self.dim_x {
            return Err(Error::Shape(format!(
                "vector of length {} for a relation with dim_x = {}",
                xi.len(),
                self.dim_x
            )));
        }
        let f = self.field();
        let basis = self.space.basis();
        let mut acc = vec![0u32; self.dim_x + self.dim_y];
        for (r, &pc) in self.space.pivots().iter().enumerate() {
            if pc >= self.dim_x {
                break;
            }
            let coeff = xi[pc];
            if coeff == 0 {
                continue;
            }
            for (slot, &b) in acc.iter_mut().zip(basis.row(r)) {
                *slot = f.add(*slot, f.mul(coeff, b));
            }
        }
        if acc[..self.dim_x] != *xi {
            return Err(Error::InvariantViolation(format!(
                "{xi:?} is not in the domain of the relation"
            )));
        }
        Ok(acc.split_off(self.dim_x))
    }

    /// Matrix of `Θ(L)` in the canonical quotient bases.
    ///
    /// The basis of `dom L / ker L` is formed by the RREF rows of `dom L`
    /// whose pivots are not pivots of `ker L`; likewise for
    /// `im L / indef L`. Column `k` holds the coordinates of the image of
    /// the `k`-th domain-side basis vector.
    pub fn theta(&self) -> Result<Matrix> {
        let (ker, dom, im, indef) = (self.ker(), self.dom(), self.im(), self.indef());
        self.theta_with(&ker, &dom, &im, &indef)
    }

    pub(crate) fn theta_with(
        &self,
        ker: &Subspace,
        dom: &Subspace,
        im: &Subspace,
        indef: &Subspace,
    ) -> Result<Matrix> {
        let sources = dom.complement_rows(ker);
        let size = sources.len();
        let target_pivots: Vec<(usize, usize)> = im
            .pivots()
            .iter()
            .copied()
            .filter(|pc| !indef.pivots().contains(pc))
            .enumerate()
            .collect();
        if target_pivots.len() != size {
            return Err(Error::InvariantViolation(format!(
                "dom/ker has dimension {size} but im/indef has dimension {}",
                target_pivots.len()
            )));
        }
        let mut theta = Matrix::zeros(self.field(), size, size);
        for (k, xi) in sources.iter().enumerate() {
            let eta = indef.reduce(&self.partner(xi)?);
            if !im.contains(&eta) {
                return Err(Error::InvariantViolation("partner lies outside im".into()));
            }
            for &(row, pc) in &target_pivots {
                theta.set(row, k, eta[pc]);
            }
        }
        Ok(theta)
    }

    /// `{(g·ξ, h·η) : (ξ, η) ∈ L}` for invertible `g`, `h`.
    pub fn act(&self, g: &Matrix, h: &Matrix) -> Result<LinearRelation> {
        if g.rows() != self.dim_x || g.cols() != self.dim_x {
            return Err(Error::Shape(format!(
                "source transform is {}x{}, expected {}x{}",
                g.rows(),
                g.cols(),
                self.dim_x,
                self.dim_x
            )));
        }
        if h.rows() != self.dim_y || h.cols() != self.dim_y {
            return Err(Error::Shape(format!(
                "target transform is {}x{}, expected {}x{}",
                h.rows(),
                h.cols(),
                self.dim_y,
                self.dim_y
            )));
        }
        if !g.is_invertible() || !h.is_invertible() {
            return Err(Error::Singular);
        }
        self.act_unchecked(g, h)
    }

    /// [`LinearRelation::act`] without the invertibility checks; callers
    /// that already hold group elements skip two rank computations.
    pub(crate) fn act_unchecked(&self, g: &Matrix, h: &Matrix) -> Result<LinearRelation> {
        let f = self.field();
        let block = Matrix::block_diagonal(f, &[g.clone(), h.clone()])?;
        self.space
            .image(&block)
            .and_then(|s| LinearRelation::new(self.dim_x, self.dim_y, s))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn rel(p: u64, dx: usize, dy: usize, rows: &[&[i64]]) -> LinearRelation {
        let gens = Matrix::from_rows_with_cols(gf(p), dx + dy, rows).unwrap();
        LinearRelation::from_generators(dx, dy, &gens).unwrap()
    }

    #[test]
    fn graph_of_identity() {
        let l = rel(2, 1, 1, &[&[1, 1]]);
        assert_eq!(l, LinearRelation::graph(&Matrix::identity(gf(2), 1)));
        assert!(l.ker().is_zero());
        assert!(l.dom().is_full());
        assert!(l.im().is_full());
        assert!(l.indef().is_zero());
        assert_eq!(l.theta().unwrap(), Matrix::identity(gf(2), 1));
    }

    #[test]
    fn graph_of_zero_map() {
        let l = rel(2, 1, 1, &[&[1, 0]]);
        assert!(l.ker().is_full());
        assert!(l.dom().is_full());
        assert!(l.im().is_zero());
        assert!(l.indef().is_zero());
        let theta = l.theta().unwrap();
        assert_eq!((theta.rows(), theta.cols()), (0, 0));
    }

    #[test]
    fn equality_is_set_equality() {
        let a = rel(3, 2, 1, &[&[1, 0, 2], &[0, 1, 1]]);
        let b = rel(3, 2, 1, &[&[1, 1, 0], &[2, 0, 1], &[0, 1, 1]]);
        assert_eq!(a, b);
        assert_ne!(rel(2, 1, 1, &[&[1, 1]]), rel(2, 1, 1, &[&[1, 0]]));
    }

    #[test]
    fn same_subspaces_different_theta() {
        let one = LinearRelation::graph(&Matrix::from_rows(gf(3), &[[1]]).unwrap());
        let two = LinearRelation::graph(&Matrix::from_rows(gf(3), &[[2]]).unwrap());
        assert_eq!(one.ker(), two.ker());
        assert_eq!(one.dom(), two.dom());
        assert_eq!(one.im(), two.im());
        assert_eq!(one.indef(), two.indef());
        assert_ne!(one, two);
        assert_ne!(one.space(), two.space());
        assert_eq!(two.theta().unwrap().entry(0, 0), 2);
    }

    #[test]
    fn act_examples() {
        let f = gf(3);
        let l = LinearRelation::graph(&Matrix::identity(f, 1));
        let id = Matrix::identity(f, 1);
        assert_eq!(l.act(&id, &id).unwrap(), l);
        let two = Matrix::from_rows(f, &[[2]]).unwrap();
        assert_eq!(l.act(&two, &id).unwrap(), rel(3, 1, 1, &[&[2, 1]]));
        assert_eq!(l.act(&two, &id).unwrap(), rel(3, 1, 1, &[&[1, 2]]));
        let zero = Matrix::zeros(f, 1, 1);
        assert_eq!(l.act(&zero, &id), Err(Error::Singular));
        assert!(matches!(
            l.act(&Matrix::identity(f, 2), &id),
            Err(Error::Shape(_))
        ));
    }

    #[test]
    fn graph_of_invertible_matrix_has_theta_equal_to_it() {
        let a = Matrix::from_rows(gf(5), &[[1, 2], [3, 4]]).unwrap();
        let l = LinearRelation::graph(&a);
        assert!(l.ker().is_zero() && l.indef().is_zero());
        assert!(l.dom().is_full() && l.im().is_full());
        assert_eq!(l.theta().unwrap(), a);
    }

    #[test]
    fn partner_rejects_vectors_outside_domain() {
        let l = rel(2, 2, 1, &[&[1, 0, 1]]);
        assert_eq!(l.partner(&[1, 0]).unwrap(), vec![1]);
        assert!(matches!(
            l.partner(&[0, 1]),
            Err(Error::InvariantViolation(_))
        ));
    }

    #[test]
    fn mixed_relation_dimensions() {
        // L = {((a, b), (b, c))} inside GF(3)^2 ⊕ GF(3)^2.
        let l = rel(3, 2, 2, &[&[1, 0, 0, 0], &[0, 1, 1, 0], &[0, 0, 0, 1]]);
        assert_eq!(l.ker().dim(), 1);
        assert_eq!(l.dom().dim(), 2);
        assert_eq!(l.indef().dim(), 1);
        assert_eq!(l.im().dim(), 2);
        assert_eq!(l.dim(), l.dom().dim() + l.indef().dim());
        let theta = l.theta().unwrap();
        assert_eq!(theta.rows(), 1);
        assert!(theta.is_invertible());
    }
}
