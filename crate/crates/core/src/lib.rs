//! Exact linear algebra over prime fields and the bi-hinge invariants of
//! double cosets `T_-(β) \ GL(n, p) / T_+(α)`, where `T_±` are the groups of
//! block strictly upper/lower triangular matrices.
//!
//! * [`field`], [`matrix`], [`subspace`]: arithmetic in GF(p), Gaussian
//!   elimination and the canonical subspace calculus.
//! * [`relation`]: linear relations and their kernel, domain, image,
//!   indefiniteness and canonical operator `Θ`.
//! * [`hinge`]: the invariant `χ(A)`, the bi-hinge axioms, standard forms,
//!   normalization and double-coset equivalence.
//! * [`reduce`]: LPU factorization and canonical 0-1 representatives.
//! * [`oracle`]: exhaustive enumeration and closed-form counts used as
//!   ground truth.
//! * [`sample`]: random group elements for property tests and self-checks.

pub mod error;
pub mod field;
pub mod hinge;
pub mod matrix;
pub mod oracle;
pub mod reduce;
pub mod relation;
pub mod sample;
pub mod subspace;

pub use error::{Error, Result};
pub use field::{FieldElement, PrimeField};
pub use hinge::{BiHinge, Composition, DimensionMatrix};
pub use matrix::Matrix;
pub use relation::LinearRelation;
pub use subspace::Subspace;
