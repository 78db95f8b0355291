//! Exact linear algebra over prime fields.
//!
//! Residues are least non-negative representatives; subspaces are always
//! carried in reduced row echelon form so that equal subspaces compare equal.

mod field;
mod matrix;
mod subspace;

pub use field::{PrimeField, VectorFp};
pub use matrix::{kernel, rref, solve, MatrixFp};
pub use subspace::{enumerate_subspaces, gaussian_binomial, subspace_ops, Subspace};

pub(crate) use subspace::rank_of_rows;

/// `annihilator(s)` as a free function.
pub fn annihilator(s: &Subspace) -> Subspace {
    s.annihilator()
}
