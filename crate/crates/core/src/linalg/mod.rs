//! Exact dense linear algebra over ℚ: echelon forms, rank, nullspaces and
//! canonical subspaces.
//!
//! Elimination runs on integer rows (denominators cleared per row, content
//! divided out after every update) and only turns back into rationals when
//! the pivots are normalized.

mod matrix;
mod subspace;

pub use matrix::{rank, rref, solve, RationalMatrix};
pub use subspace::{nullspace, Subspace};

#[cfg(test)]
mod tests;
