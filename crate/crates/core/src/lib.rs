//! Exact-arithmetic Jordan structure of matrices and domain-restricted
//! operators, and machine-checkable bounds on how that structure moves under
//! finite-rank perturbations.
//!
//! Everything is computed over an exact field (arbitrary-precision rationals
//! or GF(p)), so kernel dimensions, Weyr/Segre characteristics and the bound
//! gaps are exact integers with zero tolerance.
//!
//! All values are immutable after construction and every operation is a pure
//! function of its inputs, so the whole API is safe to drive from concurrent
//! workers.

pub mod bounds;
pub mod eigen;
pub mod error;
pub mod io;
pub mod jordan;
pub mod matrix;
pub mod perturb;
pub mod scalar;
pub mod subspace;

pub use error::{Error, Result};
pub use matrix::{Matrix, Rref};
pub use scalar::{Field, Scalar};
pub use subspace::{kernel_basis, preimage, Subspace};
