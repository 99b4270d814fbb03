//! Exact computations for Lefschetz fibrations built from chain relations:
//! braid actions, twist factorizations, invariants, and branched-cover models.

#![allow(clippy::needless_range_loop)]

pub mod braid;
pub mod catalog;
pub mod cli;
pub mod cover;
pub mod error;
pub mod invariants;
pub mod linalg;
pub mod mcg;
pub mod props;
pub mod scalar;
pub mod symplectic;

pub use error::{Error, Result};

/// Default exact integer.
pub type Int = i64;
pub type Rational = num_rational::BigRational;
pub type IntMatrix = linalg::Matrix<Int>;
pub type Sp = symplectic::SpMatrix<Int>;
