//! Hidden projectors of matrix factorizations.
//!
//! Every factorization `A = F G H*` carries two oblique projectors, `F Y*`
//! onto the column space and `X H*` onto the row space, where `Y*` and `X`
//! are generalized inverses of the factors. This crate builds those
//! inverses from random rank-preserving sketches, solves the linear matrix
//! equation `F G H* = A` for every admissible mixing matrix, maps SVD, CPQR,
//! LU, CUR and similarity transforms into that form, and uses the
//! non-uniqueness of the inverses for a small projector-based
//! encryption scheme.
//!
//! Everything is dense, real and `f64`.

pub mod cli;
pub mod crypto;
pub mod error;
pub mod linalg;
pub mod projector;
pub mod rng;
pub mod solver;
pub mod zoo;

pub use error::{Error, Result};
pub use linalg::{Matrix, RankReport, Tolerance};
