//! Exact Jordan canonical forms for rational matrices with rational spectrum.
//!
//! The pipeline is: characteristic polynomial and rational eigenvalues
//! ([`jordan::eigenvalues`]), generalized eigenspaces and restrictions, then the
//! nilpotent block analysis of [`nilpotent`] on each eigenspace. Everything is
//! computed over arbitrary-precision rationals, so `A·P = P·J` holds exactly.

pub mod arith;
pub mod cli;
pub mod error;
pub mod jordan;
pub mod linalg;
pub mod nilpotent;
pub mod testkit;

pub use arith::{Poly, Rational};
pub use error::{Error, Result};
pub use jordan::{
    char_poly, eigenvalues, jordan_form, matrix_exp, similar, validate_decomposition,
    EigenBlocks, ExpMatrix, JordanDecomposition, Spectrum,
};
pub use linalg::{Mat, Vector};
pub use nilpotent::{block_generators, block_sizes, d_sequence, CyclicDecomposition, DSequence};
