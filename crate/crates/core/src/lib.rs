//! Combinatorial invariants of squarefree multigraded modules.
//!
//! Given an `s x l` presentation matrix `A = (c_ij * x^a_ij)` over a
//! polynomial ring `k[x_1..x_n]`, this crate decides whether the degree
//! system of `A` admits a squarefree solution, computes the row ideals of
//! the initial module of `im(A)` together with their Stanley-Reisner
//! complexes, and evaluates multigraded Betti numbers and local cohomology
//! dimensions of `coker(A)` through signed cochain complexes built from
//! those simplicial data. Every cochain-complex computation is backed by an
//! independent exact-linear-algebra oracle (a Koszul strand for Betti
//! numbers, a Cech strand for local cohomology) so results can be
//! cross-verified degree by degree.
//!
//! All arithmetic is exact over the rationals; there is no floating point
//! anywhere in the pipeline.
//!
//! ```
//! use sqfmod::cli::MatrixFile;
//! use sqfmod::exponents::ExponentVector;
//! use sqfmod::reduction::SquarefreeModule;
//! use sqfmod::{betti, localcohom};
//!
//! let text = "n 2\nsize 1 2\nentry 1 1 1 1 0\nentry 1 2 1 0 1\n";
//! let matrix = MatrixFile::parse(text).unwrap().to_matrix().unwrap();
//! let module = SquarefreeModule::from_matrix(matrix).unwrap();
//! assert_eq!(module.krull_dimension(), Some(0));
//!
//! let b = betti::betti_numbers_all(&module, &ExponentVector::new(vec![1, 1])).unwrap();
//! assert_eq!(b[2], 1);
//!
//! let h = localcohom::local_cohomology_dims(&module, &ExponentVector::new(vec![0, 0])).unwrap();
//! assert_eq!(h.get(&0), Some(&1));
//! ```

pub mod betti;
pub mod cli;
pub mod exponents;
pub mod grading;
pub mod linalg;
pub mod localcohom;
pub mod reduction;
pub mod simplicial;

use thiserror::Error;

/// Errors surfaced by the library and mapped to CLI exit codes.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed input files or out-of-range arguments.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// A request that is structurally invalid for the given data.
    #[error("input error: {0}")]
    Input(String),

    /// The entry graph of the matrix has an inconsistent cycle, so the
    /// matrix is not multigraded.
    #[error("matrix is not multigraded: {0}")]
    NotMultigraded(String),

    /// A theorem-backed internal assertion failed; indicates a bug.
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
