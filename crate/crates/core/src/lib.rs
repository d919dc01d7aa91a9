//! Generalized inverses, EP and normal elements of finite-dimensional
//! norm-equipped matrix algebras.
//!
//! The algebra is `n×n` complex matrices acting on `C^n`, where `C^n` carries
//! one of the vector norms in [`NormSpec`] and matrices carry the induced
//! operator norm. Hermitian-ness is the norm-relative notion
//! `‖exp(ita)‖ = 1` for every real `t`, which under `ℓ2` reduces to
//! self-adjointness. On top of that the crate provides:
//!
//! - [`numkernel`]: dense complex matrices, rank, full-rank factorization and
//!   range/null-space inclusion tests.
//! - [`normscope`]: vector and operator norms, the matrix exponential, the
//!   hermitian predicate, the Vidav decomposition `a = u + iv`, the star
//!   `a* = u - iv` and normality.
//! - [`geninv`]: Moore-Penrose and group inverses and the EP predicate.
//! - [`specrep`]: spectra, ascent/descent, quasinilpotence and the left/right
//!   regular representations.
//! - [`eptheorems`]: a table of executable EP/normality characterizations and
//!   the corpus-level equivalence harness.
//! - [`corpusgen`]: seeded generators of matrices with known structure.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod corpusgen;
pub mod eptheorems;
mod error;
pub mod geninv;
pub mod normscope;
pub mod numkernel;
pub mod specrep;

pub use error::{Error, Result};
pub use normscope::NormSpec;
pub use numkernel::{ComplexMatrix, NumericContext, C64};
