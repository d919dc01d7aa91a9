//! Dense complex matrix arithmetic, rank-revealing factorizations and
//! subspace-inclusion predicates.
//!
//! Every rank decision goes through one relative singular-value cutoff,
//! `rank_tol × σ_max`, and every matrix identity is judged on the relative
//! residual `‖x − y‖₂ / max(1, ‖x‖₂, ‖y‖₂)`.

mod context;
mod decomp;
mod eig;
mod jacobi;
mod matrix;

pub use context::NumericContext;
pub(crate) use decomp::Svd;
pub use decomp::{
    approx_eq, eigenvalues, full_rank_factorization, null_included, range_included, rank,
    relative_residual, spectral_radius, Comparison, FullRankFactorization, Inclusion,
};
pub use matrix::{ComplexMatrix, C64};
