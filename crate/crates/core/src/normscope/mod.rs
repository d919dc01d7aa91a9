//! Norms on `C^n`, induced operator norms, the matrix exponential, and the
//! norm-relative notions built on them: hermitian elements, the Vidav
//! decomposition `a = u + iv`, the star `a* = u − iv` and normality.
//!
//! Hermitian-ness is decided numerically on a `t` grid and reported as a
//! three-valued verdict. The Vidav decomposition and the star are computed
//! only under `ℓ2`; for other norms a caller-supplied decomposition can be
//! validated but none is searched for.

mod expm;
mod hermitian;
mod norm;
mod vidav;

pub use expm::matrix_exp;
pub use hermitian::{is_hermitian, sip_hermitian_probe, HermitianReport, HermitianVerdict};
pub use norm::{operator_norm, operator_norm_estimate, vector_norm, NormEstimate, NormSpec};
pub use vidav::{
    is_normal, is_normal_with_pair, star, validate_vidav, vidav_decompose, VidavPair, VidavValidation,
};
