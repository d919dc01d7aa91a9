use alloc::format;

use super::{is_hermitian, HermitianReport, NormSpec};
use crate::numkernel::{approx_eq, Comparison, ComplexMatrix, NumericContext, C64};
use crate::{Error, Result};

/// Hermitian parts of `a = u + iv`.
#[derive(Clone, Debug, PartialEq)]
pub struct VidavPair {
    pub u: ComplexMatrix,
    pub v: ComplexMatrix,
    pub norm: NormSpec,
}

fn require_l2(op: &'static str, norm: NormSpec) -> Result<()> {
    if norm == NormSpec::L2 {
        Ok(())
    } else {
        Err(Error::UnsupportedNorm {
            op,
            norm: format!("{norm}"),
        })
    }
}

fn require_square(op: &'static str, a: &ComplexMatrix) -> Result<()> {
    if a.is_square() {
        Ok(())
    } else {
        Err(Error::NotSquare {
            op,
            rows: a.rows(),
            cols: a.cols(),
        })
    }
}

/// `u = (a + a^H)/2`, `v = (a − a^H)/(2i)`. Only `ℓ2` is supported; for other
/// norms supply a pair and use [`validate_vidav`].
pub fn vidav_decompose(a: &ComplexMatrix, norm: NormSpec) -> Result<VidavPair> {
    require_l2("vidav_decompose", norm)?;
    require_square("vidav_decompose", a)?;
    let ah = a.adjoint();
    let u = (a + &ah).scale_real(0.5);
    let v = (a - &ah).scale(C64::new(0.0, -0.5));
    Ok(VidavPair { u, v, norm })
}

#[derive(Clone, Debug, PartialEq)]
pub struct VidavValidation {
    pub valid: bool,
    /// `a` against `u + iv`.
    pub reconstruction: Comparison,
    pub u_report: HermitianReport,
    pub v_report: HermitianReport,
}

/// Checks `a ≈ u + iv` with `u` and `v` hermitian under `norm`.
pub fn validate_vidav(
    a: &ComplexMatrix,
    u: &ComplexMatrix,
    v: &ComplexMatrix,
    norm: NormSpec,
    ctx: &NumericContext,
) -> Result<VidavValidation> {
    let recombined = u + &v.scale(C64::new(0.0, 1.0));
    let reconstruction = approx_eq(a, &recombined, ctx)?;
    let u_report = is_hermitian(u, norm, ctx)?;
    let v_report = is_hermitian(v, norm, ctx)?;
    Ok(VidavValidation {
        valid: reconstruction.holds && u_report.is_hermitian() && v_report.is_hermitian(),
        reconstruction,
        u_report,
        v_report,
    })
}

/// `a* = u − iv`. Under `ℓ2` this is the conjugate transpose, which is what
/// is returned (exactly, without going through `u` and `v`).
pub fn star(a: &ComplexMatrix, norm: NormSpec) -> Result<ComplexMatrix> {
    require_l2("star", norm)?;
    require_square("star", a)?;
    Ok(a.adjoint())
}

/// `uv = vu` for a supplied decomposition.
pub fn is_normal_with_pair(pair: &VidavPair, ctx: &NumericContext) -> Result<Comparison> {
    approx_eq(&(&pair.u * &pair.v), &(&pair.v * &pair.u), ctx)
}

/// Normality `uv = vu` with the native `ℓ2` decomposition.
pub fn is_normal(a: &ComplexMatrix, norm: NormSpec, ctx: &NumericContext) -> Result<Comparison> {
    let pair = vidav_decompose(a, norm)?;
    is_normal_with_pair(&pair, ctx)
}
