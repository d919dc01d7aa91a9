//! Moore-Penrose and group inverses, their verification under any
//! [`NormSpec`], and the EP predicate.
//!
//! Penrose residuals are normalized by `max(1, ‖a‖·‖x‖)` since the
//! conditions are bilinear in `(a, x)`. The zero matrix is its own
//! Moore-Penrose and group inverse and is EP.

use nalgebra::DMatrix;

use crate::normscope::{is_hermitian, HermitianReport, HermitianVerdict, NormSpec};
use crate::numkernel::{
    approx_eq, full_rank_factorization, Comparison, ComplexMatrix, NumericContext, Svd, C64,
};
use crate::{Error, Result};

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

/// SVD pseudoinverse `V Σ⁺ U^H` with the `rank_tol` cutoff.
pub fn mp_inverse(a: &ComplexMatrix, ctx: &NumericContext) -> ComplexMatrix {
    let svd = Svd::new(a);
    let r = svd.rank(ctx);
    let (rows, cols) = a.shape();
    let m = DMatrix::from_fn(cols, rows, |i, j| {
        (0..r)
            .map(|k| svd.v[(i, k)] * svd.u[(j, k)].conj() / svd.s[k])
            .sum::<C64>()
    });
    ComplexMatrix::wrap(m)
}

fn bilinear_residual(lhs: &ComplexMatrix, rhs: &ComplexMatrix, scale: f64) -> f64 {
    (lhs - rhs).spectral_norm() / scale.max(1.0)
}

/// Residuals of the four Penrose conditions for a candidate `x`.
#[derive(Clone, Debug, PartialEq)]
pub struct PenroseWitness {
    pub x: ComplexMatrix,
    pub res_axa: f64,
    pub res_xax: f64,
    pub herm_ax: HermitianReport,
    pub herm_xa: HermitianReport,
    pub accepted: bool,
}

impl PenroseWitness {
    /// Both products fail to be certified hermitian-ness.
    pub fn rejected_on_hermitian(&self) -> bool {
        !(self.herm_ax.is_hermitian() && self.herm_xa.is_hermitian())
    }

    pub fn max_residual(&self) -> f64 {
        self.res_axa.max(self.res_xax)
    }
}

/// Checks `axa = a`, `xax = x` and that `ax`, `xa` are hermitian under
/// `norm`.
pub fn verify_mp(
    a: &ComplexMatrix,
    x: &ComplexMatrix,
    norm: NormSpec,
    ctx: &NumericContext,
) -> Result<PenroseWitness> {
    require_square("verify_mp", a)?;
    if a.shape() != x.shape() {
        return Err(Error::ShapeMismatch {
            op: "verify_mp",
            left: a.shape(),
            right: x.shape(),
        });
    }
    let scale = a.spectral_norm() * x.spectral_norm();
    let ax = a * x;
    let xa = x * a;
    let res_axa = bilinear_residual(&(&ax * a), a, scale);
    let res_xax = bilinear_residual(&(&xa * x), x, scale);
    let herm_ax = is_hermitian(&ax, norm, ctx)?;
    let herm_xa = is_hermitian(&xa, norm, ctx)?;
    let accepted = res_axa <= ctx.eq_tol
        && res_xax <= ctx.eq_tol
        && herm_ax.is_hermitian()
        && herm_xa.is_hermitian();
    Ok(PenroseWitness {
        x: x.clone(),
        res_axa,
        res_xax,
        herm_ax,
        herm_xa,
        accepted,
    })
}

/// Residuals of `axa = a`, `xax = x`, `ax = xa`.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupWitness {
    pub x: ComplexMatrix,
    pub res_axa: f64,
    pub res_xax: f64,
    pub res_comm: f64,
    pub accepted: bool,
}

impl GroupWitness {
    pub fn max_residual(&self) -> f64 {
        self.res_axa.max(self.res_xax).max(self.res_comm)
    }
}

pub fn verify_group(a: &ComplexMatrix, x: &ComplexMatrix, ctx: &NumericContext) -> Result<GroupWitness> {
    require_square("verify_group", a)?;
    if a.shape() != x.shape() {
        return Err(Error::ShapeMismatch {
            op: "verify_group",
            left: a.shape(),
            right: x.shape(),
        });
    }
    let scale = a.spectral_norm() * x.spectral_norm();
    let ax = a * x;
    let xa = x * a;
    let res_axa = bilinear_residual(&(&ax * a), a, scale);
    let res_xax = bilinear_residual(&(&xa * x), x, scale);
    let res_comm = bilinear_residual(&ax, &xa, scale);
    let accepted = res_axa <= ctx.eq_tol && res_xax <= ctx.eq_tol && res_comm <= ctx.eq_tol;
    Ok(GroupWitness {
        x: x.clone(),
        res_axa,
        res_xax,
        res_comm,
        accepted,
    })
}

/// Smallest singular value of `a` restricted to its own range, relative to
/// `σ_max(a)`: `σ_min(a·U_r) / σ_1` where `U_r` spans `R(a)`. Zero exactly
/// when `rank(a²) < rank(a)`; 1 when `a` has rank zero.
///
/// This is the quantity [`crate::specrep`] thresholds when it computes the
/// rank of `a²`, so group existence and `rank(a) = rank(a²)` are decided
/// identically.
pub fn group_core_ratio(a: &ComplexMatrix, ctx: &NumericContext) -> f64 {
    let svd = Svd::new(a);
    let r = svd.rank(ctx);
    if r == 0 {
        return 1.0;
    }
    let restricted = ComplexMatrix::wrap(a.as_nalgebra() * svd.range_basis(r));
    Svd::new(&restricted).s[r - 1] / svd.largest()
}

/// Group inverse `a♯ = f·(g·f)⁻²·g` from the full-rank factorization
/// `a = f·g`.
///
/// `g·f` is singular exactly when `rank(a²) < rank(a)`; that case (judged by
/// [`group_core_ratio`] against `rank_tol`), and the case where the computed
/// candidate does not pass [`verify_group`], are reported as
/// [`Error::NoGroupInverse`].
pub fn group_inverse(a: &ComplexMatrix, ctx: &NumericContext) -> Result<ComplexMatrix> {
    require_square("group_inverse", a)?;
    let frf = full_rank_factorization(a, ctx);
    if frf.rank == 0 {
        return Ok(ComplexMatrix::zeros(a.rows(), a.cols()));
    }
    let ratio = group_core_ratio(a, ctx);
    let fail = Error::NoGroupInverse {
        min_singular_ratio: ratio,
    };
    if ratio <= ctx.rank_tol {
        return Err(fail);
    }
    let core = &frf.g * &frf.f;
    let core_inv = core.solve(&ComplexMatrix::identity(frf.rank)).ok_or(fail.clone())?;
    let x = ComplexMatrix::product(&[&frf.f, &core_inv, &core_inv, &frf.g]);
    if !verify_group(a, &x, ctx)?.accepted {
        return Err(fail);
    }
    Ok(x)
}

/// Why an element was not certified EP.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NotEpReason {
    /// `‖aa† − a†a‖` above tolerance (`ℓ2`).
    Commutator,
    NoGroupInverse,
    NotHermitian,
    Inconclusive,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EpVerdict {
    pub holds: bool,
    /// `ℓ2`: relative residual of `aa† − a†a`. Other norms: relative residual
    /// of `aa♯ − a♯a` when `a♯` exists, otherwise infinity.
    pub residual: f64,
    pub reason: Option<NotEpReason>,
}

/// EP test. Under `ℓ2` compares `aa†` with `a†a`; under other norms goes
/// through [`mp_via_group`].
pub fn is_ep(a: &ComplexMatrix, norm: NormSpec, ctx: &NumericContext) -> Result<EpVerdict> {
    require_square("is_ep", a)?;
    if norm == NormSpec::L2 {
        let dag = mp_inverse(a, ctx);
        let cmp = approx_eq(&(a * &dag), &(&dag * a), ctx)?;
        return Ok(EpVerdict {
            holds: cmp.holds,
            residual: cmp.residual,
            reason: (!cmp.holds).then_some(NotEpReason::Commutator),
        });
    }
    let sharp = match group_inverse(a, ctx) {
        Ok(x) => x,
        Err(Error::NoGroupInverse { .. }) => {
            return Ok(EpVerdict {
                holds: false,
                residual: f64::INFINITY,
                reason: Some(NotEpReason::NoGroupInverse),
            })
        }
        Err(e) => return Err(e),
    };
    let comm: Comparison = approx_eq(&(a * &sharp), &(&sharp * a), ctx)?;
    let reason = match is_hermitian(&(a * &sharp), norm, ctx)?.verdict {
        HermitianVerdict::Hermitian => None,
        HermitianVerdict::NotHermitian => Some(NotEpReason::NotHermitian),
        HermitianVerdict::Inconclusive => Some(NotEpReason::Inconclusive),
    };
    Ok(EpVerdict {
        holds: reason.is_none(),
        residual: comm.residual,
        reason,
    })
}

/// `a† = a♯` for EP elements: returns `a♯` when it exists and `aa♯` is
/// hermitian under `norm`.
pub fn mp_via_group(a: &ComplexMatrix, norm: NormSpec, ctx: &NumericContext) -> Result<ComplexMatrix> {
    let sharp = match group_inverse(a, ctx) {
        Ok(x) => x,
        Err(Error::NoGroupInverse { .. }) => return Err(Error::NotEp("no group inverse")),
        Err(e) => return Err(e),
    };
    let report = is_hermitian(&(a * &sharp), norm, ctx)?;
    match report.verdict {
        HermitianVerdict::Hermitian => Ok(sharp),
        HermitianVerdict::NotHermitian => Err(Error::NotEp("a·a♯ is not hermitian")),
        HermitianVerdict::Inconclusive => Err(Error::Inconclusive {
            deviation: report.max_exp_deviation.max(report.spectrum_imag_max),
        }),
    }
}
