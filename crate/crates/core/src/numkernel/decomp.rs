use alloc::vec::Vec;

use nalgebra::{ComplexField, DMatrix};

use super::{ComplexMatrix, NumericContext, C64};
use crate::{Error, Result};

/// Thin SVD with singular values sorted in decreasing order.
#[derive(Clone, Debug)]
pub(crate) struct Svd {
    /// `rows × k` left singular vectors.
    pub u: DMatrix<C64>,
    pub s: Vec<f64>,
    /// `cols × k` right singular vectors (columns).
    pub v: DMatrix<C64>,
}

impl Svd {
    pub fn new(a: &ComplexMatrix) -> Self {
        let (rows, cols) = a.shape();
        if rows == 0 || cols == 0 {
            return Self {
                u: DMatrix::zeros(rows, 0),
                s: Vec::new(),
                v: DMatrix::zeros(cols, 0),
            };
        }
        let (u, s, v) = super::jacobi::svd(a.as_nalgebra(), true);
        let k = s.len();
        let mut order: Vec<usize> = (0..k).collect();
        order.sort_by(|&i, &j| s[j].total_cmp(&s[i]));
        let u = DMatrix::from_fn(rows, k, |i, j| u[(i, order[j])]);
        let v = DMatrix::from_fn(cols, k, |i, j| v[(i, order[j])]);
        let s = order.iter().map(|&i| s[i]).collect();
        Self { u, s, v }
    }

    pub fn largest(&self) -> f64 {
        self.s.first().copied().unwrap_or(0.0)
    }

    /// Number of singular values strictly above `threshold`.
    pub fn count_above(&self, threshold: f64) -> usize {
        self.s.iter().take_while(|&&x| x > threshold).count()
    }

    /// Rank under the relative cutoff `rank_tol × σ_max`.
    pub fn rank(&self, ctx: &NumericContext) -> usize {
        let top = self.largest();
        if top == 0.0 {
            return 0;
        }
        self.count_above(ctx.rank_tol * top)
    }

    /// Orthonormal basis of the first `r` left singular directions.
    pub fn range_basis(&self, r: usize) -> DMatrix<C64> {
        self.u.columns(0, r).into_owned()
    }
}

/// Number of singular values of `a` exceeding `rank_tol × σ_max(a)`.
pub fn rank(a: &ComplexMatrix, ctx: &NumericContext) -> usize {
    Svd::new(a).rank(ctx)
}

/// `a ≈ f·g` with `f` of full column rank and `g` of full row rank.
#[derive(Clone, Debug, PartialEq)]
pub struct FullRankFactorization {
    pub f: ComplexMatrix,
    pub g: ComplexMatrix,
    pub rank: usize,
}

/// Full-rank factorization from the thin SVD: `f = U_r Σ_r`, `g = V_r^H`.
///
/// A rank-zero input yields `f` of shape `rows × 0` and `g` of shape
/// `0 × cols`.
pub fn full_rank_factorization(a: &ComplexMatrix, ctx: &NumericContext) -> FullRankFactorization {
    let svd = Svd::new(a);
    let r = svd.rank(ctx);
    let f = DMatrix::from_fn(a.rows(), r, |i, j| svd.u[(i, j)] * svd.s[j]);
    let g = DMatrix::from_fn(r, a.cols(), |i, j| svd.v[(j, i)].conj());
    FullRankFactorization {
        f: ComplexMatrix::wrap(f),
        g: ComplexMatrix::wrap(g),
        rank: r,
    }
}

/// Outcome of a subspace-inclusion test.
///
/// `residual` is the first singular value of the concatenation beyond the
/// rank of the reference operand, relative to the largest one; it is what the
/// rank test compares against `rank_tol`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Inclusion {
    pub holds: bool,
    pub residual: f64,
}

fn normalized(a: &ComplexMatrix) -> ComplexMatrix {
    let n = a.spectral_norm();
    if n > 0.0 {
        a.scale_real(1.0 / n)
    } else {
        a.clone()
    }
}

fn inclusion_by_rank(reference: &ComplexMatrix, stacked: &ComplexMatrix, ctx: &NumericContext) -> Inclusion {
    let r_ref = rank(reference, ctx);
    let svd = Svd::new(stacked);
    let r_all = svd.rank(ctx);
    let top = svd.largest();
    let residual = match svd.s.get(r_ref) {
        Some(&s) if top > 0.0 => s / top,
        _ => 0.0,
    };
    Inclusion {
        holds: r_all == r_ref,
        residual,
    }
}

/// `R(x) ⊆ R(y)`, decided as `rank([y | x]) = rank(y)`.
///
/// Both operands are scaled to unit spectral norm first; ranges do not depend
/// on scale.
pub fn range_included(x: &ComplexMatrix, y: &ComplexMatrix, ctx: &NumericContext) -> Result<Inclusion> {
    if x.rows() != y.rows() {
        return Err(Error::ShapeMismatch {
            op: "range_included",
            left: x.shape(),
            right: y.shape(),
        });
    }
    let y = normalized(y);
    let stacked = y.hstack(&normalized(x))?;
    Ok(inclusion_by_rank(&y, &stacked, ctx))
}

/// `N(x) ⊆ N(y)`, decided as `rank([x ; y]) = rank(x)`.
pub fn null_included(x: &ComplexMatrix, y: &ComplexMatrix, ctx: &NumericContext) -> Result<Inclusion> {
    if x.cols() != y.cols() {
        return Err(Error::ShapeMismatch {
            op: "null_included",
            left: x.shape(),
            right: y.shape(),
        });
    }
    let x = normalized(x);
    let stacked = x.vstack(&normalized(y))?;
    Ok(inclusion_by_rank(&x, &stacked, ctx))
}

/// Verdict plus the relative residual it was judged on.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Comparison {
    pub holds: bool,
    pub residual: f64,
}

impl Comparison {
    pub fn judge(residual: f64, ctx: &NumericContext) -> Self {
        Self {
            holds: residual <= ctx.eq_tol,
            residual,
        }
    }
}

/// `‖x − y‖₂ / max(1, ‖x‖₂, ‖y‖₂)`.
pub fn relative_residual(x: &ComplexMatrix, y: &ComplexMatrix) -> f64 {
    let diff = (x - y).spectral_norm();
    diff / 1f64.max(x.spectral_norm()).max(y.spectral_norm())
}

pub fn approx_eq(x: &ComplexMatrix, y: &ComplexMatrix, ctx: &NumericContext) -> Result<Comparison> {
    if x.shape() != y.shape() {
        return Err(Error::ShapeMismatch {
            op: "approx_eq",
            left: x.shape(),
            right: y.shape(),
        });
    }
    Ok(Comparison::judge(relative_residual(x, y), ctx))
}

/// Eigenvalues with multiplicity, by shifted QR on the Hessenberg form.
pub fn eigenvalues(a: &ComplexMatrix) -> Result<Vec<C64>> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            op: "eigenvalues",
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    if a.rows() == 0 {
        return Ok(Vec::new());
    }
    super::eig::eigenvalues(a.as_nalgebra()).ok_or(Error::EigenSolver)
}

/// Spectral radius from [`eigenvalues`].
pub fn spectral_radius(a: &ComplexMatrix) -> Result<f64> {
    Ok(eigenvalues(a)?.iter().map(|z| z.modulus()).fold(0.0, f64::max))
}
