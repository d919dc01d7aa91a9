//! One-sided (Hestenes) Jacobi SVD for complex matrices.
//!
//! nalgebra's bidiagonal SVD returned factors with `O(1)` reconstruction error
//! on some rank-deficient complex inputs, so every singular value in the crate
//! comes from here. Columns are orthogonalized by plane rotations until every
//! pair satisfies `|a_p^H a_q| ≤ ε·‖a_p‖·‖a_q‖`.

use alloc::vec::Vec;

use nalgebra::{ComplexField, DMatrix};

use super::C64;

const MAX_SWEEPS: usize = 80;

/// `a = u·diag(s)·v^H` with `u` of shape `m×k`, `v` of shape `n×k`,
/// `k = min(m, n)`; `s` is unsorted and nonnegative. `u` columns for zero
/// singular values are completed to an orthonormal set.
pub(crate) fn svd(a: &DMatrix<C64>, want_vectors: bool) -> (DMatrix<C64>, Vec<f64>, DMatrix<C64>) {
    let (m, n) = a.shape();
    if m < n {
        let (u, s, v) = svd(&a.adjoint(), want_vectors);
        return (v, s, u);
    }
    let mut w = a.clone();
    let mut v: DMatrix<C64> = if want_vectors {
        DMatrix::identity(n, n)
    } else {
        DMatrix::zeros(0, 0)
    };
    let eps = f64::EPSILON;
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let alpha: f64 = w.column(p).iter().map(|z| z.norm_sqr()).sum();
                let beta: f64 = w.column(q).iter().map(|z| z.norm_sqr()).sum();
                let gamma: C64 = w.column(p).iter().zip(w.column(q).iter()).map(|(x, y)| x.conj() * y).sum();
                let g = gamma.modulus();
                if g == 0.0 || g <= eps * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                // Phase-align column q so the inner product is real, then
                // apply the real symmetric Jacobi rotation.
                let phase = gamma.conj() / g;
                let zeta = (beta - alpha) / (2.0 * g);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                rotate(&mut w, p, q, phase, c, s);
                if want_vectors {
                    rotate(&mut v, p, q, phase, c, s);
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let s: Vec<f64> = (0..n)
        .map(|j| w.column(j).iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt())
        .collect();
    if !want_vectors {
        return (DMatrix::zeros(0, 0), s, v);
    }
    let mut u = DMatrix::zeros(m, n);
    let top = s.iter().copied().fold(0.0, f64::max);
    let mut missing = Vec::new();
    for (j, &sj) in s.iter().enumerate() {
        if sj > top * eps * (m as f64) && sj > 0.0 {
            let inv = C64::new(1.0 / sj, 0.0);
            u.set_column(j, &(w.column(j) * inv));
        } else {
            missing.push(j);
        }
    }
    complete_orthonormal(&mut u, &missing);
    (u, s, v)
}

fn rotate(x: &mut DMatrix<C64>, p: usize, q: usize, phase: C64, c: f64, s: f64) {
    let c = C64::new(c, 0.0);
    let s = C64::new(s, 0.0);
    for i in 0..x.nrows() {
        let xp = x[(i, p)];
        let xq = x[(i, q)] * phase;
        x[(i, p)] = c * xp - s * xq;
        x[(i, q)] = s * xp + c * xq;
    }
}

/// Fills the listed columns of `u` with unit vectors orthogonal to all other
/// columns: each is the standard basis vector with the largest component
/// outside the current span, orthogonalized twice.
fn complete_orthonormal(u: &mut DMatrix<C64>, missing: &[usize]) {
    let m = u.nrows();
    let mut filled: Vec<usize> = (0..u.ncols()).filter(|j| !missing.contains(j)).collect();
    for &j in missing {
        let mut best: Option<(f64, nalgebra::DVector<C64>)> = None;
        for e in 0..m {
            let mut cand = nalgebra::DVector::<C64>::zeros(m);
            cand[e] = C64::new(1.0, 0.0);
            for _ in 0..2 {
                for &k in &filled {
                    let proj: C64 = u.column(k).iter().zip(cand.iter()).map(|(x, y)| x.conj() * y).sum();
                    cand -= u.column(k) * proj;
                }
            }
            let len = cand.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if best.as_ref().is_none_or(|(l, _)| len > *l) {
                best = Some((len, cand));
            }
        }
        let (len, cand) = best.expect("at least one row");
        u.set_column(j, &(cand * C64::new(1.0 / len, 0.0)));
        filled.push(j);
    }
}
