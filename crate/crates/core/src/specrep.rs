//! Spectra, ascent/descent, quasinilpotence and the regular representations
//! `L_a(x) = ax`, `R_a(x) = xa` of the matrix algebra on itself.
//!
//! Lifts use column stacking: `vec(a·x·b) = (bᵀ ⊗ a)·vec(x)`.

use alloc::vec::Vec;

use nalgebra::{ComplexField, DMatrix};

use crate::numkernel::{eigenvalues, ComplexMatrix, NumericContext, Svd, C64};
use crate::{Error, Result};

/// Cluster radius for spectrum set comparisons, relative to the scale.
///
/// Eigenvalues of a defective `k×k` block scatter on a circle of radius
/// about `ε^{1/k}`; clusters must absorb that scatter at `n ≤ 6`.
pub const CLUSTER_RADIUS: f64 = 3e-2;

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

#[derive(Clone, Debug, PartialEq)]
pub struct SpectralData {
    /// With multiplicity, in deflation order.
    pub eigenvalues: Vec<C64>,
    pub spectral_radius: f64,
}

pub fn spectrum(a: &ComplexMatrix) -> Result<SpectralData> {
    let eigenvalues = eigenvalues(a)?;
    let spectral_radius = eigenvalues.iter().map(|l| l.modulus()).fold(0.0, f64::max);
    Ok(SpectralData {
        eigenvalues,
        spectral_radius,
    })
}

/// Single-linkage clusters of `values` within `radius`, as
/// `(centroid, multiplicity)`.
///
/// Centroids of a full cluster are well conditioned even when the individual
/// eigenvalues of a Jordan block are not.
pub fn cluster(values: &[C64], radius: f64) -> Vec<(C64, usize)> {
    let n = values.len();
    let mut label: Vec<usize> = (0..n).collect();
    fn root(label: &mut [usize], mut i: usize) -> usize {
        while label[i] != i {
            label[i] = label[label[i]];
            i = label[i];
        }
        i
    }
    for i in 0..n {
        for j in i + 1..n {
            if (values[i] - values[j]).modulus() <= radius {
                let (ri, rj) = (root(&mut label, i), root(&mut label, j));
                label[ri.max(rj)] = ri.min(rj);
            }
        }
    }
    let mut out: Vec<(usize, C64, usize)> = Vec::new();
    for (i, &z) in values.iter().enumerate() {
        let r = root(&mut label, i);
        match out.iter_mut().find(|(id, _, _)| *id == r) {
            Some(entry) => {
                entry.1 += z;
                entry.2 += 1;
            }
            None => out.push((r, z, 1)),
        }
    }
    out.into_iter()
        .map(|(_, sum, k)| (sum / C64::new(k as f64, 0.0), k))
        .collect()
}

/// Hausdorff distance between the cluster centroids of two spectra, relative
/// to `max(1, scale)`; multiplicities are ignored. Clusters use radius
/// `CLUSTER_RADIUS·max(1, scale)`.
pub fn spectral_set_distance(x: &[C64], y: &[C64], scale: f64) -> f64 {
    let scale = scale.max(1.0);
    let cx = cluster(x, CLUSTER_RADIUS * scale);
    let cy = cluster(y, CLUSTER_RADIUS * scale);
    if cx.is_empty() || cy.is_empty() {
        return if cx.is_empty() && cy.is_empty() { 0.0 } else { f64::INFINITY };
    }
    let directed = |p: &[(C64, usize)], q: &[(C64, usize)]| {
        p.iter()
            .map(|(a, _)| q.iter().map(|(b, _)| (a - b).modulus()).fold(f64::INFINITY, f64::min))
            .fold(0.0, f64::max)
    };
    directed(&cx, &cy).max(directed(&cy, &cx)) / scale
}

/// `rank(a^k)` for `k = 0..=n+1`.
///
/// Powers are never formed: the chain keeps an orthonormal basis `Q_k` of
/// `R(a^k)` and takes `R(a^{k+1}) = R(a·Q_k)`, thresholding singular values
/// at `rank_tol·‖a‖`. The `k = 1` entry therefore equals
/// [`crate::numkernel::rank`].
pub fn power_ranks(a: &ComplexMatrix, ctx: &NumericContext) -> Result<Vec<usize>> {
    require_square("power_ranks", a)?;
    let n = a.rows();
    Ok(range_chain(a, ctx.rank_tol * a.spectral_norm(), n + 1))
}

fn range_chain(a: &ComplexMatrix, cutoff: f64, steps: usize) -> Vec<usize> {
    let n = a.rows();
    let mut ranks = Vec::with_capacity(steps + 1);
    ranks.push(n);
    let mut basis: DMatrix<C64> = DMatrix::identity(n, n);
    for _ in 0..steps {
        if basis.ncols() == 0 || cutoff == 0.0 {
            ranks.push(0);
            continue;
        }
        let image = ComplexMatrix::wrap(a.as_nalgebra() * &basis);
        let svd = Svd::new(&image);
        let r = svd.count_above(cutoff);
        basis = svd.range_basis(r);
        ranks.push(r);
    }
    ranks
}

fn first_stable(ranks: &[usize]) -> usize {
    ranks
        .windows(2)
        .position(|w| w[0] == w[1])
        .unwrap_or(ranks.len() - 1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AscentDescent {
    pub ascent: usize,
    pub descent: usize,
}

/// First `k` with `R(a^k) = R(a^{k+1})`.
pub fn descent(a: &ComplexMatrix, ctx: &NumericContext) -> Result<usize> {
    Ok(first_stable(&power_ranks(a, ctx)?))
}

/// First `k` with `N(a^k) = N(a^{k+1})`.
///
/// `dim N(a^k) = n − dim R((a^H)^k)`; the ranks come from the chain on the
/// adjoint, so this is computed independently of [`descent`].
pub fn ascent(a: &ComplexMatrix, ctx: &NumericContext) -> Result<usize> {
    require_square("ascent", a)?;
    let n = a.rows();
    let nullities: Vec<usize> = power_ranks(&a.adjoint(), ctx)?
        .into_iter()
        .map(|r| n - r)
        .collect();
    Ok(first_stable(&nullities))
}

pub fn ascent_descent(a: &ComplexMatrix, ctx: &NumericContext) -> Result<AscentDescent> {
    Ok(AscentDescent {
        ascent: ascent(a, ctx)?,
        descent: descent(a, ctx)?,
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuasinilpotentReport {
    pub holds: bool,
    pub spectral_radius: f64,
    /// `eq_tol·max(1, ‖a‖)`.
    pub bound: f64,
    /// Smallest `k` with `rank(a^k) = 0` under the cutoff
    /// `rank_tol·max(1, ‖a‖)`, if any `k ≤ n`.
    pub nilpotent_index: Option<usize>,
}

/// `σ(a) = {0}`: the spectral radius is within `eq_tol·max(1, ‖a‖)`, or the
/// power chain reaches rank zero (finite-dimensional quasinilpotents are
/// nilpotent).
///
/// The chain matters for defective samples such as `S·N·S⁻¹`, whose computed
/// eigenvalues carry errors of order `ε^{1/n}`.
pub fn quasinilpotent_report(a: &ComplexMatrix, ctx: &NumericContext) -> Result<QuasinilpotentReport> {
    let spec = spectrum(a)?;
    let scale = a.spectral_norm().max(1.0);
    let bound = ctx.eq_tol * scale;
    let n = a.rows();
    let chain = range_chain(a, ctx.rank_tol * scale, n);
    let nilpotent_index = chain.iter().position(|&r| r == 0);
    Ok(QuasinilpotentReport {
        holds: spec.spectral_radius <= bound || nilpotent_index.is_some(),
        spectral_radius: spec.spectral_radius,
        bound,
        nilpotent_index,
    })
}

pub fn is_quasinilpotent(a: &ComplexMatrix, ctx: &NumericContext) -> Result<bool> {
    Ok(quasinilpotent_report(a, ctx)?.holds)
}

/// Matrix of `x ↦ a·x` on column-stacked `n×n` matrices: `I ⊗ a`.
pub fn left_mult(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    require_square("left_mult", a)?;
    Ok(ComplexMatrix::identity(a.rows()).kron(a))
}

/// Matrix of `x ↦ x·a` on column-stacked `n×n` matrices: `aᵀ ⊗ I`.
pub fn right_mult(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    require_square("right_mult", a)?;
    Ok(a.transpose().kron(&ComplexMatrix::identity(a.rows())))
}

/// Column-stacking `vec`.
pub fn vectorize(x: &ComplexMatrix) -> Vec<C64> {
    (0..x.cols()).flat_map(|j| x.column(j)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geninv::{group_inverse, mp_inverse};
    use crate::numkernel::{rank, relative_residual};
    use num_traits::Float;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn ctx() -> NumericContext {
        NumericContext::default()
    }

    fn random(n: usize, rng: &mut ChaCha8Rng) -> ComplexMatrix {
        let e: Vec<C64> = (0..n * n)
            .map(|_| C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
            .collect();
        ComplexMatrix::from_row_major(n, n, e).unwrap()
    }

    fn jordan(k: usize) -> ComplexMatrix {
        let mut e = alloc::vec![0.0; k * k];
        for i in 0..k.saturating_sub(1) {
            e[i * k + i + 1] = 1.0;
        }
        ComplexMatrix::from_real(k, k, &e).unwrap()
    }

    fn cbrt(z: C64) -> C64 {
        let r = Float::cbrt(z.modulus());
        let t = Float::atan2(z.im, z.re) / 3.0;
        C64::new(r * Float::cos(t), r * Float::sin(t))
    }

    fn csqrt(z: C64) -> C64 {
        let r = Float::sqrt(z.modulus());
        let t = Float::atan2(z.im, z.re) / 2.0;
        C64::new(r * Float::cos(t), r * Float::sin(t))
    }

    /// Roots of `x³ + b x² + c x + d` by Cardano, polished with Newton steps.
    fn cubic_roots(b: C64, c: C64, d: C64) -> [C64; 3] {
        let three = C64::new(3.0, 0.0);
        let p = c - b * b / three;
        let q = C64::new(2.0, 0.0) * b * b * b / C64::new(27.0, 0.0) - b * c / three + d;
        let disc = csqrt(q * q / C64::new(4.0, 0.0) + p * p * p / C64::new(27.0, 0.0));
        let mut u = cbrt(-q / C64::new(2.0, 0.0) + disc);
        if u.modulus() < 1e-300 {
            u = cbrt(-q / C64::new(2.0, 0.0) - disc);
        }
        let w = C64::new(-0.5, 0.75f64.sqrt());
        let mut roots = [C64::new(0.0, 0.0); 3];
        for (k, root) in roots.iter_mut().enumerate() {
            let uk = u * w.powu(k as u32);
            let t = if uk.modulus() < 1e-300 { uk } else { uk - p / (three * uk) };
            *root = t - b / three;
        }
        for root in roots.iter_mut() {
            for _ in 0..3 {
                let x = *root;
                let f = ((x + b) * x + c) * x + d;
                let df = (three * x + C64::new(2.0, 0.0) * b) * x + c;
                if df.modulus() > 1e-12 {
                    *root = x - f / df;
                }
            }
        }
        roots
    }

    /// Characteristic polynomial of a 3×3 matrix: trace, principal 2-minors,
    /// determinant.
    fn char_poly(a: &ComplexMatrix) -> (C64, C64, C64) {
        let g = |i, j| a.get(i, j);
        let tr = g(0, 0) + g(1, 1) + g(2, 2);
        let m2 = g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0) + g(0, 0) * g(2, 2) - g(0, 2) * g(2, 0)
            + g(1, 1) * g(2, 2)
            - g(1, 2) * g(2, 1);
        let det = g(0, 0) * (g(1, 1) * g(2, 2) - g(1, 2) * g(2, 1))
            - g(0, 1) * (g(1, 0) * g(2, 2) - g(1, 2) * g(2, 0))
            + g(0, 2) * (g(1, 0) * g(2, 1) - g(1, 1) * g(2, 0));
        (-tr, m2, -det)
    }

    fn multiset_error(x: &[C64], y: &[C64; 3]) -> f64 {
        const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        PERMS
            .iter()
            .map(|p| (0..3).map(|i| (x[i] - y[p[i]]).modulus()).fold(0.0, f64::max))
            .fold(f64::INFINITY, f64::min)
    }

    #[test]
    fn spectrum_examples() {
        let s = spectrum(&ComplexMatrix::real_diag(&[1.0, 2.0])).unwrap();
        assert_eq!(s.spectral_radius, 2.0);
        let mut re: Vec<f64> = s.eigenvalues.iter().map(|l| l.re).collect();
        re.sort_by(f64::total_cmp);
        assert_eq!(re, [1.0, 2.0]);
        let s = spectrum(&jordan(2)).unwrap();
        assert_eq!(s.eigenvalues.len(), 2);
        assert_eq!(s.spectral_radius, 0.0);
        assert!(spectrum(&ComplexMatrix::zeros(2, 3)).is_err());
    }

    #[test]
    fn spectrum_matches_cubic_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let a = random(3, &mut rng);
            let (b, c, d) = char_poly(&a);
            let oracle = cubic_roots(b, c, d);
            let s = spectrum(&a).unwrap();
            let err = multiset_error(&s.eigenvalues, &oracle) / s.spectral_radius.max(1.0);
            assert!(err < 1e-8, "{err}");
        }
    }

    #[test]
    fn ascent_descent_examples() {
        let c = ctx();
        let inv = ComplexMatrix::from_real(2, 2, &[2.0, 1.0, 0.0, 3.0]).unwrap();
        assert_eq!(ascent_descent(&inv, &c).unwrap(), AscentDescent { ascent: 0, descent: 0 });
        for k in 1..=6 {
            assert_eq!(
                ascent_descent(&jordan(k), &c).unwrap(),
                AscentDescent { ascent: k, descent: k }
            );
        }
        let d = ComplexMatrix::real_diag(&[1.0, 0.0]);
        assert_eq!(ascent_descent(&d, &c).unwrap(), AscentDescent { ascent: 1, descent: 1 });
        let z = ComplexMatrix::zeros(3, 3);
        assert_eq!(ascent_descent(&z, &c).unwrap(), AscentDescent { ascent: 1, descent: 1 });
        assert_eq!(ascent_descent(&ComplexMatrix::zeros(0, 0), &c).unwrap().descent, 0);
    }

    #[test]
    fn power_ranks_match_direct_ranks_on_small_powers() {
        let c = ctx();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..20 {
            let a = random(4, &mut rng);
            let b = &(&a * &jordan(4)) * &a.adjoint();
            let ranks = power_ranks(&b, &c).unwrap();
            assert_eq!(ranks[1], rank(&b, &c));
            assert_eq!(ranks[2], rank(&(&b * &b), &c));
        }
    }

    #[test]
    fn jordan_with_eigenvalue_block() {
        // diag(J_3, 2): ascent = descent = 3
        let mut e = alloc::vec![0.0; 16];
        e[1] = 1.0;
        e[6] = 1.0;
        e[15] = 2.0;
        let a = ComplexMatrix::from_real(4, 4, &e).unwrap();
        assert_eq!(ascent_descent(&a, &ctx()).unwrap(), AscentDescent { ascent: 3, descent: 3 });
        assert!(group_inverse(&a, &ctx()).is_err());
    }

    #[test]
    fn quasinilpotent_examples() {
        let c = ctx();
        assert!(is_quasinilpotent(&jordan(4), &c).unwrap());
        assert!(!is_quasinilpotent(&ComplexMatrix::identity(3), &c).unwrap());
        assert!(is_quasinilpotent(&ComplexMatrix::zeros(2, 2), &c).unwrap());
        assert!(!is_quasinilpotent(&ComplexMatrix::real_diag(&[0.0, 1e-3]), &c).unwrap());

        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 2..=6 {
            let s = &random(n, &mut rng) + &ComplexMatrix::identity(n).scale_real(2.0);
            let s_inv = mp_inverse(&s, &c);
            let nil = ComplexMatrix::product(&[&s, &jordan(n), &s_inv]);
            let r = quasinilpotent_report(&nil, &c).unwrap();
            assert!(r.holds);
            assert_eq!(r.nilpotent_index, Some(n));
        }
    }

    #[test]
    fn group_existence_tracks_power_ranks() {
        let c = ctx();
        let cases = [
            jordan(3),
            ComplexMatrix::real_diag(&[1.0, 0.0, 0.0]),
            ComplexMatrix::from_real(2, 2, &[1.0, 1.0, 0.0, 0.0]).unwrap(),
            ComplexMatrix::from_real(2, 2, &[0.0, 1.0, 0.0, 0.0]).unwrap(),
        ];
        for a in &cases {
            let ad = ascent_descent(a, &c).unwrap();
            let ranks = power_ranks(a, &c).unwrap();
            let exists = group_inverse(a, &c).is_ok();
            assert_eq!(exists, ad.ascent <= 1 && ad.descent <= 1);
            assert_eq!(exists, ranks[1] == ranks[2]);
        }
    }

    #[test]
    fn lifts_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        assert_eq!(left_mult(&ComplexMatrix::identity(3)).unwrap(), ComplexMatrix::identity(9));
        assert_eq!(right_mult(&ComplexMatrix::identity(3)).unwrap(), ComplexMatrix::identity(9));
        let a = random(3, &mut rng);
        let b = random(3, &mut rng);
        let x = random(3, &mut rng);
        let lab = left_mult(&(&a * &b)).unwrap();
        assert!(relative_residual(&lab, &(&left_mult(&a).unwrap() * &left_mult(&b).unwrap())) < 1e-14);
        let rab = right_mult(&(&a * &b)).unwrap();
        assert!(relative_residual(&rab, &(&right_mult(&b).unwrap() * &right_mult(&a).unwrap())) < 1e-14);

        let vx = ComplexMatrix::from_row_major(9, 1, vectorize(&x)).unwrap();
        let lhs = &left_mult(&a).unwrap() * &vx;
        let ax = ComplexMatrix::from_row_major(9, 1, vectorize(&(&a * &x))).unwrap();
        assert!(relative_residual(&lhs, &ax) < 1e-14);
        let rhs = &right_mult(&a).unwrap() * &vx;
        let xa = ComplexMatrix::from_row_major(9, 1, vectorize(&(&x * &a))).unwrap();
        assert!(relative_residual(&rhs, &xa) < 1e-14);
        assert!(left_mult(&ComplexMatrix::zeros(2, 3)).is_err());
    }

    #[test]
    fn lift_spectrum_and_pseudoinverse() {
        let c = ctx();
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for n in 1..=4 {
            let a = random(n, &mut rng);
            let sa = spectrum(&a).unwrap();
            let sl = spectrum(&left_mult(&a).unwrap()).unwrap();
            assert_eq!(sl.eigenvalues.len(), n * n);
            assert!(spectral_set_distance(&sa.eigenvalues, &sl.eigenvalues, sa.spectral_radius) < 1e-10);
            let lhs = mp_inverse(&left_mult(&a).unwrap(), &c);
            let rhs = left_mult(&mp_inverse(&a, &c)).unwrap();
            assert!(relative_residual(&lhs, &rhs) < 1e-8);
        }
        let nil = jordan(5);
        let sl = spectrum(&left_mult(&nil).unwrap()).unwrap();
        assert!(spectral_set_distance(&[C64::new(0.0, 0.0)], &sl.eigenvalues, 1.0) < 1e-10);
    }

    #[test]
    fn cluster_and_distance() {
        let z = |re: f64, im: f64| C64::new(re, im);
        let cl = cluster(&[z(0.0, 0.0), z(0.01, 0.0), z(1.0, 0.0)], 0.02);
        assert_eq!(cl.len(), 2);
        assert!((cl[0].0 - z(0.005, 0.0)).modulus() < 1e-15);
        assert_eq!(cl[0].1, 2);
        assert_eq!(spectral_set_distance(&[z(1.0, 0.0)], &[z(1.0, 0.0), z(1.0, 0.0)], 1.0), 0.0);
        assert!((spectral_set_distance(&[z(1.0, 0.0)], &[z(2.0, 0.0)], 1.0) - 1.0).abs() < 1e-15);
        assert_eq!(spectral_set_distance(&[], &[], 1.0), 0.0);
        assert!(spectral_set_distance(&[], &[z(0.0, 0.0)], 1.0).is_infinite());
    }
}
