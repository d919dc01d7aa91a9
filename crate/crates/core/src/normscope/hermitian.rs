use alloc::vec::Vec;
use core::f64::consts::PI;

use nalgebra::ComplexField;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use super::{matrix_exp, operator_norm, vector_norm, NormSpec};
use crate::numkernel::{eigenvalues, ComplexMatrix, NumericContext, C64};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HermitianVerdict {
    Hermitian,
    NotHermitian,
    Inconclusive,
}

/// Evidence behind a hermitian verdict.
///
/// All quantities refer to the normalized element `B = a / ‖a‖`, so the
/// report is invariant under nonzero real scaling of `a`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HermitianReport {
    pub verdict: HermitianVerdict,
    /// `max |‖exp(itB)‖ − 1|` over the grid.
    pub max_exp_deviation: f64,
    /// `(‖I + itB‖ − 1) / t` at small positive and negative `t`.
    pub derivative_estimate: (f64, f64),
    /// Largest `|Im λ|` over the eigenvalues of `B`.
    pub spectrum_imag_max: f64,
    /// Grid point where the deviation peaks.
    pub witness_t: f64,
}

impl HermitianReport {
    pub fn is_hermitian(&self) -> bool {
        self.verdict == HermitianVerdict::Hermitian
    }

    fn trivial() -> Self {
        Self {
            verdict: HermitianVerdict::Hermitian,
            max_exp_deviation: 0.0,
            derivative_estimate: (0.0, 0.0),
            spectrum_imag_max: 0.0,
            witness_t: 0.0,
        }
    }
}

const DERIVATIVE_STEP: f64 = 1e-6;

/// Grid point `j` of `n` on the symmetric grid over `[-π, π]`.
fn grid_point(j: usize, n: usize) -> f64 {
    if n == 1 {
        return PI;
    }
    -PI + 2.0 * PI * (j as f64) / ((n - 1) as f64)
}

/// Norm-relative hermitian test: `‖exp(itB)‖ = 1` on the `t` grid, backed by
/// the real-spectrum check.
pub fn is_hermitian(a: &ComplexMatrix, norm: NormSpec, ctx: &NumericContext) -> Result<HermitianReport> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            op: "is_hermitian",
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let scale = operator_norm(a, norm);
    if a.is_zero() || scale == 0.0 {
        return Ok(HermitianReport::trivial());
    }
    let b = a.scale_real(1.0 / scale);
    let n = a.rows();
    let i = C64::new(0.0, 1.0);

    let mut max_dev = -1.0f64;
    let mut witness_t = 0.0;
    for j in 0..ctx.exp_grid_points {
        let t = grid_point(j, ctx.exp_grid_points);
        let e = matrix_exp(&b.scale(i * t))?;
        let dev = (operator_norm(&e, norm) - 1.0).abs();
        if dev > max_dev {
            max_dev = dev;
            witness_t = t;
        }
    }

    let id = ComplexMatrix::identity(n);
    let h = DERIVATIVE_STEP;
    let plus = (operator_norm(&(&id + &b.scale(i * h)), norm) - 1.0) / h;
    let minus = (operator_norm(&(&id + &b.scale(-i * h)), norm) - 1.0) / (-h);

    let spectrum_imag_max = eigenvalues(&b)?.iter().map(|z| z.im.abs()).fold(0.0, f64::max);

    let verdict = if max_dev <= ctx.herm_tol && spectrum_imag_max <= ctx.herm_tol {
        HermitianVerdict::Hermitian
    } else if max_dev > ctx.margin || spectrum_imag_max > ctx.margin {
        HermitianVerdict::NotHermitian
    } else {
        HermitianVerdict::Inconclusive
    };
    Ok(HermitianReport {
        verdict,
        max_exp_deviation: max_dev,
        derivative_estimate: (plus, minus),
        spectrum_imag_max,
        witness_t,
    })
}

/// Semi-inner-product probe for smooth norms.
///
/// Samples `sip_samples` random vectors of unit `ℓp` norm (seeded from
/// `ctx.sip_seed`) and returns the largest
/// `|Im Σ_k (ax)_k · conj(x_k) · |x_k|^{p−2}|`. Hermitian elements give 0.
pub fn sip_hermitian_probe(a: &ComplexMatrix, norm: NormSpec, ctx: &NumericContext) -> Result<f64> {
    if !norm.is_smooth() {
        return Err(Error::NonSmoothNorm {
            op: "sip_hermitian_probe",
            norm: alloc::format!("{norm}"),
        });
    }
    if !a.is_square() {
        return Err(Error::NotSquare {
            op: "sip_hermitian_probe",
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    let p = norm.exponent();
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.sip_seed);
    let mut worst = 0.0f64;
    for _ in 0..ctx.sip_samples {
        let mut x: Vec<C64> = (0..n)
            .map(|_| C64::new(StandardNormal.sample(&mut rng), StandardNormal.sample(&mut rng)))
            .collect();
        let nx = vector_norm(&x, norm);
        if nx == 0.0 {
            continue;
        }
        x.iter_mut().for_each(|z| *z /= nx);
        let ax = a.mul_vec(&x);
        let form: C64 = ax
            .iter()
            .zip(&x)
            .map(|(y, xk)| {
                let r = xk.modulus();
                if r == 0.0 {
                    C64::new(0.0, 0.0)
                } else {
                    y * xk.conj() * r.powf(p - 2.0)
                }
            })
            .sum();
        worst = worst.max(form.im.abs());
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::FRAC_PI_2;

    fn ctx() -> NumericContext {
        NumericContext::default()
    }

    fn swap() -> ComplexMatrix {
        ComplexMatrix::from_real(2, 2, &[0.0, 1.0, 1.0, 0.0]).unwrap()
    }

    #[test]
    fn swap_is_hermitian_under_l2() {
        let r = is_hermitian(&swap(), NormSpec::L2, &ctx()).unwrap();
        assert_eq!(r.verdict, HermitianVerdict::Hermitian);
        assert!(r.max_exp_deviation < 1e-12);
    }

    /// exp(itS) = cos t·I + i sin t·S, so ‖exp(itS)‖_∞ = |cos t| + |sin t|.
    fn closed_form_linf_deviation(t: f64) -> f64 {
        t.cos().abs() + t.sin().abs() - 1.0
    }

    #[test]
    fn swap_is_not_hermitian_under_linf() {
        let c = ctx();
        let r = is_hermitian(&swap(), NormSpec::Linf, &c).unwrap();
        assert_eq!(r.verdict, HermitianVerdict::NotHermitian);
        assert!(r.max_exp_deviation >= 0.41);
        // The grid maximum matches the closed form evaluated on the same grid.
        let oracle = (0..c.exp_grid_points)
            .map(|j| closed_form_linf_deviation(grid_point(j, c.exp_grid_points)))
            .fold(0.0, f64::max);
        assert!((r.max_exp_deviation - oracle).abs() < 1e-12);
        // |cos t| + |sin t| is π/2-periodic and peaks at odd multiples of π/4.
        let phase = r.witness_t.abs() % FRAC_PI_2;
        assert!((phase - core::f64::consts::FRAC_PI_4).abs() < 0.06, "witness {}", r.witness_t);
        assert!(r.spectrum_imag_max < 1e-12);
    }

    #[test]
    fn real_diagonals_are_hermitian_under_every_norm() {
        let d = ComplexMatrix::real_diag(&[2.5, -1.0, 0.0]);
        for norm in [NormSpec::L1, NormSpec::L2, NormSpec::Linf, NormSpec::Lp(3.0)] {
            let r = is_hermitian(&d, norm, &ctx()).unwrap();
            assert_eq!(r.verdict, HermitianVerdict::Hermitian, "{norm}");
        }
    }

    #[test]
    fn zero_is_hermitian_and_rectangular_is_rejected() {
        assert!(is_hermitian(&ComplexMatrix::zeros(3, 3), NormSpec::Linf, &ctx())
            .unwrap()
            .is_hermitian());
        assert!(is_hermitian(&ComplexMatrix::zeros(2, 3), NormSpec::L2, &ctx()).is_err());
    }

    #[test]
    fn rotation_generator_is_not_hermitian() {
        let j = ComplexMatrix::from_real(2, 2, &[0.0, -1.0, 1.0, 0.0]).unwrap();
        let r = is_hermitian(&j, NormSpec::L2, &ctx()).unwrap();
        assert_eq!(r.verdict, HermitianVerdict::NotHermitian);
        assert!((r.spectrum_imag_max - 1.0).abs() < 1e-12);
    }

    #[test]
    fn derivative_estimate_vanishes_for_self_adjoint() {
        let h = ComplexMatrix::from_real(2, 2, &[1.0, 2.0, 2.0, -3.0]).unwrap();
        let r = is_hermitian(&h, NormSpec::L2, &ctx()).unwrap();
        assert!(r.derivative_estimate.0.abs() < 1e-5);
        assert!(r.derivative_estimate.1.abs() < 1e-5);
    }

    #[test]
    fn sip_probe_examples() {
        let c = ctx();
        let h = ComplexMatrix::from_row_major(
            2,
            2,
            alloc::vec![C64::new(1.0, 0.0), C64::new(2.0, -1.0), C64::new(2.0, 1.0), C64::new(-0.5, 0.0)],
        )
        .unwrap();
        assert!(sip_hermitian_probe(&h, NormSpec::L2, &c).unwrap() < 1e-12);

        let ii = ComplexMatrix::identity(3).scale(C64::new(0.0, 1.0));
        for norm in [NormSpec::L2, NormSpec::Lp(3.0), NormSpec::Lp(1.5)] {
            let v = sip_hermitian_probe(&ii, norm, &c).unwrap();
            assert!((v - 1.0).abs() < 1e-12, "{norm}: {v}");
        }

        let d = ComplexMatrix::real_diag(&[1.0, -2.0, 0.5]);
        assert!(sip_hermitian_probe(&d, NormSpec::Lp(3.0), &c).unwrap() < 1e-12);

        assert!(matches!(
            sip_hermitian_probe(&d, NormSpec::Linf, &c),
            Err(Error::NonSmoothNorm { .. })
        ));
        assert!(sip_hermitian_probe(&d, NormSpec::L1, &c).is_err());
    }

    #[test]
    fn sip_probe_real_diagonal_direct_sum() {
        // Σ d_k |x_k|^p is real for every x, so the imaginary part vanishes.
        let d = [1.0, -2.0, 0.5];
        let x = [C64::new(0.3, 0.4), C64::new(-0.2, 0.7), C64::new(0.9, -0.1)];
        let p = 3.0f64;
        let s: C64 = d
            .iter()
            .zip(&x)
            .map(|(dk, xk)| xk * *dk * xk.conj() * xk.modulus().powf(p - 2.0))
            .sum();
        assert!(s.im.abs() < 1e-15);
    }
}
