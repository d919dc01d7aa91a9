use nalgebra::ComplexField;

use crate::numkernel::ComplexMatrix;
use crate::{Error, Result};

// Degree-13 Padé coefficients and the matching scaling threshold on ‖A‖₁.
const PADE13: [f64; 14] = [
    64_764_752_532_480_000.0,
    32_382_376_266_240_000.0,
    7_771_770_303_897_600.0,
    1_187_353_796_428_800.0,
    129_060_195_264_000.0,
    10_559_470_521_600.0,
    670_442_572_800.0,
    33_522_128_640.0,
    1_323_241_920.0,
    40_840_800.0,
    960_960.0,
    16_380.0,
    182.0,
    1.0,
];
const THETA13: f64 = 5.371_920_351_148_152;

fn one_norm(a: &ComplexMatrix) -> f64 {
    let m = a.as_nalgebra();
    (0..m.ncols())
        .map(|j| m.column(j).iter().map(|z| z.modulus()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Matrix exponential by scaling and squaring around a degree-13 Padé
/// approximant.
pub fn matrix_exp(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            op: "matrix_exp",
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    let norm = one_norm(a);
    let squarings = if norm > THETA13 {
        (norm / THETA13).log2().ceil().max(0.0) as i32
    } else {
        0
    };
    let x = a.scale_real(0.5f64.powi(squarings));

    let b = &PADE13;
    let id = ComplexMatrix::identity(n);
    let x2 = &x * &x;
    let x4 = &x2 * &x2;
    let x6 = &x4 * &x2;
    let lin = |c6: f64, c4: f64, c2: f64, c0: f64| -> ComplexMatrix {
        let s = &(&x6.scale_real(c6) + &x4.scale_real(c4)) + &x2.scale_real(c2);
        &s + &id.scale_real(c0)
    };
    let high_u = &x6 * &(&(&x6.scale_real(b[13]) + &x4.scale_real(b[11])) + &x2.scale_real(b[9]));
    let u = &x * &(&high_u + &lin(b[7], b[5], b[3], b[1]));
    let high_v = &x6 * &(&(&x6.scale_real(b[12]) + &x4.scale_real(b[10])) + &x2.scale_real(b[8]));
    let v = &high_v + &lin(b[6], b[4], b[2], b[0]);

    let mut r = (&v - &u).solve(&(&v + &u)).ok_or(Error::EigenSolver)?;
    for _ in 0..squarings {
        r = &r * &r;
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkernel::{relative_residual, C64};
    use alloc::vec::Vec;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use rand_distr::{Distribution, StandardNormal};

    /// Plain Taylor series, used only as an oracle on inputs with ‖A‖ ≲ 1.
    fn taylor_oracle(a: &ComplexMatrix, terms: u32) -> ComplexMatrix {
        let n = a.rows();
        let mut term = ComplexMatrix::identity(n);
        let mut sum = term.clone();
        for k in 1..terms {
            term = (&term * a).scale_real(1.0 / k as f64);
            sum = &sum + &term;
        }
        sum
    }

    #[test]
    fn exp_of_zero_and_diagonal() {
        let z = ComplexMatrix::zeros(3, 3);
        assert_eq!(matrix_exp(&z).unwrap(), ComplexMatrix::identity(3));
        let d = ComplexMatrix::real_diag(&[core::f64::consts::LN_2, 0.0]);
        let e = matrix_exp(&d).unwrap();
        assert!(relative_residual(&e, &ComplexMatrix::real_diag(&[2.0, 1.0])) < 1e-15);
    }

    #[test]
    fn matches_taylor_oracle_on_random_inputs() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let entries: Vec<C64> = (0..16)
                .map(|_| C64::new(StandardNormal.sample(&mut rng), StandardNormal.sample(&mut rng)))
                .collect();
            let a = ComplexMatrix::from_row_major(4, 4, entries).unwrap();
            let a = a.scale_real(1.0 / a.spectral_norm());
            let e = matrix_exp(&a).unwrap();
            assert!(relative_residual(&e, &taylor_oracle(&a, 60)) <= 1e-10);
            // Large-norm inputs go through the squaring phase.
            let big = a.scale_real(20.0);
            let half = taylor_oracle(&a.scale_real(20.0 / 32.0), 60);
            let mut oracle = half;
            for _ in 0..5 {
                oracle = &oracle * &oracle;
            }
            assert!(relative_residual(&matrix_exp(&big).unwrap(), &oracle) <= 1e-10);
        }
    }

    #[test]
    fn exp_of_skew_rotation_generator() {
        // exp(θ [[0,-1],[1,0]]) is the rotation by θ.
        let th = 0.7f64;
        let g = ComplexMatrix::from_real(2, 2, &[0.0, -th, th, 0.0]).unwrap();
        let e = matrix_exp(&g).unwrap();
        let rot = ComplexMatrix::from_real(2, 2, &[th.cos(), -th.sin(), th.sin(), th.cos()]).unwrap();
        assert!(relative_residual(&e, &rot) < 1e-15);
    }
}
