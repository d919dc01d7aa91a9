use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use nalgebra::ComplexField;
use num_traits::Float;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::numkernel::{ComplexMatrix, C64};
use crate::{Error, Result};

/// Vector norm on `C^n`; matrices carry the induced operator norm.
///
/// Textual form: `l1`, `l2`, `linf`, `lp:<p>`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum NormSpec {
    L1,
    L2,
    Linf,
    /// `ℓp` with finite `p > 1`, `p ≠ 2`.
    Lp(f64),
}

impl NormSpec {
    pub fn lp(p: f64) -> Result<Self> {
        if !p.is_finite() || p <= 1.0 || p == 2.0 {
            return Err(Error::InvalidNorm(format!(
                "lp exponent must be finite, > 1 and != 2 (use l2), got {p}"
            )));
        }
        Ok(Self::Lp(p))
    }

    /// The exponent `p`, with `ℓ∞` as `f64::INFINITY`.
    pub fn exponent(&self) -> f64 {
        match *self {
            Self::L1 => 1.0,
            Self::L2 => 2.0,
            Self::Linf => f64::INFINITY,
            Self::Lp(p) => p,
        }
    }

    /// Differentiable away from the origin (`ℓ2` and `ℓp`).
    pub fn is_smooth(&self) -> bool {
        matches!(self, Self::L2 | Self::Lp(_))
    }
}

impl fmt::Display for NormSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::L1 => f.write_str("l1"),
            Self::L2 => f.write_str("l2"),
            Self::Linf => f.write_str("linf"),
            Self::Lp(p) => write!(f, "lp:{p}"),
        }
    }
}

impl FromStr for NormSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "l1" => Ok(Self::L1),
            "l2" => Ok(Self::L2),
            "linf" => Ok(Self::Linf),
            other => {
                let p = other
                    .strip_prefix("lp:")
                    .ok_or_else(|| Error::InvalidNorm(s.to_string()))?;
                let p: f64 = p.parse().map_err(|_| Error::InvalidNorm(s.to_string()))?;
                Self::lp(p)
            }
        }
    }
}

pub fn vector_norm(x: &[C64], norm: NormSpec) -> f64 {
    match norm {
        NormSpec::L1 => x.iter().map(|z| z.modulus()).sum(),
        NormSpec::L2 => Float::sqrt(x.iter().map(|z| z.norm_sqr()).sum::<f64>()),
        NormSpec::Linf => x.iter().map(|z| z.modulus()).fold(0.0, f64::max),
        NormSpec::Lp(p) => p_norm(x, p),
    }
}

fn p_norm(x: &[C64], p: f64) -> f64 {
    let scale = x.iter().map(|z| z.modulus()).fold(0.0, f64::max);
    if scale == 0.0 {
        return 0.0;
    }
    let s: f64 = x.iter().map(|z| Float::powf(z.modulus() / scale, p)).sum();
    scale * Float::powf(s, 1.0 / p)
}

/// Operator norm with a flag telling whether it is exact.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NormEstimate {
    pub value: f64,
    /// False for `ℓp`, where `value` is a lower bound from power iteration.
    pub exact: bool,
}

/// Induced operator norm. Exact for `ℓ1`, `ℓ2`, `ℓ∞`; a lower bound for
/// `ℓp` (see [`operator_norm_estimate`]).
pub fn operator_norm(a: &ComplexMatrix, norm: NormSpec) -> f64 {
    operator_norm_estimate(a, norm).value
}

pub fn operator_norm_estimate(a: &ComplexMatrix, norm: NormSpec) -> NormEstimate {
    let (rows, cols) = a.shape();
    if rows == 0 || cols == 0 {
        return NormEstimate {
            value: 0.0,
            exact: true,
        };
    }
    let m = a.as_nalgebra();
    match norm {
        NormSpec::L1 => NormEstimate {
            value: (0..cols)
                .map(|j| (0..rows).map(|i| m[(i, j)].modulus()).sum::<f64>())
                .fold(0.0, f64::max),
            exact: true,
        },
        NormSpec::Linf => NormEstimate {
            value: (0..rows)
                .map(|i| (0..cols).map(|j| m[(i, j)].modulus()).sum::<f64>())
                .fold(0.0, f64::max),
            exact: true,
        },
        NormSpec::L2 => NormEstimate {
            value: a.spectral_norm(),
            exact: true,
        },
        NormSpec::Lp(p) => NormEstimate {
            value: lp_power_estimate(a, p),
            exact: false,
        },
    }
}

/// Dual vector of `y` in `ℓp`: unit `ℓq` norm and `⟨dual, y⟩ = ‖y‖_p`.
fn dual(y: &[C64], p: f64) -> Vec<C64> {
    let ny = p_norm(y, p);
    if ny == 0.0 {
        return vec![C64::new(0.0, 0.0); y.len()];
    }
    y.iter()
        .map(|z| {
            let r = z.modulus();
            if r == 0.0 {
                C64::new(0.0, 0.0)
            } else {
                (z / r) * Float::powf(r / ny, p - 1.0)
            }
        })
        .collect()
}

const LP_RANDOM_STARTS: usize = 4;
const LP_MAX_ITER: usize = 100;
const LP_START_SEED: u64 = 0x1b0_57a7;

/// p-norm power method from the unit vectors, the all-ones vector and a few
/// fixed pseudo-random starts; returns the best `‖Ax‖_p / ‖x‖_p` seen.
fn lp_power_estimate(a: &ComplexMatrix, p: f64) -> f64 {
    let n = a.cols();
    let q = p / (p - 1.0);
    let ah = a.adjoint();
    let mut starts: Vec<Vec<C64>> = (0..n)
        .map(|j| {
            let mut e = vec![C64::new(0.0, 0.0); n];
            e[j] = C64::new(1.0, 0.0);
            e
        })
        .collect();
    starts.push(vec![C64::new(1.0, 0.0); n]);
    let mut rng = ChaCha8Rng::seed_from_u64(LP_START_SEED);
    for _ in 0..LP_RANDOM_STARTS {
        starts.push(
            (0..n)
                .map(|_| C64::new(StandardNormal.sample(&mut rng), StandardNormal.sample(&mut rng)))
                .collect(),
        );
    }

    let mut best = 0.0f64;
    for mut x in starts {
        let nx = p_norm(&x, p);
        if nx == 0.0 {
            continue;
        }
        x.iter_mut().for_each(|z| *z /= nx);
        for _ in 0..LP_MAX_ITER {
            let y = a.mul_vec(&x);
            let gamma = p_norm(&y, p);
            best = best.max(gamma);
            if gamma == 0.0 {
                break;
            }
            let z = ah.mul_vec(&dual(&y, p));
            let zq = p_norm(&z, q);
            let zx: f64 = z.iter().zip(&x).map(|(zi, xi)| (zi.conj() * xi).re).sum();
            if zq <= zx * (1.0 + 1e-14) {
                break;
            }
            x = dual(&z, q);
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn m(rows: usize, cols: usize, e: &[f64]) -> ComplexMatrix {
        ComplexMatrix::from_real(rows, cols, e).unwrap()
    }

    #[test]
    fn textual_form_round_trips() {
        for s in ["l1", "l2", "linf", "lp:3", "lp:1.5"] {
            let n: NormSpec = s.parse().unwrap();
            assert_eq!(n.to_string(), s);
        }
        assert!("lp:1".parse::<NormSpec>().is_err());
        assert!("lp:2".parse::<NormSpec>().is_err());
        assert!("lp:inf".parse::<NormSpec>().is_err());
        assert!("l3".parse::<NormSpec>().is_err());
    }

    #[test]
    fn operator_norm_examples() {
        let i = ComplexMatrix::identity(3);
        for n in [NormSpec::L1, NormSpec::L2, NormSpec::Linf, NormSpec::Lp(3.0)] {
            assert!((operator_norm(&i, n) - 1.0).abs() < 1e-14, "{n}");
        }
        assert!((operator_norm(&ComplexMatrix::real_diag(&[3.0, 1.0]), NormSpec::L2) - 3.0).abs() < 1e-14);
        let a = m(2, 2, &[1.0, 1.0, 0.0, 0.0]);
        assert_eq!(operator_norm(&a, NormSpec::L1), 1.0);
        assert_eq!(operator_norm(&a, NormSpec::Linf), 2.0);
    }

    #[test]
    fn lp_estimate_brackets_known_values() {
        // For [[1,1],[0,0]] the p-norm is ‖(1,1)‖_q = 2^{1/q}.
        let a = m(2, 2, &[1.0, 1.0, 0.0, 0.0]);
        let p = 3.0;
        let q = p / (p - 1.0);
        let est = operator_norm_estimate(&a, NormSpec::Lp(p));
        assert!(!est.exact);
        assert!((est.value - Float::powf(2.0, 1.0 / q)).abs() < 1e-10);
        // Riesz–Thorin: ‖A‖_p ≤ ‖A‖_1^{1/p} ‖A‖_∞^{1-1/p}.
        let b = m(3, 3, &[1.0, -2.0, 0.5, 0.0, 3.0, 1.0, -1.0, 0.25, 2.0]);
        let v = operator_norm(&b, NormSpec::Lp(p));
        let bound = Float::powf(operator_norm(&b, NormSpec::L1), 1.0 / p)
            * Float::powf(operator_norm(&b, NormSpec::Linf), 1.0 - 1.0 / p);
        assert!(v <= bound * (1.0 + 1e-12));
        assert!(v >= operator_norm(&b, NormSpec::L2) * 0.5);
    }

    #[test]
    fn vector_norms() {
        let x = [C64::new(3.0, 0.0), C64::new(0.0, -4.0)];
        assert_eq!(vector_norm(&x, NormSpec::L1), 7.0);
        assert_eq!(vector_norm(&x, NormSpec::L2), 5.0);
        assert_eq!(vector_norm(&x, NormSpec::Linf), 4.0);
        let p3 = vector_norm(&x, NormSpec::Lp(3.0));
        assert!((p3 - Float::powf(91.0, 1.0 / 3.0)).abs() < 1e-12);
    }
}
