//! Eigenvalues by shifted QR on the Hessenberg form.
//!
//! nalgebra's Schur iteration has no exceptional shifts and deflates only
//! relative to neighbouring diagonal entries, so it stalls on orthogonal
//! projectors (repeated eigenvalue 0). This single-shift complex QR deflates
//! at `ε·(|h_kk| + |h_{k−1,k−1}|)` or `ε·‖H‖_F`, uses Wilkinson shifts and
//! an exceptional shift every tenth iteration on a window.

use alloc::vec::Vec;

use nalgebra::linalg::Hessenberg;
use nalgebra::{ComplexField, DMatrix};

use super::C64;

const ITERATIONS_PER_EIGENVALUE: usize = 60;

fn givens(x: C64, y: C64) -> (f64, C64) {
    let ax = x.modulus();
    let r = (ax * ax + y.norm_sqr()).sqrt();
    if r == 0.0 {
        (1.0, C64::new(0.0, 0.0))
    } else if ax == 0.0 {
        (0.0, C64::new(1.0, 0.0))
    } else {
        (ax / r, (x / ax) * y.conj() / r)
    }
}

/// Eigenvalue of `[[a, b], [c, d]]` closest to `d`.
fn wilkinson(a: C64, b: C64, c: C64, d: C64) -> C64 {
    let half = C64::new(0.5, 0.0);
    let mid = (a + d) * half;
    let disc = (((a - d) * half) * ((a - d) * half) + b * c).sqrt();
    let l1 = mid + disc;
    let l2 = mid - disc;
    if (l1 - d).modulus() <= (l2 - d).modulus() {
        l1
    } else {
        l2
    }
}

/// All eigenvalues of the square matrix `a`, in deflation order; `None` if
/// the iteration budget is exhausted.
pub(crate) fn eigenvalues(a: &DMatrix<C64>) -> Option<Vec<C64>> {
    let n = a.nrows();
    let mut out = Vec::with_capacity(n);
    if n == 0 {
        return Some(out);
    }
    let mut h = if n > 2 { Hessenberg::new(a.clone()).h() } else { a.clone() };
    let eps = f64::EPSILON;
    let scale = h.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let mut hi = n - 1;
    let mut stalled = 0;
    let mut budget = ITERATIONS_PER_EIGENVALUE * n;
    let mut rot: Vec<(f64, C64)> = Vec::with_capacity(n);
    loop {
        if hi == 0 {
            out.push(h[(0, 0)]);
            return Some(out);
        }
        let mut lo = hi;
        while lo > 0 {
            let sub = h[(lo, lo - 1)].modulus();
            let local = h[(lo, lo)].modulus() + h[(lo - 1, lo - 1)].modulus();
            if sub <= eps * local || sub <= eps * scale {
                h[(lo, lo - 1)] = C64::new(0.0, 0.0);
                break;
            }
            lo -= 1;
        }
        if lo == hi {
            out.push(h[(hi, hi)]);
            hi -= 1;
            stalled = 0;
            continue;
        }
        if budget == 0 {
            return None;
        }
        budget -= 1;
        stalled += 1;
        let mu = if stalled % 10 == 0 {
            h[(hi, hi)] + C64::new(0.75 * h[(hi, hi - 1)].modulus(), 0.0)
        } else {
            wilkinson(h[(hi - 1, hi - 1)], h[(hi - 1, hi)], h[(hi, hi - 1)], h[(hi, hi)])
        };
        for k in lo..=hi {
            h[(k, k)] -= mu;
        }
        rot.clear();
        for k in lo..hi {
            let (c, s) = givens(h[(k, k)], h[(k + 1, k)]);
            let cc = C64::new(c, 0.0);
            for j in k..=hi {
                let u = h[(k, j)];
                let v = h[(k + 1, j)];
                h[(k, j)] = cc * u + s * v;
                h[(k + 1, j)] = -s.conj() * u + cc * v;
            }
            rot.push((c, s));
        }
        for (off, &(c, s)) in rot.iter().enumerate() {
            let k = lo + off;
            let cc = C64::new(c, 0.0);
            for i in lo..=(k + 2).min(hi) {
                let u = h[(i, k)];
                let v = h[(i, k + 1)];
                h[(i, k)] = u * cc + v * s.conj();
                h[(i, k + 1)] = -u * s + v * cc;
            }
        }
        for k in lo..=hi {
            h[(k, k)] += mu;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn sorted(mut v: Vec<C64>) -> Vec<C64> {
        v.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        v
    }

    #[test]
    fn projector_with_repeated_zero() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for (n, r) in [(5, 4), (6, 5), (8, 7), (8, 2), (36, 10)] {
            let z = DMatrix::from_fn(n, r, |_, _| C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
            let q = nalgebra::linalg::QR::new(z).q();
            let p = &q * q.adjoint();
            let ev = sorted(eigenvalues(&p).unwrap());
            for (i, l) in ev.iter().enumerate() {
                let want = if i < n - r { 0.0 } else { 1.0 };
                assert!((l - C64::new(want, 0.0)).modulus() < 1e-12, "{n} {r} {l}");
            }
        }
    }

    #[test]
    fn trace_and_determinant_of_random_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in [1, 2, 3, 7, 20, 36] {
            let a = DMatrix::from_fn(n, n, |_, _| C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
            let ev = eigenvalues(&a).unwrap();
            assert_eq!(ev.len(), n);
            let tr: C64 = ev.iter().sum();
            assert!((tr - a.trace()).modulus() < 1e-11 * n as f64);
            let det: C64 = ev.iter().product();
            assert!((det - a.clone().determinant()).modulus() < 1e-9 * det.modulus().max(1.0));
        }
    }

    #[test]
    fn cyclic_shift_gives_roots_of_unity() {
        for n in [2, 3, 4, 6] {
            let p = DMatrix::from_fn(n, n, |i, j| if (i + 1) % n == j { C64::new(1.0, 0.0) } else { C64::new(0.0, 0.0) });
            for l in eigenvalues(&p).unwrap() {
                assert!((l.modulus() - 1.0).abs() < 1e-12);
                assert!((l.powu(n as u32) - C64::new(1.0, 0.0)).modulus() < 1e-11);
            }
        }
    }

    #[test]
    fn zero_and_scalar_matrices() {
        assert_eq!(eigenvalues(&DMatrix::zeros(3, 3)).unwrap(), [C64::new(0.0, 0.0); 3]);
        let s = DMatrix::<C64>::identity(4, 4) * C64::new(2.0, -1.0);
        assert!(eigenvalues(&s).unwrap().iter().all(|&l| l == C64::new(2.0, -1.0)));
    }
}
