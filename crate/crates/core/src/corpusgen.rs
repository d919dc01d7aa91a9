//! Seeded generators of matrices with known structure.
//!
//! Sample `i` of a spec draws from `ChaCha8Rng::seed_from_u64(seed)` on
//! stream `(retry << 40) | i`, so every sample is reproducible on its own and
//! generation can run in any order. A sample whose EP or normality residual
//! falls in `(eq_tol, margin)` is redrawn with the next `retry`, at most
//! [`MAX_RETRIES`] times.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use nalgebra::linalg::QR;
use nalgebra::{ComplexField, DMatrix};
use num_traits::Float;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::geninv::{group_inverse, is_ep};
use crate::normscope::{is_hermitian, is_normal, NormSpec};
use crate::numkernel::{ComplexMatrix, NumericContext, C64};
use crate::specrep::is_quasinilpotent;
use crate::{Error, Result};

pub const MAX_RETRIES: u64 = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GeneratorKind {
    /// `U·diag(K, 0)·U^H`, `U` Haar unitary.
    Ep,
    /// `U·Σ·V^H` with independent unitaries.
    MpGeneric,
    /// `S·diag(K, 0)·S⁻¹`.
    GroupInvertible,
    /// `U·diag(λ)·U^H` with complex `λ`.
    Normal,
    /// `S·N·S⁻¹`, `N` strictly upper triangular with `rank` nonzero rows.
    Nilpotent,
    /// Real diagonal.
    HermitianDiag,
}

impl GeneratorKind {
    pub const ALL: [GeneratorKind; 6] = [
        GeneratorKind::Ep,
        GeneratorKind::MpGeneric,
        GeneratorKind::GroupInvertible,
        GeneratorKind::Normal,
        GeneratorKind::Nilpotent,
        GeneratorKind::HermitianDiag,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GeneratorKind::Ep => "ep",
            GeneratorKind::MpGeneric => "mp_generic",
            GeneratorKind::GroupInvertible => "group_invertible",
            GeneratorKind::Normal => "normal",
            GeneratorKind::Nilpotent => "nilpotent",
            GeneratorKind::HermitianDiag => "hermitian_diag",
        }
    }

    /// Rank used when none is given: `⌈n/2⌉` for the kinds whose
    /// interest is rank deficiency, `n − 1` for nilpotent, `n` otherwise.
    pub fn default_rank(self, n: usize) -> usize {
        match self {
            GeneratorKind::Ep | GeneratorKind::MpGeneric | GeneratorKind::GroupInvertible => n.div_ceil(2),
            GeneratorKind::Nilpotent => n.saturating_sub(1),
            GeneratorKind::Normal | GeneratorKind::HermitianDiag => n,
        }
    }

    fn max_rank(self, n: usize) -> usize {
        match self {
            GeneratorKind::Nilpotent => n.saturating_sub(1),
            _ => n,
        }
    }
}

impl fmt::Display for GeneratorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GeneratorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase().replace('-', "_");
        GeneratorKind::ALL
            .into_iter()
            .find(|k| k.name() == key)
            .ok_or_else(|| Error::UnknownKind(s.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GeneratorSpec {
    pub kind: GeneratorKind,
    pub n: usize,
    /// `None` means [`GeneratorKind::default_rank`].
    pub rank: Option<usize>,
    pub seed: u64,
    pub count: usize,
}

impl GeneratorSpec {
    pub fn new(kind: GeneratorKind, n: usize, rank: Option<usize>, seed: u64, count: usize) -> Result<Self> {
        let spec = Self {
            kind,
            n,
            rank,
            seed,
            count,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn rank(&self) -> usize {
        self.rank.unwrap_or_else(|| self.kind.default_rank(self.n))
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidSpec("n must be positive"));
        }
        if self.count == 0 {
            return Err(Error::InvalidSpec("count must be positive"));
        }
        if self.rank() > self.kind.max_rank(self.n) {
            return Err(Error::InvalidRank {
                kind: self.kind.name(),
                n: self.n,
                rank: self.rank(),
            });
        }
        Ok(())
    }

    pub fn sample_id(&self, index: usize) -> String {
        format!("{}-n{}-r{}-s{}-{:04}", self.kind, self.n, self.rank(), self.seed, index)
    }
}

/// Ground-truth flags; `None` when unknown (hand-written samples).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Claimed {
    pub ep: Option<bool>,
    pub normal: Option<bool>,
    pub group_invertible: Option<bool>,
    pub nilpotent: Option<bool>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Sample {
    pub id: String,
    pub matrix: ComplexMatrix,
    pub claimed: Claimed,
    pub generator: Option<GeneratorSpec>,
}

fn gaussian(rng: &mut ChaCha8Rng) -> C64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    C64::new(re, im) * C64::new(core::f64::consts::FRAC_1_SQRT_2, 0.0)
}

fn log_uniform(rng: &mut ChaCha8Rng) -> f64 {
    Float::powf(10.0, rng.random_range(-1.0..=1.0))
}

fn unit_phase(rng: &mut ChaCha8Rng) -> C64 {
    let t: f64 = rng.random_range(0.0..core::f64::consts::TAU);
    C64::new(Float::cos(t), Float::sin(t))
}

/// Haar unitary: QR of a complex Gaussian with the diagonal of `R` made
/// positive.
fn haar(n: usize, rng: &mut ChaCha8Rng) -> DMatrix<C64> {
    let z = DMatrix::from_fn(n, n, |_, _| gaussian(rng));
    let qr = QR::new(z);
    let r = qr.r();
    let mut q = qr.q();
    for j in 0..n {
        let d = r[(j, j)];
        let m = d.modulus();
        let phase = if m > 0.0 { d / C64::new(m, 0.0) } else { C64::new(1.0, 0.0) };
        for i in 0..n {
            q[(i, j)] *= phase;
        }
    }
    q
}

/// `W1·diag(σ)·W2` with `σ ∈ [0.1, 10]`, and its inverse; condition ≤ 100.
fn conditioned(n: usize, rng: &mut ChaCha8Rng) -> (DMatrix<C64>, DMatrix<C64>) {
    let w1 = haar(n, rng);
    let w2 = haar(n, rng);
    let s: Vec<f64> = (0..n).map(|_| log_uniform(rng)).collect();
    let d = DMatrix::from_fn(n, n, |i, j| if i == j { C64::new(s[i], 0.0) } else { C64::new(0.0, 0.0) });
    let d_inv = DMatrix::from_fn(n, n, |i, j| if i == j { C64::new(1.0 / s[i], 0.0) } else { C64::new(0.0, 0.0) });
    (&w1 * d * &w2, w2.adjoint() * d_inv * w1.adjoint())
}

fn embed(core: &DMatrix<C64>, n: usize) -> DMatrix<C64> {
    let r = core.nrows();
    DMatrix::from_fn(n, n, |i, j| if i < r && j < r { core[(i, j)] } else { C64::new(0.0, 0.0) })
}

fn diagonal(d: &[C64]) -> DMatrix<C64> {
    DMatrix::from_fn(d.len(), d.len(), |i, j| if i == j { d[i] } else { C64::new(0.0, 0.0) })
}

fn draw(kind: GeneratorKind, n: usize, r: usize, rng: &mut ChaCha8Rng) -> DMatrix<C64> {
    let zero = C64::new(0.0, 0.0);
    match kind {
        GeneratorKind::Ep => {
            let u = haar(n, rng);
            let (k, _) = conditioned(r, rng);
            &u * embed(&k, n) * u.adjoint()
        }
        GeneratorKind::MpGeneric => {
            let u = haar(n, rng);
            let v = haar(n, rng);
            let s: Vec<C64> = (0..n)
                .map(|i| if i < r { C64::new(log_uniform(rng), 0.0) } else { zero })
                .collect();
            &u * diagonal(&s) * v.adjoint()
        }
        GeneratorKind::GroupInvertible => {
            let (s, s_inv) = conditioned(n, rng);
            let (k, _) = conditioned(r, rng);
            &s * embed(&k, n) * &s_inv
        }
        GeneratorKind::Normal => {
            let u = haar(n, rng);
            let l: Vec<C64> = (0..n)
                .map(|i| if i < r { unit_phase(rng) * C64::new(log_uniform(rng), 0.0) } else { zero })
                .collect();
            &u * diagonal(&l) * u.adjoint()
        }
        GeneratorKind::Nilpotent => {
            let (s, s_inv) = conditioned(n, rng);
            let mut nil = DMatrix::zeros(n, n);
            for i in 0..r {
                for j in i + 1..n {
                    nil[(i, j)] = if j == i + 1 {
                        unit_phase(rng) * C64::new(rng.random_range(0.5..2.0), 0.0)
                    } else {
                        gaussian(rng) * C64::new(0.5, 0.0)
                    };
                }
            }
            &s * nil * &s_inv
        }
        GeneratorKind::HermitianDiag => {
            let d: Vec<C64> = (0..n)
                .map(|i| {
                    if i < r {
                        let sign = if rng.random::<bool>() { 1.0 } else { -1.0 };
                        C64::new(sign * log_uniform(rng), 0.0)
                    } else {
                        zero
                    }
                })
                .collect();
            diagonal(&d)
        }
    }
}

/// What the construction guarantees, checked against the computed flags.
fn check_guarantees(kind: GeneratorKind, r: usize, a: &ComplexMatrix, c: &Claimed, ctx: &NumericContext) -> Result<(), String> {
    let need = |flag: Option<bool>, want: bool, what: &str| {
        if flag == Some(want) {
            Ok(())
        } else {
            Err(format!("expected {what} = {want}"))
        }
    };
    match kind {
        GeneratorKind::Ep => {
            need(c.ep, true, "ep")?;
            need(c.group_invertible, true, "group_invertible")
        }
        GeneratorKind::MpGeneric => Ok(()),
        GeneratorKind::GroupInvertible => need(c.group_invertible, true, "group_invertible"),
        GeneratorKind::Normal | GeneratorKind::HermitianDiag => {
            need(c.normal, true, "normal")?;
            need(c.ep, true, "ep")?;
            need(c.group_invertible, true, "group_invertible")?;
            if kind == GeneratorKind::HermitianDiag {
                for norm in [NormSpec::L1, NormSpec::L2, NormSpec::Linf] {
                    let h = is_hermitian(a, norm, ctx).map_err(|e| e.to_string())?;
                    if !h.is_hermitian() {
                        return Err(format!("not hermitian under {norm}"));
                    }
                }
            }
            Ok(())
        }
        GeneratorKind::Nilpotent => {
            need(c.nilpotent, true, "nilpotent")?;
            need(c.group_invertible, r == 0, "group_invertible")
        }
    }
}

fn claims(a: &ComplexMatrix, ctx: &NumericContext) -> Result<(Claimed, f64, f64)> {
    let ep = is_ep(a, NormSpec::L2, ctx)?;
    let normal = is_normal(a, NormSpec::L2, ctx)?;
    let group = match group_inverse(a, ctx) {
        Ok(_) => true,
        Err(Error::NoGroupInverse { .. }) => false,
        Err(e) => return Err(e),
    };
    let claimed = Claimed {
        ep: Some(ep.holds),
        normal: Some(normal.holds),
        group_invertible: Some(group),
        nilpotent: Some(is_quasinilpotent(a, ctx)?),
    };
    Ok((claimed, ep.residual, normal.residual))
}

/// Sample `index` of `spec`, independent of every other index.
pub fn generate_sample(spec: &GeneratorSpec, index: usize, ctx: &NumericContext) -> Result<Sample> {
    spec.validate()?;
    let id = spec.sample_id(index);
    let r = spec.rank();
    for retry in 0..MAX_RETRIES {
        let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
        rng.set_stream((retry << 40) | index as u64);
        let a = ComplexMatrix::from_nalgebra(draw(spec.kind, spec.n, r, &mut rng))?;
        let (claimed, ep_res, normal_res) = claims(&a, ctx)?;
        if ctx.in_margin_zone(ep_res) || ctx.in_margin_zone(normal_res) {
            continue;
        }
        check_guarantees(spec.kind, r, &a, &claimed, ctx).map_err(|reason| Error::GenerationFailed {
            id: id.clone(),
            reason,
        })?;
        return Ok(Sample {
            id,
            matrix: a,
            claimed,
            generator: Some(*spec),
        });
    }
    Err(Error::GenerationFailed {
        id,
        reason: format!("margin zone after {MAX_RETRIES} draws"),
    })
}

pub fn generate(spec: &GeneratorSpec, ctx: &NumericContext) -> Result<Vec<Sample>> {
    spec.validate()?;
    (0..spec.count).map(|i| generate_sample(spec, i, ctx)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geninv::mp_inverse;
    use crate::numkernel::{rank, relative_residual};
    use crate::specrep::spectrum;

    fn ctx() -> NumericContext {
        NumericContext::default()
    }

    fn spec(kind: GeneratorKind, n: usize, rank: Option<usize>, seed: u64, count: usize) -> GeneratorSpec {
        GeneratorSpec::new(kind, n, rank, seed, count).unwrap()
    }

    #[test]
    fn kind_names_round_trip() {
        for k in GeneratorKind::ALL {
            assert_eq!(k.name().parse::<GeneratorKind>().unwrap(), k);
        }
        assert_eq!("Group-Invertible".parse::<GeneratorKind>().unwrap(), GeneratorKind::GroupInvertible);
        assert!(matches!("jordan".parse::<GeneratorKind>(), Err(Error::UnknownKind(_))));
    }

    #[test]
    fn spec_validation() {
        assert!(matches!(
            GeneratorSpec::new(GeneratorKind::Ep, 2, Some(3), 0, 1),
            Err(Error::InvalidRank { .. })
        ));
        assert!(GeneratorSpec::new(GeneratorKind::Nilpotent, 3, Some(3), 0, 1).is_err());
        assert!(GeneratorSpec::new(GeneratorKind::Ep, 0, None, 0, 1).is_err());
        assert!(GeneratorSpec::new(GeneratorKind::Ep, 3, None, 0, 0).is_err());
        assert_eq!(spec(GeneratorKind::Nilpotent, 4, None, 0, 1).rank(), 3);
        assert_eq!(spec(GeneratorKind::Ep, 5, None, 0, 1).rank(), 3);
        assert_eq!(spec(GeneratorKind::Ep, 4, Some(2), 7, 1).sample_id(3), "ep-n4-r2-s7-0003");
    }

    #[test]
    fn haar_is_unitary_and_conditioned_factor_inverts() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for n in 1..=8 {
            let u = ComplexMatrix::from_nalgebra(haar(n, &mut rng)).unwrap();
            assert!(relative_residual(&(&u.adjoint() * &u), &ComplexMatrix::identity(n)) < 1e-14);
            let (s, s_inv) = conditioned(n, &mut rng);
            let s = ComplexMatrix::from_nalgebra(s).unwrap();
            let s_inv = ComplexMatrix::from_nalgebra(s_inv).unwrap();
            assert!(relative_residual(&(&s * &s_inv), &ComplexMatrix::identity(n)) < 1e-13);
            assert!(s.spectral_norm() * s_inv.spectral_norm() <= 100.0 + 1e-9);
        }
    }

    #[test]
    fn ep_samples_pass_is_ep() {
        let c = ctx();
        let samples = generate(&spec(GeneratorKind::Ep, 4, Some(2), 7, 10), &c).unwrap();
        assert_eq!(samples.len(), 10);
        for s in &samples {
            assert!(is_ep(&s.matrix, NormSpec::L2, &c).unwrap().holds);
            assert_eq!(rank(&s.matrix, &c), 2);
            assert_eq!(s.claimed.ep, Some(true));
        }
    }

    #[test]
    fn nilpotent_samples() {
        let c = ctx();
        for s in generate(&spec(GeneratorKind::Nilpotent, 3, None, 1, 5), &c).unwrap() {
            let sp = spectrum(&s.matrix).unwrap();
            assert!(sp.spectral_radius < 1e-4 * s.matrix.spectral_norm().max(1.0));
            assert_eq!(s.claimed.group_invertible, Some(false));
            assert_eq!(s.claimed.nilpotent, Some(true));
        }
        let zero = generate(&spec(GeneratorKind::Nilpotent, 3, Some(0), 1, 1), &c).unwrap();
        assert!(zero[0].matrix.is_zero());
    }

    #[test]
    fn group_invertible_samples_are_screened() {
        let c = ctx();
        for s in generate(&spec(GeneratorKind::GroupInvertible, 5, Some(3), 2, 20), &c).unwrap() {
            let ep = is_ep(&s.matrix, NormSpec::L2, &c).unwrap();
            assert!(!ep.holds && ep.residual >= c.margin);
            assert!(group_inverse(&s.matrix, &c).is_ok());
        }
    }

    #[test]
    fn normal_and_hermitian_diag_samples() {
        let c = ctx();
        for s in generate(&spec(GeneratorKind::Normal, 6, Some(4), 3, 10), &c).unwrap() {
            assert_eq!(s.claimed.normal, Some(true));
            assert_eq!(rank(&s.matrix, &c), 4);
        }
        for s in generate(&spec(GeneratorKind::HermitianDiag, 4, None, 3, 5), &c).unwrap() {
            assert_eq!(s.matrix, s.matrix.adjoint());
        }
    }

    #[test]
    fn mp_generic_has_pseudoinverse_and_is_rarely_ep() {
        let c = ctx();
        let samples = generate(&spec(GeneratorKind::MpGeneric, 5, Some(2), 4, 10), &c).unwrap();
        assert!(samples.iter().all(|s| s.claimed.ep == Some(false)));
        for s in &samples {
            let x = mp_inverse(&s.matrix, &c);
            assert!(relative_residual(&(&(&s.matrix * &x) * &s.matrix), &s.matrix) < 1e-12);
        }
    }

    #[test]
    fn generation_is_deterministic_and_index_local() {
        let c = ctx();
        let sp = spec(GeneratorKind::GroupInvertible, 4, Some(2), 99, 6);
        let a = generate(&sp, &c).unwrap();
        assert_eq!(a, generate(&sp, &c).unwrap());
        assert_eq!(a[4], generate_sample(&sp, 4, &c).unwrap());
        let other = generate(&GeneratorSpec { seed: 100, ..sp }, &c).unwrap();
        assert_ne!(a[0].matrix, other[0].matrix);
    }
}
