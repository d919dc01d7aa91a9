#![allow(dead_code)]

use geninv_core::corpusgen::{generate_sample, GeneratorKind, GeneratorSpec, Sample};
use geninv_core::NumericContext;

pub fn ctx() -> NumericContext {
    NumericContext::default()
}

fn rank_for(kind: GeneratorKind, n: usize, i: usize) -> usize {
    let step = i / 7;
    match kind {
        GeneratorKind::Ep | GeneratorKind::MpGeneric => 1 + step % n,
        GeneratorKind::GroupInvertible => 1 + step % (n - 1),
        GeneratorKind::Normal | GeneratorKind::HermitianDiag => n - step % 2,
        GeneratorKind::Nilpotent if n > 2 => n - 1 - step % 2,
        GeneratorKind::Nilpotent => 1,
    }
}

/// `count` samples of `kind` cycling `n` through `2..=max_n`, drawing until
/// `keep` accepts enough of them.
pub fn pool(kind: GeneratorKind, count: usize, seed: u64, max_n: usize, keep: impl Fn(&Sample) -> bool) -> Vec<Sample> {
    let ctx = ctx();
    let mut out = Vec::with_capacity(count);
    let mut i = 0usize;
    while out.len() < count {
        let n = 2 + i % (max_n - 1);
        let spec = GeneratorSpec::new(kind, n, Some(rank_for(kind, n, i)), seed + i as u64, 1).unwrap();
        let s = generate_sample(&spec, 0, &ctx).unwrap();
        if keep(&s) {
            out.push(s);
        }
        i += 1;
        assert!(i < 20 * count + 100, "{kind}: too few samples accepted");
    }
    out
}

pub fn any(_: &Sample) -> bool {
    true
}

pub fn non_ep(s: &Sample) -> bool {
    s.claimed.ep == Some(false)
}

pub fn non_normal(s: &Sample) -> bool {
    s.claimed.normal == Some(false)
}

/// The mixed corpus used by the CLI verification runs: EP, non-EP
/// group-invertible, normal, generic and nilpotent samples with `n ≤ 8`.
pub fn standard_corpus() -> Vec<Sample> {
    let mut v = pool(GeneratorKind::Ep, 200, 1_000, 8, any);
    v.extend(pool(GeneratorKind::GroupInvertible, 200, 2_000, 8, non_ep));
    v.extend(pool(GeneratorKind::Normal, 150, 3_000, 8, any));
    v.extend(pool(GeneratorKind::MpGeneric, 100, 4_000, 8, any));
    v.extend(pool(GeneratorKind::Nilpotent, 50, 5_000, 8, any));
    v
}

/// `[[1, x], [0, 0]]` with `x` just above the margin: a near-EP idempotent
/// on which loose tolerances produce genuine inconsistencies.
pub fn near_boundary_corpus() -> Vec<Sample> {
    use geninv_core::ComplexMatrix;
    [1.0e-4, 1.2e-4, 1.5e-4, 2.0e-4, 5.0e-4]
        .iter()
        .enumerate()
        .map(|(k, &x)| Sample {
            id: format!("near-{k}"),
            matrix: ComplexMatrix::from_real(2, 2, &[1.0, x, 0.0, 0.0]).unwrap(),
            claimed: Default::default(),
            generator: None,
        })
        .collect()
}
