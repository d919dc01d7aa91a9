use std::str::FromStr;

use geninv_core::corpusgen::Sample;
use geninv_core::eptheorems::{run_suites, HarnessReport, ItemReport, Pairing, Theorem, TheoremSuiteReport};
use geninv_core::{Error as CoreError, NumericContext};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classify::ToleranceDto;
use crate::json::Num;
use crate::Result;

/// A `--suite` value: one theorem or all of them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Suite(pub Vec<Theorem>);

impl FromStr for Suite {
    type Err = CoreError;

    fn from_str(s: &str) -> Result<Self, CoreError> {
        if s.trim().eq_ignore_ascii_case("all") {
            Ok(Suite(Theorem::ALL.to_vec()))
        } else {
            Ok(Suite(vec![s.parse()?]))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ItemDto {
    pub id: String,
    pub holds: bool,
    /// `null` when the preconditions are not met.
    pub residual: Num,
    pub preconditions_met: bool,
    /// Ascent/descent finiteness, recorded only where the statement asks for it.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub finite_ascent_descent: Option<bool>,
}

impl From<&ItemReport> for ItemDto {
    fn from(r: &ItemReport) -> Self {
        Self {
            id: r.id.to_string(),
            holds: r.holds,
            residual: Num(r.residual),
            preconditions_met: r.preconditions_met,
            finite_ascent_descent: r.finiteness,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairingDto {
    pub name: String,
    pub left: bool,
    pub right: bool,
    pub implication: bool,
    pub consistent: bool,
}

impl From<&Pairing> for PairingDto {
    fn from(p: &Pairing) -> Self {
        Self {
            name: p.name.to_string(),
            left: p.left,
            right: p.right,
            implication: p.implication,
            consistent: p.consistent(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleReport {
    pub id: String,
    pub theorem: String,
    pub items: Vec<ItemDto>,
    pub ep: bool,
    pub ep_residual: Num,
    pub normal: bool,
    pub normal_residual: Num,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub pairings: Vec<PairingDto>,
    pub no_group_inverse: bool,
    pub margin_zone: bool,
    pub consistent: bool,
}

impl From<&TheoremSuiteReport> for SampleReport {
    fn from(r: &TheoremSuiteReport) -> Self {
        Self {
            id: r.subject.clone(),
            theorem: r.theorem.name().to_string(),
            items: r.items.iter().map(ItemDto::from).collect(),
            ep: r.ep.holds,
            ep_residual: Num(r.ep.residual),
            normal: r.normal.holds,
            normal_residual: Num(r.normal.residual),
            pairings: r.pairings.iter().map(PairingDto::from).collect(),
            no_group_inverse: r.no_group_inverse,
            margin_zone: r.margin_zone,
            consistent: r.consistent,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteSummary {
    pub samples: usize,
    pub items_checked: usize,
    pub margin_zone: usize,
    pub no_group_inverse: usize,
    pub violations: usize,
    pub pairing_violations: usize,
    pub inconsistencies: usize,
    pub consistent: bool,
    pub offending: Vec<String>,
    /// `null` when nothing held.
    pub worst_holding_residual: Num,
    /// `null` when nothing failed.
    pub min_failing_residual: Num,
}

impl From<&HarnessReport> for SuiteSummary {
    fn from(h: &HarnessReport) -> Self {
        Self {
            samples: h.samples,
            items_checked: h.items_checked,
            margin_zone: h.margin_zone,
            no_group_inverse: h.no_group_inverse,
            violations: h.violations,
            pairing_violations: h.pairing_violations,
            inconsistencies: h.inconsistencies(),
            consistent: h.is_consistent(),
            offending: h.offending.clone(),
            worst_holding_residual: Num(if h.items_checked > 0 { h.worst_holding_residual } else { f64::NAN }),
            min_failing_residual: Num(h.min_failing_residual),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub theorem: String,
    pub summary: SuiteSummary,
    /// Sorted by sample id.
    pub samples: Vec<SampleReport>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub tolerance: ToleranceDto,
    pub samples: usize,
    pub inconsistencies: usize,
    pub consistent: bool,
    pub suites: Vec<SuiteReport>,
}

/// Runs every theorem of `suite` on every sample, in parallel on the current
/// rayon pool. The result does not depend on the pool size.
pub fn verify_corpus(samples: &[Sample], suite: &Suite, ctx: &NumericContext) -> Result<VerifyReport> {
    if samples.is_empty() {
        return Err(CoreError::EmptyCorpus.into());
    }
    let mut per_sample: Vec<Vec<TheoremSuiteReport>> = samples
        .par_iter()
        .map(|s| run_suites(&s.id, &s.matrix, &suite.0, ctx))
        .collect::<Result<_, CoreError>>()?;
    per_sample.sort_by(|x, y| x[0].subject.cmp(&y[0].subject));
    let suites: Vec<SuiteReport> = suite
        .0
        .iter()
        .enumerate()
        .map(|(k, &theorem)| {
            let mut harness = HarnessReport::new(theorem);
            let mut reports = Vec::with_capacity(per_sample.len());
            for r in &per_sample {
                harness.absorb(&r[k]);
                reports.push(SampleReport::from(&r[k]));
            }
            SuiteReport {
                theorem: theorem.name().to_string(),
                summary: SuiteSummary::from(&harness),
                samples: reports,
            }
        })
        .collect();
    let inconsistencies = suites.iter().map(|s| s.summary.inconsistencies).sum();
    Ok(VerifyReport {
        tolerance: ctx.into(),
        samples: samples.len(),
        inconsistencies,
        consistent: inconsistencies == 0,
        suites,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use geninv_core::corpusgen::{generate, GeneratorKind, GeneratorSpec};
    use geninv_core::eptheorems::equivalence_harness;
    use geninv_core::ComplexMatrix;

    fn ctx() -> NumericContext {
        NumericContext::default()
    }

    #[test]
    fn suite_names() {
        assert_eq!("all".parse::<Suite>().unwrap().0.len(), Theorem::ALL.len());
        assert_eq!("t6".parse::<Suite>().unwrap().0, vec![Theorem::T6]);
        assert!("bogus".parse::<Suite>().is_err());
    }

    #[test]
    fn matches_the_sequential_harness() {
        let spec = GeneratorSpec::new(GeneratorKind::GroupInvertible, 4, Some(2), 3, 12).unwrap();
        let samples = generate(&spec, &ctx()).unwrap();
        let report = verify_corpus(&samples, &Suite(vec![Theorem::T6]), &ctx()).unwrap();
        let seq = equivalence_harness(samples.iter().map(|s| (s.id.as_str(), &s.matrix)), Theorem::T6, &ctx()).unwrap();
        assert_eq!(report.suites[0].summary, SuiteSummary::from(&seq));
        let ids: Vec<_> = report.suites[0].samples.iter().map(|s| s.id.clone()).collect();
        let mut sorted = ids.clone();
        sorted.sort();
        assert_eq!(ids, sorted);
    }

    #[test]
    fn nilpotent_sample_has_unmet_group_preconditions() {
        let a = ComplexMatrix::from_real(2, 2, &[0.0, 1.0, 0.0, 0.0]).unwrap();
        let s = Sample {
            id: "jordan".into(),
            matrix: a,
            claimed: Default::default(),
            generator: None,
        };
        let report = verify_corpus(&[s], &"all".parse().unwrap(), &ctx()).unwrap();
        assert!(report.consistent);
        let t6 = report.suites.iter().find(|s| s.theorem == "t6").unwrap();
        assert!(t6.samples[0].items.iter().all(|i| !i.preconditions_met && i.residual.get().is_nan()));
        assert!(t6.samples[0].no_group_inverse);
    }

    #[test]
    fn empty_corpus_is_an_error() {
        assert!(verify_corpus(&[], &Suite(vec![Theorem::T6]), &ctx()).is_err());
    }
}
