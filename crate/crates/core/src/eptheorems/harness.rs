use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::{run_suite, Theorem, TheoremSuiteReport};
use crate::numkernel::{ComplexMatrix, NumericContext};
use crate::{Error, Result};

/// Corpus-level tally of one theorem's biconditionals.
///
/// Aggregation is associative and commutative ([`HarnessReport::merge`]), so
/// samples may be processed in any order or in parallel.
#[derive(Clone, Debug, PartialEq)]
pub struct HarnessReport {
    pub theorem: Theorem,
    pub samples: usize,
    /// Samples whose target residual lies in `(eq_tol, margin)`; not asserted.
    pub margin_zone: usize,
    pub no_group_inverse: usize,
    /// `(sample, item)` pairs with met preconditions that were asserted.
    pub items_checked: usize,
    /// Asserted items whose verdict differs from the target.
    pub violations: usize,
    pub pairing_violations: usize,
    /// Sorted, unique.
    pub offending: Vec<String>,
    /// Largest residual among asserted items that hold.
    pub worst_holding_residual: f64,
    /// Smallest residual among asserted items that fail.
    pub min_failing_residual: f64,
}

impl HarnessReport {
    pub fn new(theorem: Theorem) -> Self {
        Self {
            theorem,
            samples: 0,
            margin_zone: 0,
            no_group_inverse: 0,
            items_checked: 0,
            violations: 0,
            pairing_violations: 0,
            offending: Vec::new(),
            worst_holding_residual: 0.0,
            min_failing_residual: f64::INFINITY,
        }
    }

    pub fn inconsistencies(&self) -> usize {
        self.violations + self.pairing_violations
    }

    pub fn is_consistent(&self) -> bool {
        self.inconsistencies() == 0
    }

    fn flag(&mut self, subject: &str) {
        if let Err(pos) = self.offending.binary_search_by(|s| s.as_str().cmp(subject)) {
            self.offending.insert(pos, subject.to_string());
        }
    }

    pub fn absorb(&mut self, report: &TheoremSuiteReport) {
        self.samples += 1;
        if report.no_group_inverse {
            self.no_group_inverse += 1;
        }
        if report.margin_zone {
            self.margin_zone += 1;
            return;
        }
        let target = report.target().holds;
        let mut bad = false;
        for item in report.items.iter().filter(|i| i.preconditions_met) {
            self.items_checked += 1;
            if item.holds {
                self.worst_holding_residual = self.worst_holding_residual.max(item.residual);
            } else {
                self.min_failing_residual = self.min_failing_residual.min(item.residual);
            }
            if item.holds != target {
                self.violations += 1;
                bad = true;
            }
        }
        let broken = report.pairings.iter().filter(|p| !p.consistent()).count();
        if broken > 0 {
            self.pairing_violations += broken;
            bad = true;
        }
        if bad {
            self.flag(&report.subject);
        }
    }

    pub fn merge(mut self, other: HarnessReport) -> Self {
        self.samples += other.samples;
        self.margin_zone += other.margin_zone;
        self.no_group_inverse += other.no_group_inverse;
        self.items_checked += other.items_checked;
        self.violations += other.violations;
        self.pairing_violations += other.pairing_violations;
        self.worst_holding_residual = self.worst_holding_residual.max(other.worst_holding_residual);
        self.min_failing_residual = self.min_failing_residual.min(other.min_failing_residual);
        for s in &other.offending {
            self.flag(s);
        }
        self
    }
}

/// Runs `theorem` on every `(id, matrix)` and tallies the biconditionals.
pub fn equivalence_harness<'a, I>(corpus: I, theorem: Theorem, ctx: &NumericContext) -> Result<HarnessReport>
where
    I: IntoIterator<Item = (&'a str, &'a ComplexMatrix)>,
{
    let mut report = HarnessReport::new(theorem);
    for (id, a) in corpus {
        report.absorb(&run_suite(id, a, theorem, ctx)?);
    }
    if report.samples == 0 {
        return Err(Error::EmptyCorpus);
    }
    Ok(report)
}
