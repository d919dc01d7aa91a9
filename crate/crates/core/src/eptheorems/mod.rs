//! Executable characterizations of EP and normal elements, and the harness
//! that tests each biconditional over a corpus.
//!
//! Every item is evaluated under `ℓ2`, where the star is the conjugate
//! transpose and `a†` always exists. Items whose formula involves `a♯` report
//! `preconditions_met = false` when the group inverse does not exist.

mod harness;
mod registry;

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::geninv::{group_inverse, is_ep, mp_inverse};
use crate::normscope::{is_normal, NormSpec};
use crate::numkernel::{range_included, null_included, Comparison, ComplexMatrix, NumericContext};
use crate::{Error, Result};

pub use harness::{equivalence_harness, HarnessReport};

const ROMAN: [&str; 20] = [
    "i", "ii", "iii", "iv", "v", "vi", "vii", "viii", "ix", "x", "xi", "xii", "xiii", "xiv", "xv", "xvi", "xvii",
    "xviii", "xix", "xx",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Theorem {
    /// Five equivalent range/null-space statements.
    LemmaInclusions,
    /// Twenty identities in `a`, `a†`, `a♯`.
    T6,
    /// `a²a† + a†a² = 2a` and two companions.
    T7,
    /// Ascent/descent-qualified identities for operators.
    T8,
    /// Banach-algebra corollary of T8.
    T9,
    /// `R(T*) ⊆ R(T)` iff `T = TTT†`; `N(T) ⊆ N(T*)` iff `T = T†TT`.
    T13,
    /// Normal iff EP and `a†a* = a*a†`.
    T14,
    /// Ten characterizations of normality.
    T15,
    /// C*-version of T14.
    T19,
}

/// The verdict an item is equivalent to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    Ep,
    Normal,
}

impl Theorem {
    pub const ALL: [Theorem; 9] = [
        Theorem::LemmaInclusions,
        Theorem::T6,
        Theorem::T7,
        Theorem::T8,
        Theorem::T9,
        Theorem::T13,
        Theorem::T14,
        Theorem::T15,
        Theorem::T19,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Theorem::LemmaInclusions => "lemma",
            Theorem::T6 => "t6",
            Theorem::T7 => "t7",
            Theorem::T8 => "t8",
            Theorem::T9 => "t9",
            Theorem::T13 => "t13",
            Theorem::T14 => "t14",
            Theorem::T15 => "t15",
            Theorem::T19 => "t19",
        }
    }

    pub fn target(self) -> Target {
        match self {
            Theorem::T14 | Theorem::T15 | Theorem::T19 => Target::Normal,
            _ => Target::Ep,
        }
    }

    pub fn item_count(self) -> usize {
        registry::items(self).len()
    }

    pub fn items(self) -> impl Iterator<Item = ItemId> {
        (0..self.item_count()).map(move |i| ItemId {
            theorem: self,
            index: i as u8,
        })
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Theorem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase();
        Theorem::ALL
            .into_iter()
            .find(|t| t.name() == key)
            .ok_or_else(|| Error::UnknownTheorem(s.to_string()))
    }
}

/// One labelled item of a theorem.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ItemId {
    pub theorem: Theorem,
    index: u8,
}

impl ItemId {
    /// `label` is the lowercase roman numeral, e.g. `"xiii"`.
    pub fn new(theorem: Theorem, label: &str) -> Result<Self> {
        let key = label.trim().to_ascii_lowercase();
        ROMAN[..theorem.item_count()]
            .iter()
            .position(|r| *r == key)
            .map(|i| ItemId {
                theorem,
                index: i as u8,
            })
            .ok_or_else(|| Error::UnknownItem {
                theorem: theorem.name(),
                label: label.to_string(),
            })
    }

    pub fn label(&self) -> &'static str {
        ROMAN[self.index as usize]
    }

    /// Position in the theorem, from 0.
    pub fn position(&self) -> usize {
        self.index as usize
    }

    pub fn formula(&self) -> &'static str {
        self.def().formula
    }

    pub fn needs_group_inverse(&self) -> bool {
        self.def().needs_sharp
    }

    fn def(&self) -> &'static registry::ItemDef {
        &registry::items(self.theorem)[self.index as usize]
    }
}

impl fmt::Display for ItemId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.theorem, self.label())
    }
}

/// Accepts `t6(xiii)` and `t6:xiii`.
impl FromStr for ItemId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (theorem, label) = if let Some(open) = s.find('(') {
            let label = s[open + 1..].strip_suffix(')').ok_or_else(|| Error::UnknownItem {
                theorem: "?",
                label: s.to_string(),
            })?;
            (&s[..open], label)
        } else {
            s.split_once(':').ok_or_else(|| Error::UnknownItem {
                theorem: "?",
                label: s.to_string(),
            })?
        };
        ItemId::new(theorem.parse()?, label)
    }
}

/// Verdict of one identity or inclusion with the quantity it was judged on.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Outcome {
    pub holds: bool,
    pub residual: f64,
}

impl Outcome {
    fn judged(residual: f64, ctx: &NumericContext) -> Self {
        Self {
            holds: residual <= ctx.eq_tol,
            residual,
        }
    }

    /// Both parts must hold; the residual is the larger one.
    fn and(self, other: Outcome) -> Self {
        Self {
            holds: self.holds && other.holds,
            residual: self.residual.max(other.residual),
        }
    }
}

impl From<Comparison> for Outcome {
    fn from(c: Comparison) -> Self {
        Self {
            holds: c.holds,
            residual: c.residual,
        }
    }
}

/// Everything the item formulas are written in.
pub struct Operands {
    pub a: ComplexMatrix,
    pub dag: ComplexMatrix,
    pub sharp: Option<ComplexMatrix>,
    pub star: ComplexMatrix,
    pub ep: Outcome,
    pub normal: Outcome,
}

impl Operands {
    pub fn new(a: &ComplexMatrix, ctx: &NumericContext) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::NotSquare {
                op: "theorem operands",
                rows: a.rows(),
                cols: a.cols(),
            });
        }
        let sharp = match group_inverse(a, ctx) {
            Ok(x) => Some(x),
            Err(Error::NoGroupInverse { .. }) => None,
            Err(e) => return Err(e),
        };
        let ep = is_ep(a, NormSpec::L2, ctx)?;
        Ok(Self {
            a: a.clone(),
            dag: mp_inverse(a, ctx),
            sharp,
            star: a.adjoint(),
            ep: Outcome {
                holds: ep.holds,
                residual: ep.residual,
            },
            normal: is_normal(a, NormSpec::L2, ctx)?.into(),
        })
    }

    fn sh(&self) -> &ComplexMatrix {
        self.sharp.as_ref().expect("item requires the group inverse")
    }

    pub fn target(&self, target: Target) -> Outcome {
        match target {
            Target::Ep => self.ep,
            Target::Normal => self.normal,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ItemReport {
    pub id: ItemId,
    pub holds: bool,
    /// NaN when the preconditions are not met.
    pub residual: f64,
    pub preconditions_met: bool,
    /// T8 (i)–(viii): the recorded ascent/descent finiteness flag.
    pub finiteness: Option<bool>,
}

fn evaluate(ops: &Operands, id: ItemId, ctx: &NumericContext) -> ItemReport {
    let def = id.def();
    let finiteness = def.finiteness.then_some(true);
    if def.needs_sharp && ops.sharp.is_none() {
        return ItemReport {
            id,
            holds: false,
            residual: f64::NAN,
            preconditions_met: false,
            finiteness,
        };
    }
    let out = (def.eval)(ops, ctx);
    ItemReport {
        id,
        holds: out.holds,
        residual: out.residual,
        preconditions_met: finiteness.unwrap_or(true),
        finiteness,
    }
}

pub fn evaluate_item(a: &ComplexMatrix, id: ItemId, ctx: &NumericContext) -> Result<ItemReport> {
    Ok(evaluate(&Operands::new(a, ctx)?, id, ctx))
}

/// A cross-check that is not itself an item: an equivalence or implication
/// between two computed verdicts.
#[derive(Clone, Debug, PartialEq)]
pub struct Pairing {
    pub name: &'static str,
    pub left: bool,
    pub right: bool,
    pub implication: bool,
}

impl Pairing {
    fn iff(name: &'static str, left: bool, right: bool) -> Self {
        Self {
            name,
            left,
            right,
            implication: false,
        }
    }

    pub fn consistent(&self) -> bool {
        if self.implication {
            !self.left || self.right
        } else {
            self.left == self.right
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TheoremSuiteReport {
    pub subject: String,
    pub theorem: Theorem,
    pub items: Vec<ItemReport>,
    pub ep: Outcome,
    pub normal: Outcome,
    pub pairings: Vec<Pairing>,
    pub no_group_inverse: bool,
    /// The target residual lies in `(eq_tol, margin)`.
    pub margin_zone: bool,
    pub consistent: bool,
}

impl TheoremSuiteReport {
    pub fn target(&self) -> Outcome {
        match self.theorem.target() {
            Target::Ep => self.ep,
            Target::Normal => self.normal,
        }
    }
}

fn pairings(ops: &Operands, theorem: Theorem, items: &[ItemReport], ctx: &NumericContext) -> Result<Vec<Pairing>> {
    Ok(match theorem {
        Theorem::T7 => alloc::vec![Pairing {
            name: "t7(i) implies ep",
            left: items[0].holds,
            right: ops.ep.holds,
            implication: true,
        }],
        Theorem::T13 => {
            let range = range_included(&ops.star, &ops.a, ctx)?.holds;
            let null = null_included(&ops.a, &ops.star, ctx)?.holds;
            alloc::vec![
                Pairing::iff("R(a*) ⊆ R(a) iff a = aaa†", range, items[0].holds),
                Pairing::iff("N(a) ⊆ N(a*) iff a = a†aa", null, items[1].holds),
                Pairing::iff("ep iff (i) and (ii)", ops.ep.holds, items[0].holds && items[1].holds),
            ]
        }
        Theorem::T14 | Theorem::T19 => {
            let other = if theorem == Theorem::T14 { Theorem::T19 } else { Theorem::T14 };
            let id = other.items().next().expect("one item");
            alloc::vec![Pairing::iff("t14 agrees with t19", items[0].holds, evaluate(ops, id, ctx).holds)]
        }
        _ => Vec::new(),
    })
}

fn suite_from(subject: &str, ops: &Operands, theorem: Theorem, ctx: &NumericContext) -> Result<TheoremSuiteReport> {
    let items: Vec<ItemReport> = theorem.items().map(|id| evaluate(ops, id, ctx)).collect();
    let pairings = pairings(ops, theorem, &items, ctx)?;
    let target = ops.target(theorem.target());
    let consistent = items
        .iter()
        .filter(|i| i.preconditions_met)
        .all(|i| i.holds == target.holds)
        && pairings.iter().all(Pairing::consistent);
    Ok(TheoremSuiteReport {
        subject: subject.to_string(),
        theorem,
        items,
        ep: ops.ep,
        normal: ops.normal,
        pairings,
        no_group_inverse: ops.sharp.is_none(),
        margin_zone: ctx.in_margin_zone(target.residual),
        consistent,
    })
}

pub fn run_suite(subject: &str, a: &ComplexMatrix, theorem: Theorem, ctx: &NumericContext) -> Result<TheoremSuiteReport> {
    suite_from(subject, &Operands::new(a, ctx)?, theorem, ctx)
}

/// Runs several suites on one matrix, sharing the inverses.
pub fn run_suites(
    subject: &str,
    a: &ComplexMatrix,
    theorems: &[Theorem],
    ctx: &NumericContext,
) -> Result<Vec<TheoremSuiteReport>> {
    let ops = Operands::new(a, ctx)?;
    theorems.iter().map(|&t| suite_from(subject, &ops, t, ctx)).collect()
}

/// The five statements of the inclusion lemma.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LemmaReport {
    /// EP, `R(T) ⊆ R(T†)`, `R(T†) ⊆ R(T)`, `N(T) ⊆ N(T†)`, `N(T†) ⊆ N(T)`.
    pub statements: [bool; 5],
    pub preconditions_met: bool,
    /// All five agree.
    pub consistent: bool,
}

pub fn lemma_inclusions(a: &ComplexMatrix, ctx: &NumericContext) -> Result<LemmaReport> {
    let ops = Operands::new(a, ctx)?;
    let mut statements = [false; 5];
    // The inclusions themselves do not need a♯; only the equivalence does.
    for (k, id) in Theorem::LemmaInclusions.items().enumerate() {
        statements[k] = (id.def().eval)(&ops, ctx).holds;
    }
    Ok(LemmaReport {
        statements,
        preconditions_met: ops.sharp.is_some(),
        consistent: statements.iter().all(|&s| s == statements[0]),
    })
}
