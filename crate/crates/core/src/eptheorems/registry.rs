//! One table with every item's defining identity.

use crate::numkernel::{null_included, range_included, relative_residual, ComplexMatrix, NumericContext};

use super::{Operands, Outcome, Theorem};

pub(crate) struct ItemDef {
    pub formula: &'static str,
    pub needs_sharp: bool,
    /// T8 (i)–(viii): the ascent/descent of `T` or `T†` is finite.
    pub finiteness: bool,
    pub eval: fn(&Operands, &NumericContext) -> Outcome,
}

type M = ComplexMatrix;

fn p(f: &[&M]) -> M {
    ComplexMatrix::product(f)
}

fn eq(x: &M, y: &M, ctx: &NumericContext) -> Outcome {
    Outcome::judged(relative_residual(x, y), ctx)
}

fn sum_eq_twice(x: &M, y: &M, z: &M, ctx: &NumericContext) -> Outcome {
    eq(&(x + y), &z.scale_real(2.0), ctx)
}

const fn plain(formula: &'static str, eval: fn(&Operands, &NumericContext) -> Outcome) -> ItemDef {
    ItemDef {
        formula,
        needs_sharp: false,
        finiteness: false,
        eval,
    }
}

const fn sharp(formula: &'static str, eval: fn(&Operands, &NumericContext) -> Outcome) -> ItemDef {
    ItemDef {
        formula,
        needs_sharp: true,
        finiteness: false,
        eval,
    }
}

const fn finite(formula: &'static str, eval: fn(&Operands, &NumericContext) -> Outcome) -> ItemDef {
    ItemDef {
        formula,
        needs_sharp: false,
        finiteness: true,
        eval,
    }
}

fn inclusion(r: crate::Result<crate::numkernel::Inclusion>) -> Outcome {
    let inc = r.expect("square operands of equal shape");
    Outcome {
        holds: inc.holds,
        residual: inc.residual,
    }
}

/// `a = a†aa`
fn side_left(o: &Operands, c: &NumericContext) -> Outcome {
    eq(&o.a, &p(&[&o.dag, &o.a, &o.a]), c)
}

/// `a = aaa†`
fn side_right(o: &Operands, c: &NumericContext) -> Outcome {
    eq(&o.a, &p(&[&o.a, &o.a, &o.dag]), c)
}

fn ep_and_star_commutes(o: &Operands, c: &NumericContext, star_first: bool) -> Outcome {
    let comm = if star_first {
        eq(&(&o.star * &o.dag), &(&o.dag * &o.star), c)
    } else {
        eq(&(&o.dag * &o.star), &(&o.star * &o.dag), c)
    };
    o.ep.and(comm)
}

static LEMMA: [ItemDef; 5] = [
    sharp("T is EP", |o, _| o.ep),
    sharp("R(T) ⊆ R(T†)", |o, c| inclusion(range_included(&o.a, &o.dag, c))),
    sharp("R(T†) ⊆ R(T)", |o, c| inclusion(range_included(&o.dag, &o.a, c))),
    sharp("N(T) ⊆ N(T†)", |o, c| inclusion(null_included(&o.a, &o.dag, c))),
    sharp("N(T†) ⊆ N(T)", |o, c| inclusion(null_included(&o.dag, &o.a, c))),
];

static T6: [ItemDef; 20] = [
    sharp("aa†a♯ = a†a♯a", |o, c| eq(&p(&[&o.a, &o.dag, o.sh()]), &p(&[&o.dag, o.sh(), &o.a]), c)),
    sharp("aa†a♯ = a♯aa†", |o, c| eq(&p(&[&o.a, &o.dag, o.sh()]), &p(&[o.sh(), &o.a, &o.dag]), c)),
    sharp("aa♯a† = a†aa♯", |o, c| eq(&p(&[&o.a, o.sh(), &o.dag]), &p(&[&o.dag, &o.a, o.sh()]), c)),
    sharp("aa♯a† = a♯a†a", |o, c| eq(&p(&[&o.a, o.sh(), &o.dag]), &p(&[o.sh(), &o.dag, &o.a]), c)),
    sharp("a†aa♯ = a♯a†a", |o, c| eq(&p(&[&o.dag, &o.a, o.sh()]), &p(&[o.sh(), &o.dag, &o.a]), c)),
    sharp("(a†)²a♯ = a†a♯a†", |o, c| eq(&p(&[&o.dag, &o.dag, o.sh()]), &p(&[&o.dag, o.sh(), &o.dag]), c)),
    sharp("aa♯a† = a♯", |o, c| eq(&p(&[&o.a, o.sh(), &o.dag]), o.sh(), c)),
    sharp("a†a♯ = a♯a†", |o, c| eq(&p(&[&o.dag, o.sh()]), &p(&[o.sh(), &o.dag]), c)),
    sharp("a†a♯a† = a♯(a†)²", |o, c| eq(&p(&[&o.dag, o.sh(), &o.dag]), &p(&[o.sh(), &o.dag, &o.dag]), c)),
    sharp("a†(a♯)² = a♯a†a♯", |o, c| eq(&p(&[&o.dag, o.sh(), o.sh()]), &p(&[o.sh(), &o.dag, o.sh()]), c)),
    sharp("a†(a♯)² = (a♯)²a†", |o, c| eq(&p(&[&o.dag, o.sh(), o.sh()]), &p(&[o.sh(), o.sh(), &o.dag]), c)),
    sharp("(a♯)²a† = a♯a†a♯", |o, c| eq(&p(&[o.sh(), o.sh(), &o.dag]), &p(&[o.sh(), &o.dag, o.sh()]), c)),
    sharp("aa♯ = a†a", |o, c| eq(&p(&[&o.a, o.sh()]), &p(&[&o.dag, &o.a]), c)),
    sharp("a†a† = a†a♯", |o, c| eq(&p(&[&o.dag, &o.dag]), &p(&[&o.dag, o.sh()]), c)),
    sharp("a†a† = a♯a†", |o, c| eq(&p(&[&o.dag, &o.dag]), &p(&[o.sh(), &o.dag]), c)),
    sharp("(a†)² = (a♯)²", |o, c| eq(&p(&[&o.dag, &o.dag]), &p(&[o.sh(), o.sh()]), c)),
    sharp("a†a♯ = (a♯)²", |o, c| eq(&p(&[&o.dag, o.sh()]), &p(&[o.sh(), o.sh()]), c)),
    sharp("a(a†)² = a♯", |o, c| eq(&p(&[&o.a, &o.dag, &o.dag]), o.sh(), c)),
    sharp("a♯a†a = a†", |o, c| eq(&p(&[o.sh(), &o.dag, &o.a]), &o.dag, c)),
    sharp("a†aa♯ = a†", |o, c| eq(&p(&[&o.dag, &o.a, o.sh()]), &o.dag, c)),
];

static T7: [ItemDef; 3] = [
    plain("a²a† + a†a² = 2a", |o, c| {
        sum_eq_twice(&p(&[&o.a, &o.a, &o.dag]), &p(&[&o.dag, &o.a, &o.a]), &o.a, c)
    }),
    plain("(a†)²a + a(a†)² = 2a†", |o, c| {
        sum_eq_twice(&p(&[&o.dag, &o.dag, &o.a]), &p(&[&o.a, &o.dag, &o.dag]), &o.dag, c)
    }),
    sharp("a†a♯a + aa♯a† = 2a†", |o, c| {
        sum_eq_twice(&p(&[&o.dag, o.sh(), &o.a]), &p(&[&o.a, o.sh(), &o.dag]), &o.dag, c)
    }),
];

static T8: [ItemDef; 12] = [
    finite("a(T) < ∞ and T(T†)² = T†", |o, c| eq(&p(&[&o.a, &o.dag, &o.dag]), &o.dag, c)),
    finite("a(T†) < ∞ and T†T² = T", |o, c| eq(&p(&[&o.dag, &o.a, &o.a]), &o.a, c)),
    finite("d(T†) < ∞ and T²T† = T", |o, c| eq(&p(&[&o.a, &o.a, &o.dag]), &o.a, c)),
    finite("d(T) < ∞ and (T†)²T = T†", |o, c| eq(&p(&[&o.dag, &o.dag, &o.a]), &o.dag, c)),
    finite("a(T) < ∞ and T²T† = T", |o, c| eq(&p(&[&o.a, &o.a, &o.dag]), &o.a, c)),
    finite("a(T†) < ∞ and (T†)²T = T†", |o, c| eq(&p(&[&o.dag, &o.dag, &o.a]), &o.dag, c)),
    finite("d(T) < ∞ and T†T² = T", |o, c| eq(&p(&[&o.dag, &o.a, &o.a]), &o.a, c)),
    finite("d(T†) < ∞ and T(T†)² = T†", |o, c| eq(&p(&[&o.a, &o.dag, &o.dag]), &o.dag, c)),
    sharp("T = T†T²", |o, c| eq(&o.a, &p(&[&o.dag, &o.a, &o.a]), c)),
    sharp("T = T²T†", |o, c| eq(&o.a, &p(&[&o.a, &o.a, &o.dag]), c)),
    sharp("T† = T(T†)²", |o, c| eq(&o.dag, &p(&[&o.a, &o.dag, &o.dag]), c)),
    sharp("T† = (T†)²T", |o, c| eq(&o.dag, &p(&[&o.dag, &o.dag, &o.a]), c)),
];

static T9: [ItemDef; 4] = [
    sharp("a = a†a²", |o, c| eq(&o.a, &p(&[&o.dag, &o.a, &o.a]), c)),
    sharp("a = a²a†", |o, c| eq(&o.a, &p(&[&o.a, &o.a, &o.dag]), c)),
    sharp("a† = a(a†)²", |o, c| eq(&o.dag, &p(&[&o.a, &o.dag, &o.dag]), c)),
    sharp("a† = (a†)²a", |o, c| eq(&o.dag, &p(&[&o.dag, &o.dag, &o.a]), c)),
];

static T13: [ItemDef; 2] = [
    plain("T = TTT†", side_right),
    plain("T = T†TT", side_left),
];

static T14: [ItemDef; 1] = [plain("a is EP and a†a* = a*a†", |o, c| ep_and_star_commutes(o, c, false))];

static T19: [ItemDef; 1] = [plain("a is EP and a*a† = a†a*", |o, c| ep_and_star_commutes(o, c, true))];

static T15: [ItemDef; 10] = [
    sharp("aa*a♯ = a*a♯a and a = a†aa", |o, c| {
        eq(&p(&[&o.a, &o.star, o.sh()]), &p(&[&o.star, o.sh(), &o.a]), c).and(side_left(o, c))
    }),
    sharp("aa*a♯ = a♯aa* and a = aaa†", |o, c| {
        eq(&p(&[&o.a, &o.star, o.sh()]), &p(&[o.sh(), &o.a, &o.star]), c).and(side_right(o, c))
    }),
    sharp("aa♯a* = a♯a*a and a = aaa†", |o, c| {
        eq(&p(&[&o.a, o.sh(), &o.star]), &p(&[o.sh(), &o.star, &o.a]), c).and(side_right(o, c))
    }),
    sharp("a*aa♯ = a♯a*a and a = a†aa", |o, c| {
        eq(&p(&[&o.star, &o.a, o.sh()]), &p(&[o.sh(), &o.star, &o.a]), c).and(side_left(o, c))
    }),
    sharp("a†a*a♯ = a†a♯a* and a = aaa†", |o, c| {
        eq(&p(&[&o.dag, &o.star, o.sh()]), &p(&[&o.dag, o.sh(), &o.star]), c).and(side_right(o, c))
    }),
    sharp("a*a♯a† = a♯a*a† and a = a†aa", |o, c| {
        eq(&p(&[&o.star, o.sh(), &o.dag]), &p(&[o.sh(), &o.star, &o.dag]), c).and(side_left(o, c))
    }),
    sharp("a* = aa*a♯", |o, c| eq(&o.star, &p(&[&o.a, &o.star, o.sh()]), c)),
    sharp("a* = a♯a*a", |o, c| eq(&o.star, &p(&[o.sh(), &o.star, &o.a]), c)),
    sharp("aa*a = a*aa and a = a†aa", |o, c| {
        eq(&p(&[&o.a, &o.star, &o.a]), &p(&[&o.star, &o.a, &o.a]), c).and(side_left(o, c))
    }),
    sharp("aaa* = aa*a and a = aaa†", |o, c| {
        eq(&p(&[&o.a, &o.a, &o.star]), &p(&[&o.a, &o.star, &o.a]), c).and(side_right(o, c))
    }),
];

pub(crate) fn items(theorem: Theorem) -> &'static [ItemDef] {
    match theorem {
        Theorem::LemmaInclusions => &LEMMA,
        Theorem::T6 => &T6,
        Theorem::T7 => &T7,
        Theorem::T8 => &T8,
        Theorem::T9 => &T9,
        Theorem::T13 => &T13,
        Theorem::T14 => &T14,
        Theorem::T15 => &T15,
        Theorem::T19 => &T19,
    }
}
