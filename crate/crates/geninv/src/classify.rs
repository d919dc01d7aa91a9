use geninv_core::geninv::{group_inverse, is_ep, mp_inverse, mp_via_group, verify_group, verify_mp, NotEpReason};
use geninv_core::normscope::{is_hermitian, is_normal, HermitianVerdict};
use geninv_core::specrep::{ascent_descent, quasinilpotent_report};
use geninv_core::{ComplexMatrix, Error as CoreError, NormSpec, NumericContext};
use serde::{Deserialize, Serialize};

use crate::json::{JsonMatrix, Num};
use crate::Result;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ToleranceDto {
    pub eq_tol: Num,
    pub rank_tol: Num,
    pub herm_tol: Num,
    pub margin: Num,
}

impl From<&NumericContext> for ToleranceDto {
    fn from(c: &NumericContext) -> Self {
        Self {
            eq_tol: Num(c.eq_tol),
            rank_tol: Num(c.rank_tol),
            herm_tol: Num(c.herm_tol),
            margin: Num(c.margin),
        }
    }
}

/// One flag: `value` is `null` when the predicate could not decide.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Flag {
    pub value: Option<bool>,
    pub residual: Num,
    pub tolerance: Num,
    /// What `residual` measures.
    pub test: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Flag {
    fn new(value: Option<bool>, residual: f64, tolerance: f64, test: &str) -> Self {
        Self {
            value,
            residual: Num(residual),
            tolerance: Num(tolerance),
            test: test.to_string(),
            note: None,
        }
    }

    fn note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Flags {
    pub mp_invertible: Flag,
    pub group_invertible: Flag,
    pub ep: Flag,
    pub normal: Flag,
    pub hermitian: Flag,
    pub quasinilpotent: Flag,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Inverses {
    pub mp: Option<JsonMatrix>,
    pub group: Option<JsonMatrix>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub id: String,
    pub n: usize,
    pub norm: String,
    pub tolerance: ToleranceDto,
    pub flags: Flags,
    pub inverses: Inverses,
    pub ascent: usize,
    pub descent: usize,
    pub spectral_radius: Num,
}

const PENROSE: &str = "max(|axa - a|, |xax - x|) / max(1, |a||x|); ax and xa hermitian";

fn mp_flag(a: &ComplexMatrix, norm: NormSpec, ctx: &NumericContext) -> Result<(Flag, Option<ComplexMatrix>)> {
    if norm == NormSpec::L2 {
        let x = mp_inverse(a, ctx);
        let w = verify_mp(a, &x, norm, ctx)?;
        return Ok((Flag::new(Some(w.accepted), w.max_residual(), ctx.eq_tol, PENROSE), Some(x)));
    }
    // No search under other norms: only a♯ and the l2 pseudoinverse are tried.
    let mut candidates = Vec::new();
    if let Ok(x) = mp_via_group(a, norm, ctx) {
        candidates.push(x);
    }
    candidates.push(mp_inverse(a, ctx));
    let mut best = None;
    for x in candidates {
        let w = verify_mp(a, &x, norm, ctx)?;
        if w.accepted {
            return Ok((Flag::new(Some(true), w.max_residual(), ctx.eq_tol, PENROSE), Some(x)));
        }
        best.get_or_insert(w.max_residual());
    }
    let flag = Flag::new(None, best.unwrap_or(f64::NAN), ctx.eq_tol, PENROSE)
        .note(format!("neither a# nor the l2 pseudoinverse satisfies the Penrose conditions under {norm}"));
    Ok((flag, None))
}

fn group_flag(a: &ComplexMatrix, ctx: &NumericContext) -> Result<(Flag, Option<ComplexMatrix>)> {
    match group_inverse(a, ctx) {
        Ok(x) => {
            let w = verify_group(a, &x, ctx)?;
            let test = "max(|axa - a|, |xax - x|, |ax - xa|) / max(1, |a||x|)";
            Ok((Flag::new(Some(true), w.max_residual(), ctx.eq_tol, test), Some(x)))
        }
        Err(CoreError::NoGroupInverse { min_singular_ratio }) => {
            let test = "smallest singular value of a on R(a) relative to |a|; at most rank_tol means no group inverse";
            Ok((Flag::new(Some(false), min_singular_ratio, ctx.rank_tol, test), None))
        }
        Err(e) => Err(e.into()),
    }
}

fn ep_flag(a: &ComplexMatrix, norm: NormSpec, ctx: &NumericContext) -> Result<Flag> {
    let v = is_ep(a, norm, ctx)?;
    let test = if norm == NormSpec::L2 {
        "|aa+ - a+a| relative"
    } else {
        "|aa# - a#a| relative; aa# hermitian"
    };
    let value = match v.reason {
        Some(NotEpReason::Inconclusive) => None,
        _ => Some(v.holds),
    };
    let flag = Flag::new(value, v.residual, ctx.eq_tol, test);
    Ok(match v.reason {
        Some(NotEpReason::NoGroupInverse) => flag.note("no group inverse"),
        Some(NotEpReason::NotHermitian) => flag.note("aa# is not hermitian"),
        Some(NotEpReason::Inconclusive) => flag.note("hermitian verdict on aa# inconclusive"),
        _ => flag,
    })
}

fn normal_flag(a: &ComplexMatrix, norm: NormSpec, ctx: &NumericContext) -> Result<Flag> {
    let test = "|uv - vu| relative, a = u + iv";
    match is_normal(a, norm, ctx) {
        Ok(c) => Ok(Flag::new(Some(c.holds), c.residual, ctx.eq_tol, test)),
        Err(CoreError::UnsupportedNorm { .. }) => {
            Ok(Flag::new(None, f64::NAN, ctx.eq_tol, test).note(format!("no native hermitian decomposition under {norm}")))
        }
        Err(e) => Err(e.into()),
    }
}

pub fn classify(id: &str, a: &ComplexMatrix, norm: NormSpec, ctx: &NumericContext) -> Result<ClassificationReport> {
    if !a.is_square() {
        return Err(CoreError::NotSquare {
            op: "classify",
            rows: a.rows(),
            cols: a.cols(),
        }
        .into());
    }
    let (mp_invertible, mp) = mp_flag(a, norm, ctx)?;
    let (group_invertible, group) = group_flag(a, ctx)?;
    let h = is_hermitian(a, norm, ctx)?;
    let hermitian = Flag::new(
        match h.verdict {
            HermitianVerdict::Hermitian => Some(true),
            HermitianVerdict::NotHermitian => Some(false),
            HermitianVerdict::Inconclusive => None,
        },
        h.max_exp_deviation,
        ctx.herm_tol,
        "max over the t grid of |exp(ita)| - 1",
    );
    let q = quasinilpotent_report(a, ctx)?;
    let quasinilpotent = Flag::new(Some(q.holds), q.spectral_radius, q.bound, "spectral radius against eq_tol max(1, |a|)");
    let ad = ascent_descent(a, ctx)?;
    Ok(ClassificationReport {
        id: id.to_string(),
        n: a.rows(),
        norm: norm.to_string(),
        tolerance: ctx.into(),
        flags: Flags {
            mp_invertible,
            group_invertible,
            ep: ep_flag(a, norm, ctx)?,
            normal: normal_flag(a, norm, ctx)?,
            hermitian,
            quasinilpotent,
        },
        inverses: Inverses {
            mp: mp.map(JsonMatrix),
            group: group.map(JsonMatrix),
        },
        ascent: ad.ascent,
        descent: ad.descent,
        spectral_radius: Num(q.spectral_radius),
    })
}
