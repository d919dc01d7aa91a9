use crate::{Error, Result};

/// Tolerances, grid sizes and sampling budgets for the approximate
/// predicates.
///
/// Residuals closer to zero than `eq_tol` count as identities holding;
/// residuals above `margin` count as identities decisively failing. The gap in
/// between is reported but never asserted on.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NumericContext {
    /// Relative equality tolerance for matrix identities.
    pub eq_tol: f64,
    /// Singular values below `rank_tol × σ_max` count as zero.
    pub rank_tol: f64,
    /// Bound on hermitian deviations.
    pub herm_tol: f64,
    /// Number of points on the `t ∈ [-π, π]` grid of the hermitian predicate.
    pub exp_grid_points: usize,
    /// Number of random unit vectors used by the semi-inner-product probe.
    pub sip_samples: usize,
    /// Separation above which an identity is asserted to fail.
    pub margin: f64,
    /// Seed for the semi-inner-product probe.
    pub sip_seed: u64,
}

impl Default for NumericContext {
    fn default() -> Self {
        Self {
            eq_tol: 1e-8,
            rank_tol: 1e-10,
            herm_tol: 1e-7,
            exp_grid_points: 64,
            sip_samples: 256,
            margin: 1e-4,
            sip_seed: 0x5eed_cafe,
        }
    }
}

impl NumericContext {
    /// Context driven by a single equality tolerance: `rank_tol = tol / 100`
    /// and `herm_tol = 10 · tol`, everything else at its default.
    pub fn with_tolerance(tol: f64) -> Result<Self> {
        let ctx = Self {
            eq_tol: tol,
            rank_tol: tol / 100.0,
            herm_tol: 10.0 * tol,
            ..Self::default()
        };
        ctx.validate()?;
        Ok(ctx)
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |x: f64| x.is_finite() && x > 0.0;
        if !(positive(self.eq_tol) && positive(self.rank_tol) && positive(self.herm_tol)) {
            return Err(Error::InvalidContext("tolerances must be finite and positive"));
        }
        if !positive(self.margin) || self.margin <= self.eq_tol {
            return Err(Error::InvalidContext("margin must exceed eq_tol"));
        }
        if self.exp_grid_points == 0 || self.sip_samples == 0 {
            return Err(Error::InvalidContext("grid and sample counts must be positive"));
        }
        Ok(())
    }

    /// True when `residual` lies strictly between `eq_tol` and `margin`.
    pub fn in_margin_zone(&self, residual: f64) -> bool {
        residual > self.eq_tol && residual < self.margin
    }
}
