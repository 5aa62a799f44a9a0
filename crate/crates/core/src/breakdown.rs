use crate::error::{Error, Result};

/// Relative coefficient of the default identity tolerance `1e-10 · (1 + |gap|)`.
pub const IDENTITY_TOL: f64 = 1e-10;

/// The two sides of an error identity: `quadratic + nonlinear = gap`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorBreakdown {
    pub quadratic: f64,
    pub nonlinear: f64,
    pub total: f64,
    pub gap: f64,
    pub residual: f64,
}

impl ErrorBreakdown {
    pub fn new(quadratic: f64, nonlinear: f64, gap: f64) -> Self {
        let total = quadratic + nonlinear;
        Self {
            quadratic,
            nonlinear,
            total,
            gap,
            residual: (total - gap).abs(),
        }
    }

    pub fn zero() -> Self {
        Self::new(0.0, 0.0, 0.0)
    }

    /// Nonlinear part as a percentage of the total (0 when the total vanishes).
    pub fn share_pct(&self) -> f64 {
        if self.total == 0.0 {
            0.0
        } else {
            100.0 * self.nonlinear / self.total
        }
    }

    pub fn tolerance(&self, rel: f64) -> f64 {
        rel * (1.0 + self.gap.abs())
    }

    pub fn check(self, name: &'static str, rel: f64) -> Result<Self> {
        check_residual(name, self.residual, self.tolerance(rel))?;
        Ok(self)
    }
}

/// Fully computable split `½‖A v' − y*‖²_{A⁻¹} + Υ = J(v) − I*(y*)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CombinedBreakdown {
    pub half_flux_misfit_sq: f64,
    pub upsilon: f64,
    pub sum: f64,
    pub gap: f64,
    pub residual: f64,
}

impl CombinedBreakdown {
    pub fn new(half_flux_misfit_sq: f64, upsilon: f64, gap: f64) -> Self {
        let sum = half_flux_misfit_sq + upsilon;
        Self {
            half_flux_misfit_sq,
            upsilon,
            sum,
            gap,
            residual: (sum - gap).abs(),
        }
    }

    pub fn tolerance(&self, rel: f64) -> f64 {
        rel * (1.0 + self.gap.abs())
    }

    pub fn check(self, name: &'static str, rel: f64) -> Result<Self> {
        check_residual(name, self.residual, self.tolerance(rel))?;
        Ok(self)
    }
}

fn check_residual(name: &'static str, residual: f64, tolerance: f64) -> Result<()> {
    // `!(<=)` so that a NaN residual fails too
    if !(residual <= tolerance) {
        return Err(Error::IdentityViolation {
            name,
            residual,
            tolerance,
        });
    }
    Ok(())
}
