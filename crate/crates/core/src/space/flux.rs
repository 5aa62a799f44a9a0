use super::field::PiecewiseField;
use crate::error::Result;

/// A continuous field read as a flux `y*`, with divergence `(y*)'`.
#[derive(Debug, Clone, PartialEq)]
pub struct FluxField(PiecewiseField);

impl FluxField {
    /// Rejects broken fluxes instead of differentiating them distributionally.
    pub fn new(field: PiecewiseField) -> Result<Self> {
        field.require_continuous()?;
        Ok(Self(field))
    }

    pub fn field(&self) -> &PiecewiseField {
        &self.0
    }

    pub fn into_field(self) -> PiecewiseField {
        self.0
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.0.eval(x)
    }

    pub fn divergence(&self) -> PiecewiseField {
        self.0.derivative()
    }

    /// `div y* + f`.
    pub fn residual(&self, f: &PiecewiseField) -> Result<PiecewiseField> {
        self.divergence().add(f)
    }
}
