use super::field::PiecewiseField;
use super::mesh::{merge_meshes, Mesh1D};
use super::quadrature::integrate_fields;
use crate::error::{Error, Result};

/// Cell-wise constant, strictly positive diffusion coefficient `A`.
#[derive(Debug, Clone, PartialEq)]
pub struct Diffusion {
    field: PiecewiseField,
}

impl Diffusion {
    pub fn new(field: PiecewiseField) -> Result<Self> {
        for (k, q) in field.cells().iter().enumerate() {
            if q.degree() > 0 {
                return Err(Error::NonConstantDiffusion { cell: k });
            }
            if !(q.0[0] > 0.0) {
                return Err(Error::NonPositiveDiffusion { cell: k, value: q.0[0] });
            }
        }
        Ok(Self { field })
    }

    pub fn constant(a: f64, b: f64, value: f64) -> Result<Self> {
        Self::new(PiecewiseField::constant(Mesh1D::new(vec![a, b])?, value))
    }

    pub fn unit(a: f64, b: f64) -> Result<Self> {
        Self::constant(a, b, 1.0)
    }

    pub fn field(&self) -> &PiecewiseField {
        &self.field
    }

    pub fn domain(&self) -> (f64, f64) {
        self.field.domain()
    }

    pub fn min(&self) -> f64 {
        self.field.range().0
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.field.eval(x)
    }

    /// `A · g` on the common refinement of both meshes.
    pub fn times(&self, g: &PiecewiseField) -> Result<PiecewiseField> {
        let mesh = merge_meshes(g.mesh(), self.field.mesh())?;
        let gf = g.refined(&mesh)?;
        let af = self.field.refined(&mesh)?;
        let cells = gf
            .cells()
            .iter()
            .zip(af.cells())
            .map(|(q, a)| q.scaled(a.0[0]))
            .collect();
        PiecewiseField::new(mesh, cells)
    }
}

/// Upper bound for the Friedrichs constant of `(a, b)`: `(b - a) / (π √min A)`.
///
/// Sharp for constant `A`, where it is the reciprocal square root of the first
/// Dirichlet eigenvalue of `-(A w')'`.
pub fn friedrichs_constant(mesh: &Mesh1D, a: &Diffusion) -> Result<f64> {
    mesh.same_domain(a.field().mesh())?;
    Ok(mesh.len() / (std::f64::consts::PI * a.min().sqrt()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Weight {
    A,
    InverseA,
}

/// `∫ A q²` or `∫ q² / A` (no factor ½).
pub fn weighted_norm_sq(q: &PiecewiseField, a: &Diffusion, weight: Weight) -> Result<f64> {
    integrate_fields(&[q, a.field()], None, |_, v| match weight {
        Weight::A => v[1] * v[0] * v[0],
        Weight::InverseA => v[0] * v[0] / v[1],
    })
}

/// `‖A v' − y‖²_{A⁻¹} = ∫ (A v' − y)² / A` (no factor ½).
pub fn flux_misfit_sq(v: &PiecewiseField, y: &PiecewiseField, a: &Diffusion) -> Result<f64> {
    let dv = v.derivative();
    integrate_fields(&[&dv, y, a.field()], None, |_, x| {
        let d = x[2] * x[0] - x[1];
        d * d / x[2]
    })
}
