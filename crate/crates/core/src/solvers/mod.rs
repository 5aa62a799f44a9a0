//! Discrete minimizers, flux reconstruction and majorant optimization.

pub mod assembly;
pub mod flux;
pub mod majorant;
pub mod prox;
pub mod psor;

pub use flux::{clip_feasible, reconstruct_flux};
pub use majorant::{
    optimize_majorant_classical, optimize_majorant_double, ClassicalMajorant, DoubleMajorant, MajorantOptions,
};
pub use prox::{improve_double, solve_double};
pub use psor::{improve_classical, solve_classical};

use crate::error::{Error, Result};
use crate::space::{Mesh1D, PiecewiseField};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Relaxation {
    Fixed(f64),
    /// `2 / (1 + sin(π/n))`, the SOR optimum for the unconstrained uniform Laplacian.
    Optimal,
}

impl Relaxation {
    pub fn omega(&self, cells: usize) -> f64 {
        match *self {
            Relaxation::Fixed(w) => w,
            Relaxation::Optimal => 2.0 / (1.0 + (std::f64::consts::PI / cells.max(2) as f64).sin()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverOptions {
    /// Number of uniform cells before merging with the data breakpoints.
    pub cells: usize,
    /// Stop once the largest nodal change of a sweep is at most this.
    pub tol: f64,
    pub max_iter: usize,
    pub relaxation: Relaxation,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            cells: 128,
            tol: 1e-10,
            max_iter: 200_000,
            relaxation: Relaxation::Fixed(1.5),
        }
    }
}

impl SolverOptions {
    pub fn validate(&self) -> Result<f64> {
        if self.cells < 2 {
            return Err(Error::InvalidParameter(format!(
                "need at least 2 cells, got {}",
                self.cells
            )));
        }
        if !(self.tol > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "tolerance must be positive, got {}",
                self.tol
            )));
        }
        let omega = self.relaxation.omega(self.cells);
        if !(omega > 0.0 && omega < 2.0) {
            return Err(Error::InvalidParameter(format!("relaxation {omega} outside (0, 2)")));
        }
        Ok(omega)
    }
}

/// Nodal P1 solution with its iteration record.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteSolution {
    pub mesh: Mesh1D,
    pub values: Vec<f64>,
    pub iterations: usize,
    pub last_change: f64,
    /// Discrete energy after each sweep (index 0 is the initial guess).
    pub energy_history: Vec<f64>,
}

impl DiscreteSolution {
    pub fn to_field(&self) -> PiecewiseField {
        PiecewiseField::piecewise_linear(self.mesh.points(), &self.values).expect("mesh and values agree")
    }

    pub fn h(&self) -> f64 {
        self.mesh.max_cell_width()
    }
}

/// Uniform `cells`-cell mesh of `(a, b)` refined with the breakpoints of the data.
pub fn solver_mesh(a: f64, b: f64, cells: usize, data: &[&PiecewiseField]) -> Result<Mesh1D> {
    let mut mesh = Mesh1D::uniform(a, b, cells)?;
    for d in data {
        mesh = mesh.refined_with(d.mesh().points());
    }
    Ok(mesh)
}

/// Linear interpolation of nodal values onto a finer mesh.
pub(crate) fn prolong(sol: &DiscreteSolution, fine: &Mesh1D) -> Vec<f64> {
    let v = sol.to_field();
    fine.points().iter().map(|&x| v.eval(x)).collect()
}

fn quadratic_energy(k: &[f64], b: &[f64], v: &[f64]) -> f64 {
    let stiff: f64 = k.iter().enumerate().map(|(i, ki)| ki * (v[i + 1] - v[i]).powi(2)).sum();
    0.5 * stiff - b.iter().zip(v).map(|(x, y)| x * y).sum::<f64>()
}
