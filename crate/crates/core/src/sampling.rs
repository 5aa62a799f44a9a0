//! Seeded random fields for property checks.
//!
//! Every generator draws from one ChaCha stream, so a seed fixes the whole sequence of
//! samples. Fluxes are built by integrating a random cell-wise linear residual, which
//! lets the dual sign and box constraints be imposed exactly.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::classical::ClassicalSpec;
use crate::double::DoubleSpec;
use crate::error::{Error, Result};
use crate::space::{FluxField, Mesh1D, PiecewiseField, Quadratic};

/// Probability that a cell of a sampled field sits exactly on a constraint.
const PIN_PROBABILITY: f64 = 0.25;

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        self.rng.random_range(lo..hi)
    }

    pub fn log_uniform(&mut self, lo: f64, hi: f64) -> f64 {
        self.uniform(lo.ln(), hi.ln()).exp()
    }

    fn coin(&mut self, p: f64) -> bool {
        self.rng.random_bool(p)
    }

    /// Jittered uniform mesh of `(a, b)` with roughly `cells` cells that contains `align`.
    pub fn mesh(&mut self, a: f64, b: f64, cells: usize, align: &[f64]) -> Result<Mesh1D> {
        let cells = cells.max(1);
        let h = (b - a) / cells as f64;
        let mut pts = vec![a];
        for i in 1..cells {
            pts.push(a + h * (i as f64 + self.uniform(-0.3, 0.3)));
        }
        pts.push(b);
        Ok(Mesh1D::new(pts)?.refined_with(align))
    }

    /// Admissible piecewise quadratic for a problem with cell-wise convex `φ` and concave `ψ`.
    ///
    /// Nodal values are drawn between the obstacles, with some cells pinned to `φ`; a
    /// concave bubble bounded by the nodal distance to `ψ` is then added.
    pub fn classical_primal(&mut self, spec: &ClassicalSpec, cells: usize, align: &[f64]) -> Result<PiecewiseField> {
        let (a, b) = spec.domain();
        let mesh = self.mesh(a, b, cells, align)?;
        let pts = mesh.points().to_vec();
        let lo: Vec<f64> = pts.iter().map(|&x| spec.lower().map_or(-2.0, |p| p.eval(x))).collect();
        let hi: Vec<f64> = pts
            .iter()
            .zip(&lo)
            .map(|(&x, &l)| spec.upper().map_or(l + 2.0, |p| p.eval(x)))
            .collect();
        let n = pts.len();
        let mut values: Vec<f64> = (0..n).map(|i| self.uniform(lo[i], hi[i].max(lo[i] + 1e-3))).collect();
        for i in 0..n {
            values[i] = values[i].clamp(lo[i], hi[i]);
        }
        let mut pinned = vec![false; n - 1];
        for (k, p) in pinned.iter_mut().enumerate() {
            if spec.lower().is_some() && self.coin(PIN_PROBABILITY) {
                *p = true;
                values[k] = lo[k];
                values[k + 1] = lo[k + 1];
            }
        }
        values[0] = 0.0;
        values[n - 1] = 0.0;
        let cells = (0..n - 1)
            .map(|k| {
                let h = pts[k + 1] - pts[k];
                let slope = (values[k + 1] - values[k]) / h;
                let room = (hi[k] - values[k]).min(hi[k + 1] - values[k + 1]).clamp(0.0, 1.0);
                let bump = if pinned[k] {
                    0.0
                } else {
                    self.uniform(0.0, 1.0) * 4.0 * room / (h * h)
                };
                Quadratic([values[k], slope + bump * h, -bump])
            })
            .collect();
        PiecewiseField::new_continuous(mesh, cells)
    }

    /// Flux whose residual respects the signs forced by missing obstacles.
    ///
    /// `f` must have degree at most one so that the flux stays quadratic.
    pub fn classical_dual(&mut self, spec: &ClassicalSpec, cells: usize, align: &[f64]) -> Result<FluxField> {
        let lo = if spec.lower().is_some() { -20.0 } else { 0.0 };
        let hi = if spec.upper().is_some() { 20.0 } else { 0.0 };
        self.flux_with_residual(spec.f(), cells, align, lo, hi)
    }

    /// C0 piecewise quadratic through the boundary values, with some cells in the zero phase.
    pub fn double_primal(&mut self, spec: &DoubleSpec, cells: usize, align: &[f64]) -> Result<PiecewiseField> {
        let (a, b) = spec.domain();
        let (ga, gb) = spec.boundary();
        let mesh = self.mesh(a, b, cells, align)?;
        let pts = mesh.points().to_vec();
        let n = pts.len();
        let mut values: Vec<f64> = (0..n).map(|_| self.uniform(-1.5, 1.5)).collect();
        let mut zero = vec![false; n - 1];
        for (k, z) in zero.iter_mut().enumerate() {
            if self.coin(PIN_PROBABILITY) {
                *z = true;
                values[k] = 0.0;
                values[k + 1] = 0.0;
            }
        }
        values[0] = ga;
        values[n - 1] = gb;
        let cells = (0..n - 1)
            .map(|k| {
                let h = pts[k + 1] - pts[k];
                let slope = (values[k + 1] - values[k]) / h;
                let bump = if zero[k] { 0.0 } else { self.uniform(-4.0, 4.0) };
                Quadratic([values[k], slope - bump * h, bump])
            })
            .collect();
        PiecewiseField::new_continuous(mesh, cells)
    }

    /// Feasible flux: `div y* + f ∈ [−α₋, α₊]`, touching the bounds on some cells.
    pub fn double_dual(&mut self, spec: &DoubleSpec, cells: usize, align: &[f64]) -> Result<FluxField> {
        self.flux_with_residual(spec.f(), cells, align, -spec.alpha_minus(), spec.alpha_plus())
    }

    /// Flux with cell-wise linear residual `div y* + f` in `[lo, hi]`.
    ///
    /// Some cells take the residual `lo`, `hi` or `0` exactly, so that the sign and
    /// equality sets of the residual have positive measure.
    pub fn flux_with_residual(
        &mut self,
        f: &PiecewiseField,
        cells: usize,
        align: &[f64],
        lo: f64,
        hi: f64,
    ) -> Result<FluxField> {
        if f.degree() > 1 {
            return Err(Error::InvalidParameter(
                "sampled fluxes need a source of degree at most one".into(),
            ));
        }
        let (a, b) = f.domain();
        let mut pts: Vec<f64> = f.mesh().points().to_vec();
        pts.extend_from_slice(align);
        let mesh = self.mesh(a, b, cells, &pts)?;
        let f = f.refined(&mesh)?;
        let mut y = self.uniform(-5.0, 5.0);
        let mut out = Vec::with_capacity(mesh.cell_count());
        for (k, (l, r)) in mesh.cells().enumerate() {
            let h = r - l;
            let (r0, r1) = if self.coin(PIN_PROBABILITY) {
                let pick = [lo, hi, 0.0][self.rng.random_range(0..3)];
                (pick, pick)
            } else if hi > lo {
                (self.uniform(lo, hi), self.uniform(lo, hi))
            } else {
                (lo, lo)
            };
            // y*' = r − f on the cell
            let fc = f.cells()[k].coeffs();
            let g0 = r0 - fc[0];
            let g1 = (r1 - r0) / h - fc[1];
            let cell = Quadratic([y, g0, 0.5 * g1]);
            y = cell.eval(h);
            out.push(cell);
        }
        FluxField::new(PiecewiseField::new_continuous(mesh, out)?)
    }

    /// Cell-wise linear field with nodal values in `[lo, hi]` on a mesh of `(a, b)`.
    pub fn box_field(&mut self, a: f64, b: f64, cells: usize, lo: f64, hi: f64) -> Result<PiecewiseField> {
        let mesh = self.mesh(a, b, cells, &[])?;
        let values: Vec<Quadratic> = mesh
            .cells()
            .map(|(l, r)| {
                let (v0, v1) = (self.uniform(lo, hi), self.uniform(lo, hi));
                Quadratic::linear(v0, (v1 - v0) / (r - l))
            })
            .collect();
        PiecewiseField::new(mesh, values)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::admissible;
    use crate::exact::{classical_exact, double_exact};

    #[test]
    fn samples_are_admissible_and_reproducible() {
        let bench = classical_exact(-14.0, -1.0).unwrap();
        let align = [bench.contact_left(), bench.contact_right()];
        let mut s = Sampler::new(7);
        for _ in 0..20 {
            let v = s.classical_primal(&bench.spec, 12, &align).unwrap();
            assert!(admissible(&v, &bench.spec));
            let y = s.classical_dual(&bench.spec, 12, &align).unwrap();
            assert!(y.residual(bench.spec.f()).unwrap().range().1 <= 1e-12);
        }
        let a = Sampler::new(3).classical_primal(&bench.spec, 8, &align).unwrap();
        let b = Sampler::new(3).classical_primal(&bench.spec, 8, &align).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn double_samples_are_feasible() {
        let bench = double_exact(8.0, 8.0).unwrap();
        let mut s = Sampler::new(11);
        for _ in 0..20 {
            let v = s.double_primal(&bench.spec, 10, &[-0.5, 0.5]).unwrap();
            assert!(bench.spec.check_boundary(&v).is_ok());
            let y = s.double_dual(&bench.spec, 10, &[-0.5, 0.5]).unwrap();
            assert!(bench.spec.check_feasible(&y).is_ok());
        }
    }
}
