//! Closed-form benchmarks and their ε-perturbations.

use crate::classical::ClassicalSpec;
use crate::double::DoubleSpec;
use crate::error::{Error, Result};
use crate::space::{interpolate_nodal, Diffusion, FluxField, Mesh1D, PiecewiseField, Quadratic};

/// Exact minimizer, its flux `p* = A u'` and the common optimal energy `J(u) = I*(p*)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactSolution {
    pub u: PiecewiseField,
    pub flux: FluxField,
    pub energy: f64,
}

impl ExactSolution {
    pub fn new(u: PiecewiseField, diffusion: &Diffusion, energy: f64) -> Result<Self> {
        let flux = FluxField::new(diffusion.times(&u.derivative())?)?;
        Ok(Self { u, flux, energy })
    }
}

/// Piecewise field built from `(left, right, vertex, curvature, base)` pieces:
/// `base + ½ curvature (x − vertex)²` on `[left, right]`.
fn parabolas(pieces: &[(f64, f64, f64, f64, f64)]) -> Result<PiecewiseField> {
    let mut points = vec![pieces[0].0];
    let mut cells = Vec::with_capacity(pieces.len());
    for &(l, r, vertex, curv, base) in pieces {
        points.push(r);
        cells.push(Quadratic([base, 0.0, 0.5 * curv]).shifted(l - vertex));
    }
    PiecewiseField::new(Mesh1D::new(points)?, cells)
}

/// `−u'' = f` with `u ≥ φ` on `(0, 1)`, constant `f < 0` and `φ < 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassicalBenchmark {
    pub f: f64,
    pub phi: f64,
    /// Radius of the contact set `(½ − r, ½ + r)`.
    pub r: f64,
    pub solution: ExactSolution,
    pub spec: ClassicalSpec,
}

/// Solution with contact set `(½ − radius, ½ + radius)`; `f` must equal `2φ/(½ − radius)²`.
fn classical_shape(f: f64, phi: f64, radius: f64) -> Result<PiecewiseField> {
    let (xl, xr) = (0.5 - radius, 0.5 + radius);
    parabolas(&[(0.0, xl, xl, -f, phi), (xl, xr, xl, 0.0, phi), (xr, 1.0, xr, -f, phi)])
}

pub fn classical_exact(f: f64, phi: f64) -> Result<ClassicalBenchmark> {
    if !(f < 0.0 && phi < 0.0) {
        return Err(Error::InvalidParameter(format!(
            "need f < 0 and φ < 0, got f = {f}, φ = {phi}"
        )));
    }
    let s = (2.0 * phi / f).sqrt();
    let r = 0.5 - s;
    if !(r > 0.0 && r < 0.5) {
        return Err(Error::InvalidParameter(format!("contact radius {r} outside (0, ½)")));
    }
    let mesh = Mesh1D::new(vec![0.0, 1.0])?;
    let diffusion = Diffusion::unit(0.0, 1.0)?;
    let spec = ClassicalSpec::new(
        diffusion.clone(),
        PiecewiseField::constant(mesh.clone(), f),
        Some(PiecewiseField::constant(mesh, phi)),
        None,
    )?;
    let energy = f * phi * (4.0 / 3.0 * s - 1.0);
    let solution = ExactSolution::new(classical_shape(f, phi, r)?, &diffusion, energy)?;
    Ok(ClassicalBenchmark {
        f,
        phi,
        r,
        solution,
        spec,
    })
}

impl ClassicalBenchmark {
    pub fn contact_left(&self) -> f64 {
        0.5 - self.r
    }

    pub fn contact_right(&self) -> f64 {
        0.5 + self.r
    }
}

/// `v_ε = u_{f_ε, φ}` with `f_ε = 2φ/(½ − r + ε)²`; its contact set is `(½−r+ε, ½+r−ε)`.
pub fn classical_perturbed_primal(bench: &ClassicalBenchmark, eps: f64) -> Result<PiecewiseField> {
    let r = bench.r;
    if !(eps > r - 0.5 && eps < r) {
        return Err(Error::InvalidParameter(format!(
            "ε₁ = {eps} outside ({}, {r})",
            r - 0.5
        )));
    }
    if eps == 0.0 {
        return Ok(bench.solution.u.clone());
    }
    let fe = 2.0 * bench.phi / (0.5 - r + eps).powi(2);
    classical_shape(fe, bench.phi, r - eps)
}

/// Nodal interpolant of `p*` at `{0, ½−r∓ε, ½+r∓ε, 1}`.
pub fn classical_perturbed_dual(bench: &ClassicalBenchmark, eps: f64) -> Result<FluxField> {
    let (xl, xr) = (bench.contact_left(), bench.contact_right());
    if eps == 0.0 {
        return Ok(bench.solution.flux.clone());
    }
    if !(eps > 0.0 && eps < bench.r && xl - eps > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "ε₂ = {eps} outside the admissible range"
        )));
    }
    let nodes = [0.0, xl - eps, xl + eps, xr - eps, xr + eps, 1.0];
    FluxField::new(interpolate_nodal(bench.solution.flux.field(), &nodes)?)
}

/// Two-phase benchmark on `(−1, 1)` with `f = 0`, `u(±1) = ±1`.
#[derive(Debug, Clone, PartialEq)]
pub struct DoubleBenchmark {
    pub alpha_minus: f64,
    pub alpha_plus: f64,
    pub r_minus: f64,
    pub r_plus: f64,
    pub solution: ExactSolution,
    pub spec: DoubleSpec,
}

fn double_shape(alpha_minus: f64, alpha_plus: f64, r_minus: f64, r_plus: f64) -> Result<PiecewiseField> {
    parabolas(&[
        (-1.0, r_minus, r_minus, -alpha_minus, 0.0),
        (r_minus, r_plus, r_minus, 0.0, 0.0),
        (r_plus, 1.0, r_plus, alpha_plus, 0.0),
    ])
}

pub fn double_exact(alpha_minus: f64, alpha_plus: f64) -> Result<DoubleBenchmark> {
    if !(alpha_minus > 2.0 && alpha_plus > 2.0) {
        return Err(Error::InvalidParameter(format!(
            "need α₋, α₊ > 2, got {alpha_minus}, {alpha_plus}"
        )));
    }
    let r_minus = (2.0 / alpha_minus).sqrt() - 1.0;
    let r_plus = 1.0 - (2.0 / alpha_plus).sqrt();
    let diffusion = Diffusion::unit(-1.0, 1.0)?;
    let mesh = Mesh1D::new(vec![-1.0, 1.0])?;
    let spec = DoubleSpec::new(
        diffusion.clone(),
        PiecewiseField::constant(mesh, 0.0),
        alpha_plus,
        alpha_minus,
        (-1.0, 1.0),
    )?;
    let energy = 2.0 * 2f64.sqrt() / 3.0 * (alpha_plus.sqrt() + alpha_minus.sqrt());
    let u = double_shape(alpha_minus, alpha_plus, r_minus, r_plus)?;
    let solution = ExactSolution::new(u, &diffusion, energy)?;
    Ok(DoubleBenchmark {
        alpha_minus,
        alpha_plus,
        r_minus,
        r_plus,
        solution,
        spec,
    })
}

/// `v_ε` from the perturbed weights `α_{±ε} = 2/(1 ∓ r_± + ε)²`; zero set `(r₋+ε, r₊−ε)`.
pub fn double_perturbed_primal(bench: &DoubleBenchmark, eps: f64) -> Result<PiecewiseField> {
    let (rm, rp) = (bench.r_minus, bench.r_plus);
    let lo = (rp - 1.0).max(-1.0 - rm);
    let hi = rp.min(-rm);
    if !(eps > lo && eps < hi) {
        return Err(Error::InvalidParameter(format!("ε₁ = {eps} outside ({lo}, {hi})")));
    }
    if eps == 0.0 {
        return Ok(bench.solution.u.clone());
    }
    let ap = 2.0 / (1.0 - rp + eps).powi(2);
    let am = 2.0 / (1.0 + rm + eps).powi(2);
    double_shape(am, ap, rm + eps, rp - eps)
}

/// Nodal interpolant of `p*` at `{−1, r₋∓ε, r₊∓ε, 1}`.
pub fn double_perturbed_dual(bench: &DoubleBenchmark, eps: f64) -> Result<FluxField> {
    let (rm, rp) = (bench.r_minus, bench.r_plus);
    if eps == 0.0 {
        return Ok(bench.solution.flux.clone());
    }
    if !(eps > 0.0 && eps < (-rm).min(rp) && rm - eps > -1.0 && rp + eps < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "ε₂ = {eps} outside the admissible range"
        )));
    }
    let nodes = [-1.0, rm - eps, rm + eps, rp - eps, rp + eps, 1.0];
    FluxField::new(interpolate_nodal(bench.solution.flux.field(), &nodes)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classical_anchor_values() {
        let b = classical_exact(-14.0, -1.0).unwrap();
        assert!((b.r - 0.12204).abs() < 5e-6);
        assert!((b.solution.energy - (-6.9446)).abs() < 5e-4);
        assert_eq!(b.solution.u.eval(0.5), -1.0);
        assert!(b.solution.u.eval(0.0).abs() < 1e-14 && b.solution.u.eval(1.0).abs() < 1e-14);
        assert!(b.solution.flux.field().is_continuous());
    }

    #[test]
    fn double_anchor_values() {
        let b = double_exact(8.0, 8.0).unwrap();
        assert_eq!((b.r_minus, b.r_plus), (-0.5, 0.5));
        assert!((b.solution.energy - 16.0 / 3.0).abs() < 1e-15);
        let u = &b.solution.u;
        for x in [-1.0, -0.75, -0.5, 0.0, 0.5, 0.8, 1.0] {
            let expect = if x <= -0.5 {
                -4.0 * x * x - 4.0 * x - 1.0
            } else if x < 0.5 {
                0.0
            } else {
                4.0 * x * x - 4.0 * x + 1.0
            };
            assert!((u.eval(x) - expect).abs() < 1e-15, "x = {x}");
        }
    }

    #[test]
    fn perturbations_at_zero_are_exact() {
        let b = classical_exact(-14.0, -1.0).unwrap();
        assert_eq!(classical_perturbed_primal(&b, 0.0).unwrap(), b.solution.u);
        let d = double_exact(8.0, 8.0).unwrap();
        assert_eq!(double_perturbed_dual(&d, 0.0).unwrap(), d.solution.flux);
    }

    #[test]
    fn out_of_range_eps_rejected() {
        let b = classical_exact(-14.0, -1.0).unwrap();
        assert!(classical_perturbed_primal(&b, 0.2).is_err());
        assert!(classical_perturbed_dual(&b, 0.5).is_err());
        assert!(double_exact(2.0, 8.0).is_err());
        assert!(classical_exact(-1.0, -1.0).is_err());
    }
}
