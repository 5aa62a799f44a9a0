//! Hand-built fields shared by the integration tests.
#![allow(dead_code)]

pub mod golden;

use obstacle_core::classical::ClassicalSpec;
use obstacle_core::exact::{
    classical_exact, classical_perturbed_primal, double_perturbed_primal, ClassicalBenchmark, DoubleBenchmark,
    ExactSolution,
};
use obstacle_core::space::{Diffusion, FluxField, Mesh1D, PiecewiseField};

/// Hat of height `height` on `(center − half, center + half)` over `(a, b)`.
pub fn hat(a: f64, b: f64, center: f64, half: f64, height: f64) -> PiecewiseField {
    PiecewiseField::piecewise_linear(
        &[a, center - half, center, center + half, b],
        &[0.0, 0.0, height, 0.0, 0.0],
    )
    .unwrap()
}

/// `v` with a contact set strictly larger than that of `u`, and `y* = p* + hat` where the
/// hat sits inside the contact set of `u` and keeps `div y* + f < 0` there.
pub fn classical_zero_measure(b: &ClassicalBenchmark, widen: f64) -> (PiecewiseField, FluxField) {
    let v = classical_perturbed_primal(b, -widen).unwrap();
    let bump = hat(0.0, 1.0, 0.5, 0.5 * b.r, 0.25 * b.r * b.f.abs());
    let y = FluxField::new(b.solution.flux.field().add(&bump).unwrap()).unwrap();
    (v, y)
}

/// `v` with a zero phase strictly larger than that of `u`, and `y* = p* + hat` inside the
/// zero phase of `u` with `|div y*| < α`.
pub fn double_zero_measure(b: &DoubleBenchmark, widen: f64) -> (PiecewiseField, FluxField) {
    let v = double_perturbed_primal(b, -widen).unwrap();
    let half = 0.5 * b.r_plus.min(-b.r_minus);
    let bump = hat(-1.0, 1.0, 0.0, half, 0.25 * half * b.alpha_plus.min(b.alpha_minus));
    let y = FluxField::new(b.solution.flux.field().add(&bump).unwrap()).unwrap();
    (v, y)
}

/// Mirror image of the classical benchmark: `f = 14`, active upper obstacle `ψ = 1` and an
/// inactive lower obstacle `φ = −10`.
pub struct UpperFixture {
    pub base: ClassicalBenchmark,
    pub spec: ClassicalSpec,
    pub solution: ExactSolution,
    pub psi: f64,
    pub f: f64,
}

pub fn upper_fixture() -> UpperFixture {
    let base = classical_exact(-14.0, -1.0).unwrap();
    let mesh = Mesh1D::new(vec![0.0, 1.0]).unwrap();
    let diffusion = Diffusion::unit(0.0, 1.0).unwrap();
    let spec = ClassicalSpec::new(
        diffusion.clone(),
        PiecewiseField::constant(mesh.clone(), 14.0),
        Some(PiecewiseField::constant(mesh.clone(), -10.0)),
        Some(PiecewiseField::constant(mesh, 1.0)),
    )
    .unwrap();
    let u = base.solution.u.scaled(-1.0);
    let solution = ExactSolution::new(u, &diffusion, base.solution.energy).unwrap();
    UpperFixture {
        base,
        spec,
        solution,
        psi: 1.0,
        f: 14.0,
    }
}

impl UpperFixture {
    pub fn perturbed(&self, eps: f64) -> PiecewiseField {
        classical_perturbed_primal(&self.base, eps).unwrap().scaled(-1.0)
    }
}

pub fn rel(a: f64, b: f64) -> f64 {
    if b == 0.0 {
        (a - b).abs()
    } else {
        (a - b).abs() / b.abs()
    }
}
