//! Minimization of the majorants over `(y*, β, λ)`.
//!
//! The multipliers are always taken pointwise optimal, which turns the majorant into a
//! convex, piecewise quadratic, C¹ functional of the flux. Each round runs a damped
//! semismooth Newton method on that functional over continuous P1 fluxes on a fixed
//! mesh, then updates β in closed form with the multipliers frozen. Every step is a
//! descent step, so the bound never increases.

use super::assembly::{derivative_load_vector, load_vector, solve_tridiagonal};
use super::flux::{clip_feasible, reconstruct_flux};
use crate::classical::{self, ClassicalMajorantParams, ClassicalSpec};
use crate::double::{self, DoubleSpec};
use crate::error::Result;
use crate::space::{sign_partition, Diffusion, FluxField, IntervalSet, Mesh1D, PiecewiseField};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MajorantOptions {
    pub rounds: usize,
    /// Uniform cells of the flux mesh before merging with the breakpoints of `v` and the data.
    pub flux_cells: usize,
    /// Project the starting flux onto `div y* + f ∈ [−α₋, α₊]` (double problem only).
    pub clip: bool,
}

impl Default for MajorantOptions {
    fn default() -> Self {
        Self {
            rounds: 5,
            flux_cells: 256,
            clip: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClassicalMajorant {
    pub params: ClassicalMajorantParams,
    pub flux: FluxField,
    pub bound: f64,
    /// Bound after round 0 (starting flux), 1, 2, ...
    pub history: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DoubleMajorant {
    pub beta: f64,
    pub lambda: PiecewiseField,
    pub flux: FluxField,
    pub bound: f64,
    pub history: Vec<f64>,
}

fn flux_mesh(v: &PiecewiseField, data: &[&PiecewiseField], cells: usize) -> Result<Mesh1D> {
    let (a, b) = v.domain();
    let mut mesh = Mesh1D::uniform(a, b, cells.max(1))?.refined_with(v.mesh().points());
    for d in data {
        mesh = mesh.refined_with(d.mesh().points());
    }
    Ok(mesh)
}

/// Newton iterations per round and the backtracking depth of the line search.
const NEWTON_ITERS: usize = 40;
const LINE_SEARCH_STEPS: usize = 30;

/// Value of a λ-eliminated majorant at a flux, with what the Newton step needs.
struct Model {
    value: f64,
    /// `∂/∂r` of the residual part; the gradient is `∫ slope φ_i'` for that part.
    slope: PiecewiseField,
    /// Where the residual part is locally quadratic in `r`, and its curvature there.
    curved: IntervalSet,
    curvature: f64,
}

/// Measure of `set` inside every cell of `mesh`.
fn cell_measures(set: &IntervalSet, mesh: &Mesh1D) -> Vec<f64> {
    let mut out = vec![0.0; mesh.cell_count()];
    let parts = set.intervals();
    let mut j = 0;
    for (k, (l, r)) in mesh.cells().enumerate() {
        while j < parts.len() && parts[j].1 <= l {
            j += 1;
        }
        let mut i = j;
        while i < parts.len() && parts[i].0 < r {
            out[k] += parts[i].1.min(r) - parts[i].0.max(l);
            i += 1;
        }
    }
    out
}

fn p1_values(y: &FluxField, mesh: &Mesh1D) -> Vec<f64> {
    mesh.points().iter().map(|&x| y.field().eval_mean(x)).collect()
}

fn p1_flux(mesh: &Mesh1D, values: &[f64]) -> Result<FluxField> {
    FluxField::new(PiecewiseField::piecewise_linear(mesh.points(), values)?)
}

/// Damped semismooth Newton for `½ a ‖A v' − y‖²_{A⁻¹} + (residual part)` over P1 fluxes.
fn newton_flux<E>(
    v: &PiecewiseField,
    diffusion: &Diffusion,
    mesh: &Mesh1D,
    a: f64,
    start: FluxField,
    eval: E,
) -> Result<(FluxField, f64)>
where
    E: Fn(&FluxField) -> Result<Model>,
{
    let n = mesh.cell_count();
    let widths: Vec<f64> = mesh.cells().map(|(l, r)| r - l).collect();
    let inv_a: Vec<f64> = mesh.cells().map(|(l, r)| 1.0 / diffusion.eval(0.5 * (l + r))).collect();
    let bv = load_vector(&v.derivative(), mesh)?;
    let mut y = start;
    let mut yv = p1_values(&y, mesh);
    let mut model = eval(&y)?;
    for _ in 0..NEWTON_ITERS {
        // gradient: a (M y − ∫ v' φ_i) + ∫ slope φ_i'
        let mut grad: Vec<f64> = bv.iter().map(|b| -a * b).collect();
        for k in 0..n {
            let m = a * widths[k] * inv_a[k];
            grad[k] += m * (yv[k] / 3.0 + yv[k + 1] / 6.0);
            grad[k + 1] += m * (yv[k] / 6.0 + yv[k + 1] / 3.0);
        }
        for (g, d) in grad.iter_mut().zip(derivative_load_vector(&model.slope, mesh)?) {
            *g += d;
        }
        let meas = cell_measures(&model.curved, mesh);
        let (mut sub, mut diag, mut sup) = (vec![0.0; n + 1], vec![0.0; n + 1], vec![0.0; n + 1]);
        for k in 0..n {
            let m = a * widths[k] * inv_a[k];
            let s = model.curvature * meas[k] / (widths[k] * widths[k]);
            diag[k] += m / 3.0 + s;
            diag[k + 1] += m / 3.0 + s;
            sup[k] += m / 6.0 - s;
            sub[k + 1] += m / 6.0 - s;
        }
        let rhs: Vec<f64> = grad.iter().map(|g| -g).collect();
        let step = solve_tridiagonal(&sub, &diag, &sup, &rhs)?;
        let slope: f64 = step.iter().zip(&grad).map(|(s, g)| s * g).sum();
        if !(slope < 0.0) {
            break;
        }
        let mut t = 1.0;
        let mut accepted = None;
        for _ in 0..LINE_SEARCH_STEPS {
            let trial: Vec<f64> = yv.iter().zip(&step).map(|(y, s)| y + t * s).collect();
            let ty = p1_flux(mesh, &trial)?;
            let tm = eval(&ty)?;
            if tm.value <= model.value + 1e-4 * t * slope {
                accepted = Some((trial, ty, tm));
                break;
            }
            t *= 0.5;
        }
        let Some((trial, ty, tm)) = accepted else { break };
        let decrease = model.value - tm.value;
        yv = trial;
        y = ty;
        model = tm;
        if decrease <= 1e-14 * model.value.abs().max(f64::MIN_POSITIVE) {
            break;
        }
    }
    Ok((y, model.value))
}

fn classical_model(v: &PiecewiseField, y: &FluxField, spec: &ClassicalSpec, beta: f64, c: f64) -> Result<Model> {
    let (l1, l2) = classical::optimal_multipliers(v, y, spec, beta, c)?;
    let params = ClassicalMajorantParams {
        beta,
        lambda1: l1.clone(),
        lambda2: l2.clone(),
        c_omega: c,
    };
    let value = classical::majorant_plus(v, &params, y, spec)?;
    let cb = c * c * (1.0 + beta);
    let mut s = y.residual(spec.f())?;
    let mut flat = IntervalSet::empty();
    if let Some(l) = &l1 {
        s = s.add(l)?;
        flat = flat.union(&sign_partition(l, 0.0).positive);
    }
    if let Some(l) = &l2 {
        s = s.sub(l)?;
        flat = flat.union(&sign_partition(l, 0.0).positive);
    }
    let (a, b) = spec.domain();
    Ok(Model {
        value,
        slope: s.scaled(cb),
        curved: flat.complement(a, b),
        curvature: cb,
    })
}

/// Optimizes the general classical majorant starting from the averaged flux.
///
/// With the pointwise optimal multipliers the reported bound equals the sharper
/// three-branch majorant at the same `(β, y*)`.
pub fn optimize_majorant_classical(
    v: &PiecewiseField,
    spec: &ClassicalSpec,
    opts: &MajorantOptions,
) -> Result<ClassicalMajorant> {
    classical::check_admissible(v, spec)?;
    let c = spec.friedrichs();
    let mut data = vec![spec.f(), spec.diffusion().field()];
    data.extend(spec.lower());
    data.extend(spec.upper());
    let mesh = flux_mesh(v, &data, opts.flux_cells)?;
    let mut y = reconstruct_flux(v, spec.diffusion(), &mesh)?;
    let mut beta = 1.0;
    let mut bound = classical_model(v, &y, spec, beta, c)?.value;
    let mut history = vec![bound];
    for _ in 0..opts.rounds {
        let (ny, value) = newton_flux(v, spec.diffusion(), &mesh, 1.0 + 1.0 / beta, y.clone(), |y| {
            classical_model(v, y, spec, beta, c)
        })?;
        y = ny;
        bound = value;
        // closed-form β with the multipliers frozen, then re-optimized multipliers
        let (l1, l2) = classical::optimal_multipliers(v, &y, spec, beta, c)?;
        let mut s = y.residual(spec.f())?;
        if let Some(l) = &l1 {
            s = s.add(l)?;
        }
        if let Some(l) = &l2 {
            s = s.sub(l)?;
        }
        let d = classical::half_flux_misfit_sq(v, &y, spec.diffusion())?;
        let candidate = classical::optimal_beta(d, crate::space::l2_norm_sq(&s, None), c);
        let value = classical_model(v, &y, spec, candidate, c)?.value;
        if value <= bound {
            beta = candidate;
            bound = value;
        }
        history.push(bound);
    }
    let (lambda1, lambda2) = classical::optimal_multipliers(v, &y, spec, beta, c)?;
    Ok(ClassicalMajorant {
        params: ClassicalMajorantParams {
            beta,
            lambda1,
            lambda2,
            c_omega: c,
        },
        flux: y,
        bound,
        history,
    })
}

fn double_model(v: &PiecewiseField, y: &FluxField, spec: &DoubleSpec, beta: f64) -> Result<Model> {
    let lambda = double::optimal_lambda_d(v, y, spec, beta)?;
    let value = double::majorant_terms_d(v, &lambda, y, spec)?.value(beta);
    let cp = (1.0 + 1.0 / beta) * spec.friedrichs().powi(2);
    let r = y.residual(spec.f())?;
    let shifted = r.combine(1.0, v, 1.0 / cp)?;
    let curved = sign_partition(&shifted.add_constant(-spec.alpha_plus()), 0.0)
        .positive
        .union(&sign_partition(&shifted.add_constant(spec.alpha_minus()), 0.0).negative);
    Ok(Model {
        value,
        slope: r.sub(&lambda)?.scaled(cp),
        curved,
        curvature: cp,
    })
}

/// Optimizes the single-multiplier two-phase majorant starting from the averaged flux.
pub fn optimize_majorant_double(
    v: &PiecewiseField,
    spec: &DoubleSpec,
    opts: &MajorantOptions,
) -> Result<DoubleMajorant> {
    spec.check_boundary(v)?;
    let mesh = flux_mesh(v, &[spec.f(), spec.diffusion().field()], opts.flux_cells)?;
    let mut y = reconstruct_flux(v, spec.diffusion(), &mesh)?;
    if opts.clip {
        y = clip_feasible(&y, spec)?;
    }
    let mut beta = 1.0;
    let mut bound = double_model(v, &y, spec, beta)?.value;
    let mut history = vec![bound];
    for _ in 0..opts.rounds {
        let (ny, value) = newton_flux(v, spec.diffusion(), &mesh, 1.0 + beta, y.clone(), |y| {
            double_model(v, y, spec, beta)
        })?;
        y = ny;
        bound = value;
        let lambda = double::optimal_lambda_d(v, &y, spec, beta)?;
        let candidate = double::majorant_terms_d(v, &lambda, &y, spec)?.optimal_beta();
        let value = double_model(v, &y, spec, candidate)?.value;
        if value <= bound {
            beta = candidate;
            bound = value;
        }
        history.push(bound);
    }
    let lambda = double::optimal_lambda_d(v, &y, spec, beta)?;
    Ok(DoubleMajorant {
        beta,
        lambda,
        flux: y,
        bound,
        history,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{classical_exact, classical_perturbed_primal, double_exact, double_perturbed_primal};

    fn nonincreasing(h: &[f64]) -> bool {
        h.windows(2).all(|w| w[1] <= w[0])
    }

    #[test]
    fn classical_bound_dominates_gap() {
        let b = classical_exact(-14.0, -1.0).unwrap();
        let v = classical_perturbed_primal(&b, 0.05).unwrap();
        let gap = crate::classical::primal_energy(&v, &b.spec).unwrap() - b.solution.energy;
        let m = optimize_majorant_classical(&v, &b.spec, &MajorantOptions::default()).unwrap();
        assert!(m.bound >= gap);
        assert!(m.bound / gap <= 3.0, "efficiency {}", m.bound / gap);
        assert!(nonincreasing(&m.history));
        let sharp = classical::majorant_plus_2(&v, m.params.beta, &m.flux, &b.spec).unwrap();
        assert!((sharp - m.bound).abs() <= 1e-12 * m.bound);
    }

    #[test]
    fn zero_rounds_report_starting_flux() {
        let b = classical_exact(-14.0, -1.0).unwrap();
        let v = classical_perturbed_primal(&b, 0.1).unwrap();
        let none = MajorantOptions {
            rounds: 0,
            ..Default::default()
        };
        let m0 = optimize_majorant_classical(&v, &b.spec, &none).unwrap();
        let m5 = optimize_majorant_classical(&v, &b.spec, &MajorantOptions::default()).unwrap();
        assert_eq!(m0.history.len(), 1);
        assert!(m5.bound <= m0.bound);
    }

    #[test]
    fn double_bound_dominates_gap() {
        let d = double_exact(8.0, 8.0).unwrap();
        let v = double_perturbed_primal(&d, 0.1).unwrap();
        let gap = double::primal_energy_d(&v, &d.spec).unwrap() - d.solution.energy;
        for clip in [false, true] {
            let m = optimize_majorant_double(
                &v,
                &d.spec,
                &MajorantOptions {
                    clip,
                    ..Default::default()
                },
            )
            .unwrap();
            assert!(
                m.bound >= gap && m.bound / gap <= 3.0,
                "clip {clip}: {} vs {gap}",
                m.bound
            );
            assert!(nonincreasing(&m.history));
            let direct = double::majorant_plus_1_d(&v, m.beta, &m.lambda, &m.flux, &d.spec).unwrap();
            assert!((direct - m.bound).abs() <= 1e-12 * m.bound);
        }
    }

    #[test]
    fn cell_measures_split_intervals() {
        let mesh = Mesh1D::new(vec![0.0, 0.5, 1.0]).unwrap();
        let set = IntervalSet::from_intervals(vec![(0.25, 0.75), (0.9, 1.0)]);
        let m = cell_measures(&set, &mesh);
        assert!((m[0] - 0.25).abs() < 1e-15 && (m[1] - 0.35).abs() < 1e-15);
    }
}
