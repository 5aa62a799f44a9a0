//! Two-phase obstacle problem: minimize `½‖v'‖²_A − ∫ f v + ∫ α₊(v)₊ + α₋(v)₋`
//! over `v` with prescribed boundary values.

use crate::breakdown::{CombinedBreakdown, ErrorBreakdown, IDENTITY_TOL};
use crate::classical::raw_energy;
use crate::error::{Error, Result};
use crate::exact::ExactSolution;
use crate::space::{
    flux_misfit_sq, friedrichs_constant, integrate_fields, sign_partition, Diffusion, FluxField, IntervalSet,
    PiecewiseField, SignPartition, SET_TOL,
};

/// Boundary-value tolerance relative to the field scale.
pub const BOUNDARY_TOL: f64 = 1e-12;
/// Dual feasibility slack, relative to `α₊ + α₋`.
pub const FEASIBILITY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct DoubleSpec {
    diffusion: Diffusion,
    f: PiecewiseField,
    alpha_plus: f64,
    alpha_minus: f64,
    boundary: (f64, f64),
    lift: PiecewiseField,
}

impl DoubleSpec {
    /// Uses the affine lift of the boundary values.
    pub fn new(
        diffusion: Diffusion,
        f: PiecewiseField,
        alpha_plus: f64,
        alpha_minus: f64,
        boundary: (f64, f64),
    ) -> Result<Self> {
        let (a, b) = f.domain();
        let lift = PiecewiseField::piecewise_linear(&[a, b], &[boundary.0, boundary.1])?;
        Self::with_lift(diffusion, f, alpha_plus, alpha_minus, boundary, lift)
    }

    pub fn with_lift(
        diffusion: Diffusion,
        f: PiecewiseField,
        alpha_plus: f64,
        alpha_minus: f64,
        boundary: (f64, f64),
        lift: PiecewiseField,
    ) -> Result<Self> {
        diffusion.field().mesh().same_domain(f.mesh())?;
        lift.mesh().same_domain(f.mesh())?;
        if !(alpha_plus > 0.0 && alpha_minus > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "phase weights must be positive, got α₊ = {alpha_plus}, α₋ = {alpha_minus}"
            )));
        }
        let spec = Self {
            diffusion,
            f,
            alpha_plus,
            alpha_minus,
            boundary,
            lift,
        };
        spec.check_boundary(&spec.lift)?;
        Ok(spec)
    }

    pub fn diffusion(&self) -> &Diffusion {
        &self.diffusion
    }

    pub fn f(&self) -> &PiecewiseField {
        &self.f
    }

    pub fn alpha_plus(&self) -> f64 {
        self.alpha_plus
    }

    pub fn alpha_minus(&self) -> f64 {
        self.alpha_minus
    }

    pub fn boundary(&self) -> (f64, f64) {
        self.boundary
    }

    pub fn lift(&self) -> &PiecewiseField {
        &self.lift
    }

    pub fn domain(&self) -> (f64, f64) {
        self.f.domain()
    }

    pub fn friedrichs(&self) -> f64 {
        friedrichs_constant(self.diffusion.field().mesh(), &self.diffusion).expect("domains checked")
    }

    /// `v` is C0 and carries the boundary values.
    pub fn check_boundary(&self, v: &PiecewiseField) -> Result<()> {
        v.mesh().same_domain(self.f.mesh())?;
        v.require_continuous()?;
        let (a, b) = self.domain();
        for (x, expected) in [(a, self.boundary.0), (b, self.boundary.1)] {
            let got = v.eval(x);
            if (got - expected).abs() > BOUNDARY_TOL * v.scale() {
                return Err(Error::BoundaryMismatch { at: x, expected, got });
            }
        }
        Ok(())
    }

    /// `div y* + f ∈ [−α₋, α₊]` up to [`FEASIBILITY_TOL`].
    pub fn check_feasible(&self, y: &FluxField) -> Result<PiecewiseField> {
        let r = y.residual(&self.f)?;
        let tol = FEASIBILITY_TOL * (self.alpha_plus + self.alpha_minus);
        if let Some((left, right)) = r.find_out_of_range(-self.alpha_minus, self.alpha_plus, tol) {
            return Err(Error::DualInfeasible {
                left,
                right,
                reason: "div y* + f leaves [−α₋, α₊]".into(),
            });
        }
        Ok(r)
    }
}

fn phase_integral(v: &PiecewiseField, spec: &DoubleSpec) -> f64 {
    let plus = v.positive_part();
    let minus = v.negative_part();
    spec.alpha_plus * crate::space::integrate(&plus, None) + spec.alpha_minus * crate::space::integrate(&minus, None)
}

pub fn primal_energy_d(v: &PiecewiseField, spec: &DoubleSpec) -> Result<f64> {
    spec.check_boundary(v)?;
    Ok(raw_energy(v, &spec.diffusion, &spec.f)? + phase_integral(v, spec))
}

/// `Î*(y*) = −½‖y*‖²_{A⁻¹} + y*(b) g_b − y*(a) g_a` for feasible `y*`.
pub fn dual_energy_d(y: &FluxField, spec: &DoubleSpec) -> Result<f64> {
    y.field().mesh().same_domain(spec.f.mesh())?;
    spec.check_feasible(y)?;
    let (a, b) = spec.domain();
    let (ga, gb) = spec.boundary;
    let norm = integrate_fields(&[y.field(), spec.diffusion.field()], None, |_, x| x[0] * x[0] / x[1])?;
    Ok(-0.5 * norm + y.eval(b) * gb - y.field().eval_left(a) * ga)
}

pub fn phase_sets(v: &PiecewiseField) -> SignPartition {
    sign_partition(v, SET_TOL)
}

/// Regions where the phases of `v` disagree with those of `u`.
#[derive(Debug, Clone, PartialEq)]
pub struct OmegaSets {
    /// `v > 0` where `u = 0`.
    pub plus: IntervalSet,
    /// `v < 0` where `u = 0`.
    pub minus: IntervalSet,
    /// `v` and `u` of opposite strict signs.
    pub both: IntervalSet,
}

pub fn omega_sets(v: &PiecewiseField, u: &PiecewiseField) -> OmegaSets {
    let pv = phase_sets(v);
    let pu = phase_sets(u);
    OmegaSets {
        plus: pv.positive.intersect(&pu.zero),
        minus: pv.negative.intersect(&pu.zero),
        both: pv
            .positive
            .intersect(&pu.negative)
            .union(&pv.negative.intersect(&pu.positive)),
    }
}

/// Oracle-mode phase-mismatch measure `μ_ω(v) = ∫ α(x)|v|`.
///
/// On `ω₊`, `ω₋` the weights are `α₊ − f` and `α₋ + f`, which are the constants
/// `α₊`, `α₋` whenever `f` vanishes on the zero phase of `u` (as in the benchmark).
pub fn mu_omega(v: &PiecewiseField, spec: &DoubleSpec, exact: &ExactSolution) -> Result<f64> {
    let om = omega_sets(v, &exact.u);
    let (ap, am) = (spec.alpha_plus, spec.alpha_minus);
    let mut total = 0.0;
    if !om.plus.is_empty() {
        total += integrate_fields(&[v, &spec.f], Some(&om.plus), |_, x| (ap - x[1]) * x[0])?;
    }
    if !om.minus.is_empty() {
        total += integrate_fields(&[v, &spec.f], Some(&om.minus), |_, x| -(am + x[1]) * x[0])?;
    }
    if !om.both.is_empty() {
        total += (ap + am) * integrate_fields(&[v], Some(&om.both), |_, x| x[0].abs())?;
    }
    Ok(total)
}

/// Oracle-mode dual measure `∫_{u>0} (α₊ − r) u + ∫_{u<0} (−α₋ − r) u`, `r = div y* + f`.
pub fn mu_omega_star(y: &FluxField, spec: &DoubleSpec, exact: &ExactSolution) -> Result<f64> {
    let r = spec.check_feasible(y)?;
    let pu = phase_sets(&exact.u);
    let (ap, am) = (spec.alpha_plus, spec.alpha_minus);
    let mut total = 0.0;
    if !pu.positive.is_empty() {
        total += integrate_fields(&[&r, &exact.u], Some(&pu.positive), |_, x| (ap - x[0]) * x[1])?;
    }
    if !pu.negative.is_empty() {
        total += integrate_fields(&[&r, &exact.u], Some(&pu.negative), |_, x| (-am - x[0]) * x[1])?;
    }
    Ok(total)
}

pub fn primal_breakdown_d(v: &PiecewiseField, spec: &DoubleSpec, exact: &ExactSolution) -> Result<ErrorBreakdown> {
    let jv = primal_energy_d(v, spec)?;
    let e = exact.u.sub(v)?.derivative();
    let quadratic = 0.5 * integrate_fields(&[&e, spec.diffusion.field()], None, |_, x| x[1] * x[0] * x[0])?;
    Ok(ErrorBreakdown::new(
        quadratic,
        mu_omega(v, spec, exact)?,
        jv - exact.energy,
    ))
}

pub fn dual_breakdown_d(y: &FluxField, spec: &DoubleSpec, exact: &ExactSolution) -> Result<ErrorBreakdown> {
    let iy = dual_energy_d(y, spec)?;
    let e = exact.flux.field().sub(y.field())?;
    let quadratic = 0.5 * integrate_fields(&[&e, spec.diffusion.field()], None, |_, x| x[0] * x[0] / x[1])?;
    Ok(ErrorBreakdown::new(
        quadratic,
        mu_omega_star(y, spec, exact)?,
        exact.energy - iy,
    ))
}

/// Primal and dual identities, both checked to the default tolerance.
pub fn identities_d(
    v: &PiecewiseField,
    y: &FluxField,
    spec: &DoubleSpec,
    exact: &ExactSolution,
) -> Result<(ErrorBreakdown, ErrorBreakdown)> {
    Ok((
        primal_breakdown_d(v, spec, exact)?.check("primal identity", IDENTITY_TOL)?,
        dual_breakdown_d(y, spec, exact)?.check("dual identity", IDENTITY_TOL)?,
    ))
}

/// `Υ(v, y*) = ∫ α₊(v)₊ + α₋(v)₋ − (div y* + f) v` for feasible `y*`.
pub fn upsilon_d(v: &PiecewiseField, y: &FluxField, spec: &DoubleSpec) -> Result<f64> {
    spec.check_boundary(v)?;
    let r = spec.check_feasible(y)?;
    Ok(phase_integral(v, spec) - integrate_fields(&[&r, v], None, |_, x| x[0] * x[1])?)
}

pub fn combined_breakdown_d(v: &PiecewiseField, y: &FluxField, spec: &DoubleSpec) -> Result<CombinedBreakdown> {
    let d = 0.5 * flux_misfit_sq(v, y.field(), &spec.diffusion)?;
    let ups = upsilon_d(v, y, spec)?;
    let gap = primal_energy_d(v, spec)? - dual_energy_d(y, spec)?;
    Ok(CombinedBreakdown::new(d, ups, gap))
}

/// `½‖A v' − y*‖²_{A⁻¹} + Υ = J(v) − Î*(y*)`, checked to the default tolerance.
pub fn combined_gap_d(v: &PiecewiseField, y: &FluxField, spec: &DoubleSpec) -> Result<CombinedBreakdown> {
    combined_breakdown_d(v, y, spec)?.check("combined identity", IDENTITY_TOL)
}

/// Set-wise split of `Υ`; each part is nonnegative for feasible `y*`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UpsilonParts {
    pub opposite_phase: f64,
    pub positive_free: f64,
    pub negative_free: f64,
}

impl UpsilonParts {
    pub fn sum(&self) -> f64 {
        self.opposite_phase + self.positive_free + self.negative_free
    }
}

pub fn upsilon_decomposition(v: &PiecewiseField, y: &FluxField, spec: &DoubleSpec) -> Result<UpsilonParts> {
    spec.check_boundary(v)?;
    let r = spec.check_feasible(y)?;
    let (a, b) = spec.domain();
    let (ap, am) = (spec.alpha_plus, spec.alpha_minus);
    let y_minus = sign_partition(&r.add_constant(am), SET_TOL).zero;
    let y_plus = sign_partition(&r.add_constant(-ap), SET_TOL).zero;
    let y_between = y_minus.union(&y_plus).complement(a, b);
    let pv = phase_sets(v);
    let opposite = y_minus.intersect(&pv.positive).union(&y_plus.intersect(&pv.negative));
    let integral = |set: &IntervalSet, g: &dyn Fn(f64, f64) -> f64| -> Result<f64> {
        if set.is_empty() {
            return Ok(0.0);
        }
        integrate_fields(&[&r, v], Some(set), |_, x| g(x[0], x[1]))
    };
    Ok(UpsilonParts {
        opposite_phase: integral(&opposite, &|_, v| (ap + am) * v.abs())?,
        positive_free: integral(&y_between.intersect(&pv.positive), &|r, v| (ap - r) * v)?,
        negative_free: integral(&y_between.intersect(&pv.negative), &|r, v| -(am + r) * v)?,
    })
}

fn check_beta(beta: f64) -> Result<()> {
    if !(beta > 0.0 && beta.is_finite()) {
        return Err(Error::InvalidParameter(format!("beta must be positive, got {beta}")));
    }
    Ok(())
}

fn check_range(name: &'static str, field: &PiecewiseField, lo: f64, hi: f64) -> Result<()> {
    let tol = FEASIBILITY_TOL * (1.0 + lo.abs().max(hi.abs()));
    match field.find_out_of_range(lo, hi, tol) {
        Some((left, right)) => Err(Error::MultiplierOutOfRange { name, left, right }),
        None => Ok(()),
    }
}

/// Majorant with two multipliers `λ₊, λ₋ ∈ [0, 1]`; `y*` need not be feasible.
pub fn majorant_plus_d(
    v: &PiecewiseField,
    beta: f64,
    lambda_plus: &PiecewiseField,
    lambda_minus: &PiecewiseField,
    y: &FluxField,
    spec: &DoubleSpec,
) -> Result<f64> {
    check_beta(beta)?;
    check_range("lambda_plus", lambda_plus, 0.0, 1.0)?;
    check_range("lambda_minus", lambda_minus, 0.0, 1.0)?;
    spec.check_boundary(v)?;
    let (ap, am) = (spec.alpha_plus, spec.alpha_minus);
    let e = flux_misfit_sq(v, y.field(), &spec.diffusion)?;
    let lam = lambda_plus.combine(ap, lambda_minus, -am)?;
    let s = y.residual(&spec.f)?.sub(&lam)?;
    let q = integrate_fields(&[&s], None, |_, x| x[0] * x[0])?;
    let c = spec.friedrichs();
    let linear = phase_integral(v, spec) - integrate_fields(&[&lam, v], None, |_, x| x[0] * x[1])?;
    Ok(0.5 * (1.0 + beta) * e + 0.5 * (1.0 + 1.0 / beta) * c * c * q + linear)
}

/// Simplified majorant with a single multiplier `λ ∈ [−α₋, α₊]`.
pub fn majorant_plus_1_d(
    v: &PiecewiseField,
    beta: f64,
    lambda: &PiecewiseField,
    y: &FluxField,
    spec: &DoubleSpec,
) -> Result<f64> {
    check_beta(beta)?;
    check_range("lambda", lambda, -spec.alpha_minus, spec.alpha_plus)?;
    spec.check_boundary(v)?;
    let terms = majorant_terms_d(v, lambda, y, spec)?;
    Ok(terms.value(beta))
}

/// The β-independent pieces of the single-multiplier majorant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DoubleMajorantTerms {
    /// `‖A v' − y*‖²_{A⁻¹}`.
    pub flux: f64,
    /// `C² ‖div y* + f − λ‖²`.
    pub residual: f64,
    /// `∫ α₊(v)₊ + α₋(v)₋ − λ v`.
    pub linear: f64,
}

impl DoubleMajorantTerms {
    pub fn value(&self, beta: f64) -> f64 {
        0.5 * (1.0 + beta) * self.flux + 0.5 * (1.0 + 1.0 / beta) * self.residual + self.linear
    }

    /// `β = √(C²Q / E)` minimizes [`Self::value`].
    pub fn optimal_beta(&self) -> f64 {
        use crate::classical::{BETA_MAX, BETA_MIN};
        if self.flux <= 0.0 {
            return BETA_MAX;
        }
        if self.residual <= 0.0 {
            return BETA_MIN;
        }
        (self.residual / self.flux).sqrt().clamp(BETA_MIN, BETA_MAX)
    }
}

pub fn majorant_terms_d(
    v: &PiecewiseField,
    lambda: &PiecewiseField,
    y: &FluxField,
    spec: &DoubleSpec,
) -> Result<DoubleMajorantTerms> {
    let c = spec.friedrichs();
    let s = y.residual(&spec.f)?.sub(lambda)?;
    Ok(DoubleMajorantTerms {
        flux: flux_misfit_sq(v, y.field(), &spec.diffusion)?,
        residual: c * c * integrate_fields(&[&s], None, |_, x| x[0] * x[0])?,
        linear: phase_integral(v, spec) - integrate_fields(&[lambda, v], None, |_, x| x[0] * x[1])?,
    })
}

/// Pointwise minimizer `clamp(r + v / c', −α₋, α₊)` of the single-multiplier majorant,
/// `c' = (1 + 1/β) C²`.
pub fn optimal_lambda_d(v: &PiecewiseField, y: &FluxField, spec: &DoubleSpec, beta: f64) -> Result<PiecewiseField> {
    let c2 = (1.0 + 1.0 / beta) * spec.friedrichs().powi(2);
    let r = y.residual(&spec.f)?;
    Ok(r.combine(1.0, v, 1.0 / c2)?.clamp(-spec.alpha_minus, spec.alpha_plus))
}

/// `M⁻(v, w) = J(v) − J(w)`.
pub fn minorant_d(v: &PiecewiseField, w: &PiecewiseField, spec: &DoubleSpec) -> Result<f64> {
    Ok(primal_energy_d(v, spec)? - primal_energy_d(w, spec)?)
}
