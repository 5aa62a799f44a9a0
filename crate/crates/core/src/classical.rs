//! Classical obstacle problem `φ ≤ u ≤ ψ`, `u = 0` on the boundary.
//!
//! Energies, coincidence-set measures, the computable gap identity, majorants and the
//! minorant. A missing obstacle (`None`) stands for `∓∞`.

use crate::breakdown::{CombinedBreakdown, ErrorBreakdown, IDENTITY_TOL};
use crate::error::{Error, Result};
use crate::exact::ExactSolution;
use crate::space::{
    flux_misfit_sq, friedrichs_constant, integrate_fields, sign_partition, Diffusion, FluxField, IntervalSet,
    PiecewiseField, SET_TOL,
};

/// Pointwise tolerance (relative to the field scale) for obstacle and sign constraints.
pub const ADMISSIBLE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct ClassicalSpec {
    diffusion: Diffusion,
    f: PiecewiseField,
    lower: Option<PiecewiseField>,
    upper: Option<PiecewiseField>,
}

impl ClassicalSpec {
    pub fn new(
        diffusion: Diffusion,
        f: PiecewiseField,
        lower: Option<PiecewiseField>,
        upper: Option<PiecewiseField>,
    ) -> Result<Self> {
        let (a, b) = diffusion.domain();
        for g in std::iter::once(&f).chain(lower.iter()).chain(upper.iter()) {
            f.mesh().same_domain(g.mesh())?;
            diffusion.field().mesh().same_domain(g.mesh())?;
        }
        if let (Some(phi), Some(psi)) = (&lower, &upper) {
            let gap = psi.sub(phi)?;
            if let Some((l, r)) = gap.find_out_of_range(0.0, f64::INFINITY, ADMISSIBLE_TOL * gap.scale()) {
                return Err(Error::InvalidParameter(format!(
                    "lower obstacle exceeds upper on ({l}, {r})"
                )));
            }
        }
        for x in [a, b] {
            if let Some(phi) = &lower {
                if phi.eval(x) > ADMISSIBLE_TOL * phi.scale() {
                    return Err(Error::InvalidParameter(format!(
                        "lower obstacle positive at boundary x = {x}"
                    )));
                }
            }
            if let Some(psi) = &upper {
                if psi.eval(x) < -ADMISSIBLE_TOL * psi.scale() {
                    return Err(Error::InvalidParameter(format!(
                        "upper obstacle negative at boundary x = {x}"
                    )));
                }
            }
        }
        Ok(Self {
            diffusion,
            f,
            lower,
            upper,
        })
    }

    pub fn diffusion(&self) -> &Diffusion {
        &self.diffusion
    }

    pub fn f(&self) -> &PiecewiseField {
        &self.f
    }

    pub fn lower(&self) -> Option<&PiecewiseField> {
        self.lower.as_ref()
    }

    pub fn upper(&self) -> Option<&PiecewiseField> {
        self.upper.as_ref()
    }

    pub fn domain(&self) -> (f64, f64) {
        self.f.domain()
    }

    pub fn friedrichs(&self) -> f64 {
        friedrichs_constant(self.diffusion.field().mesh(), &self.diffusion).expect("domains checked")
    }
}

/// Coincidence sets `{v = φ}` and `{v = ψ}` of some function `v`.
#[derive(Debug, Clone, PartialEq)]
pub struct ContactSets {
    pub lower: IntervalSet,
    pub upper: IntervalSet,
}

impl ContactSets {
    pub fn free(&self, a: f64, b: f64) -> IntervalSet {
        self.lower.union(&self.upper).complement(a, b)
    }
}

pub fn contact_sets(v: &PiecewiseField, spec: &ClassicalSpec) -> Result<ContactSets> {
    let lower = match &spec.lower {
        Some(phi) => sign_partition(&v.sub(phi)?, SET_TOL).zero,
        None => IntervalSet::empty(),
    };
    let upper = match &spec.upper {
        Some(psi) => sign_partition(&psi.sub(v)?, SET_TOL).zero,
        None => IntervalSet::empty(),
    };
    Ok(ContactSets { lower, upper })
}

pub fn check_admissible(v: &PiecewiseField, spec: &ClassicalSpec) -> Result<()> {
    v.mesh().same_domain(spec.f.mesh())?;
    v.require_continuous()?;
    let (a, b) = spec.domain();
    for x in [a, b] {
        let got = v.eval(x);
        if got.abs() > ADMISSIBLE_TOL * v.scale() {
            return Err(Error::BoundaryMismatch {
                at: x,
                expected: 0.0,
                got,
            });
        }
    }
    if let Some(phi) = &spec.lower {
        let d = v.sub(phi)?;
        if let Some((l, r)) = d.find_out_of_range(0.0, f64::INFINITY, ADMISSIBLE_TOL * d.scale()) {
            return Err(Error::Inadmissible(format!("below the lower obstacle on ({l}, {r})")));
        }
    }
    if let Some(psi) = &spec.upper {
        let d = psi.sub(v)?;
        if let Some((l, r)) = d.find_out_of_range(0.0, f64::INFINITY, ADMISSIBLE_TOL * d.scale()) {
            return Err(Error::Inadmissible(format!("above the upper obstacle on ({l}, {r})")));
        }
    }
    Ok(())
}

pub fn admissible(v: &PiecewiseField, spec: &ClassicalSpec) -> bool {
    check_admissible(v, spec).is_ok()
}

/// `½‖v'‖²_A − ∫ f v` without the admissibility check.
pub(crate) fn raw_energy(v: &PiecewiseField, diffusion: &Diffusion, f: &PiecewiseField) -> Result<f64> {
    let dv = v.derivative();
    integrate_fields(&[&dv, diffusion.field(), f, v], None, |_, x| {
        0.5 * x[1] * x[0] * x[0] - x[2] * x[3]
    })
}

pub fn primal_energy(v: &PiecewiseField, spec: &ClassicalSpec) -> Result<f64> {
    check_admissible(v, spec)?;
    raw_energy(v, &spec.diffusion, &spec.f)
}

/// Sign sets of `div y* + f`, after checking the sign constraints forced by infinite obstacles.
struct Residual {
    r: PiecewiseField,
    negative: IntervalSet,
    positive: IntervalSet,
}

fn residual(y: &FluxField, spec: &ClassicalSpec) -> Result<Residual> {
    let r = y.residual(&spec.f)?;
    let tol = ADMISSIBLE_TOL * r.scale();
    if spec.lower.is_none() {
        if let Some((left, right)) = r.find_out_of_range(0.0, f64::INFINITY, tol) {
            return Err(Error::DualInfeasible {
                left,
                right,
                reason: "div y* + f < 0 with no lower obstacle".into(),
            });
        }
    }
    if spec.upper.is_none() {
        if let Some((left, right)) = r.find_out_of_range(f64::NEG_INFINITY, 0.0, tol) {
            return Err(Error::DualInfeasible {
                left,
                right,
                reason: "div y* + f > 0 with no upper obstacle".into(),
            });
        }
    }
    let part = sign_partition(&r, SET_TOL);
    let negative = if spec.lower.is_some() {
        part.negative
    } else {
        IntervalSet::empty()
    };
    let positive = if spec.upper.is_some() {
        part.positive
    } else {
        IntervalSet::empty()
    };
    Ok(Residual { r, negative, positive })
}

/// `∫_S g · r` for an obstacle-type field `g` and the residual `r`.
fn weighted_residual(g: &PiecewiseField, r: &PiecewiseField, set: &IntervalSet) -> Result<f64> {
    if set.is_empty() {
        return Ok(0.0);
    }
    integrate_fields(&[g, r], Some(set), |_, x| x[0] * x[1])
}

/// `I*(y*) = −½‖y*‖²_{A⁻¹} + ∫ (φ (div y*+f)₋ − ψ (div y*+f)₊)`.
pub fn dual_energy(y: &FluxField, spec: &ClassicalSpec) -> Result<f64> {
    y.field().mesh().same_domain(spec.f.mesh())?;
    let res = residual(y, spec)?;
    let mut value = -0.5 * integrate_fields(&[y.field(), spec.diffusion.field()], None, |_, x| x[0] * x[0] / x[1])?;
    if let Some(phi) = &spec.lower {
        value -= weighted_residual(phi, &res.r, &res.negative)?;
    }
    if let Some(psi) = &spec.upper {
        value -= weighted_residual(psi, &res.r, &res.positive)?;
    }
    Ok(value)
}

/// Oracle-mode coincidence measure `μ_{φψ}(v)` with weights from the source term.
pub fn mu(v: &PiecewiseField, spec: &ClassicalSpec, exact: &ExactSolution) -> Result<f64> {
    let sets = contact_sets(&exact.u, spec)?;
    let a = spec.diffusion.field();
    let mut total = 0.0;
    if let (Some(phi), false) = (&spec.lower, sets.lower.is_empty()) {
        let d2 = phi.derivative().derivative();
        total += integrate_fields(&[a, &d2, &spec.f, v, phi], Some(&sets.lower), |_, x| {
            -(x[0] * x[1] + x[2]) * (x[3] - x[4])
        })?;
    }
    if let (Some(psi), false) = (&spec.upper, sets.upper.is_empty()) {
        let d2 = psi.derivative().derivative();
        total += integrate_fields(&[a, &d2, &spec.f, v, psi], Some(&sets.upper), |_, x| {
            (x[0] * x[1] + x[2]) * (x[4] - x[3])
        })?;
    }
    Ok(total)
}

/// Oracle-mode dual measure `μ*_{φψ}(y*) = ∫ (u−φ)(r)₋ + (ψ−u)(r)₊`, `r = div y* + f`.
pub fn mu_star(y: &FluxField, spec: &ClassicalSpec, exact: &ExactSolution) -> Result<f64> {
    let res = residual(y, spec)?;
    let mut total = 0.0;
    if let Some(phi) = &spec.lower {
        total -= weighted_residual(&exact.u.sub(phi)?, &res.r, &res.negative)?;
    }
    if let Some(psi) = &spec.upper {
        total += weighted_residual(&psi.sub(&exact.u)?, &res.r, &res.positive)?;
    }
    Ok(total)
}

/// Primal identity terms without the residual check.
pub fn primal_breakdown(v: &PiecewiseField, spec: &ClassicalSpec, exact: &ExactSolution) -> Result<ErrorBreakdown> {
    let jv = primal_energy(v, spec)?;
    let e = exact.u.sub(v)?.derivative();
    let quadratic = 0.5 * integrate_fields(&[&e, spec.diffusion.field()], None, |_, x| x[1] * x[0] * x[0])?;
    Ok(ErrorBreakdown::new(quadratic, mu(v, spec, exact)?, jv - exact.energy))
}

/// `½‖(u−v)'‖²_A + μ(v) = J(v) − J(u)`, checked to the default tolerance.
pub fn primal_identity(v: &PiecewiseField, spec: &ClassicalSpec, exact: &ExactSolution) -> Result<ErrorBreakdown> {
    primal_breakdown(v, spec, exact)?.check("primal identity", IDENTITY_TOL)
}

pub fn dual_breakdown(y: &FluxField, spec: &ClassicalSpec, exact: &ExactSolution) -> Result<ErrorBreakdown> {
    let iy = dual_energy(y, spec)?;
    let e = exact.flux.field().sub(y.field())?;
    let quadratic = 0.5 * integrate_fields(&[&e, spec.diffusion.field()], None, |_, x| x[0] * x[0] / x[1])?;
    Ok(ErrorBreakdown::new(
        quadratic,
        mu_star(y, spec, exact)?,
        exact.energy - iy,
    ))
}

/// `½‖p*−y*‖²_{A⁻¹} + μ*(y*) = I*(p*) − I*(y*)`, checked to the default tolerance.
pub fn dual_identity(y: &FluxField, spec: &ClassicalSpec, exact: &ExactSolution) -> Result<ErrorBreakdown> {
    dual_breakdown(y, spec, exact)?.check("dual identity", IDENTITY_TOL)
}

/// Fully computable nonlinear term `Υ(v, y*)`.
pub fn upsilon(v: &PiecewiseField, y: &FluxField, spec: &ClassicalSpec) -> Result<f64> {
    check_admissible(v, spec)?;
    let res = residual(y, spec)?;
    let sets = contact_sets(v, spec)?;
    let mut total = 0.0;
    if let Some(phi) = &spec.lower {
        total += weighted_residual(&phi.sub(v)?, &res.r, &res.negative.difference(&sets.lower))?;
    }
    if let Some(psi) = &spec.upper {
        total += weighted_residual(&psi.sub(v)?, &res.r, &res.positive.difference(&sets.upper))?;
    }
    Ok(total)
}

/// `D_G(A v', y*) = ½‖A v' − y*‖²_{A⁻¹}`.
pub fn half_flux_misfit_sq(v: &PiecewiseField, y: &FluxField, diffusion: &Diffusion) -> Result<f64> {
    Ok(0.5 * flux_misfit_sq(v, y.field(), diffusion)?)
}

pub fn combined_breakdown(v: &PiecewiseField, y: &FluxField, spec: &ClassicalSpec) -> Result<CombinedBreakdown> {
    let d = half_flux_misfit_sq(v, y, &spec.diffusion)?;
    let ups = upsilon(v, y, spec)?;
    let gap = primal_energy(v, spec)? - dual_energy(y, spec)?;
    Ok(CombinedBreakdown::new(d, ups, gap))
}

/// `½‖A v' − y*‖²_{A⁻¹} + Υ(v, y*) = J(v) − I*(y*)`, checked to the default tolerance.
pub fn combined_gap(v: &PiecewiseField, y: &FluxField, spec: &ClassicalSpec) -> Result<CombinedBreakdown> {
    combined_breakdown(v, y, spec)?.check("combined identity", IDENTITY_TOL)
}

/// Free parameters of the general majorant; a missing multiplier is zero.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassicalMajorantParams {
    pub beta: f64,
    pub lambda1: Option<PiecewiseField>,
    pub lambda2: Option<PiecewiseField>,
    pub c_omega: f64,
}

impl ClassicalMajorantParams {
    pub fn validate(&self, spec: &ClassicalSpec) -> Result<()> {
        if !(self.beta > 0.0 && self.beta.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "beta must be positive, got {}",
                self.beta
            )));
        }
        if !(self.c_omega > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "C_Ω must be positive, got {}",
                self.c_omega
            )));
        }
        for (name, lam, obstacle) in [
            ("lambda1", &self.lambda1, spec.lower.is_some()),
            ("lambda2", &self.lambda2, spec.upper.is_some()),
        ] {
            let Some(lam) = lam else { continue };
            if let Some((left, right)) = lam.find_out_of_range(0.0, f64::INFINITY, ADMISSIBLE_TOL) {
                return Err(Error::MultiplierOutOfRange { name, left, right });
            }
            if !obstacle && lam.range().1 > 0.0 {
                return Err(Error::InvalidParameter(format!(
                    "{name} is nonzero but its obstacle is infinite"
                )));
            }
        }
        Ok(())
    }
}

/// `(1+β⁻¹) D_G + ½ C²(1+β) ‖div y*+f+λ₁−λ₂‖² + ∫ λ₁(v−φ) + λ₂(ψ−v)`.
pub fn majorant_plus(
    v: &PiecewiseField,
    params: &ClassicalMajorantParams,
    y: &FluxField,
    spec: &ClassicalSpec,
) -> Result<f64> {
    params.validate(spec)?;
    let beta = params.beta;
    let d = half_flux_misfit_sq(v, y, &spec.diffusion)?;
    let mut s = y.residual(&spec.f)?;
    let mut linear = 0.0;
    if let Some(l1) = &params.lambda1 {
        s = s.add(l1)?;
        if let Some(phi) = &spec.lower {
            linear += integrate_fields(&[l1, v, phi], None, |_, x| x[0] * (x[1] - x[2]))?;
        }
    }
    if let Some(l2) = &params.lambda2 {
        s = s.sub(l2)?;
        if let Some(psi) = &spec.upper {
            linear += integrate_fields(&[l2, v, psi], None, |_, x| x[0] * (x[2] - x[1]))?;
        }
    }
    let q = integrate_fields(&[&s], None, |_, x| x[0] * x[0])?;
    Ok((1.0 + 1.0 / beta) * d + 0.5 * params.c_omega.powi(2) * (1.0 + beta) * q + linear)
}

/// Coefficient in front of `D_G` in the simplified majorant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DgCoefficient {
    /// `(1+β⁻¹)`, the exact multiplier substitution into the general majorant.
    #[default]
    Consistent,
    /// `½(1+β⁻¹)`, kept for comparison with the printed formula; not a guaranteed bound.
    HalfPrinted,
}

/// `‖[div y*+f]_v‖²`: `r²` off the contact sets of `v`, `(r)₊²` on `{v=φ}`, `(r)₋²` on `{v=ψ}`.
pub fn bracket_residual_sq(v: &PiecewiseField, y: &FluxField, spec: &ClassicalSpec) -> Result<f64> {
    let r = y.residual(&spec.f)?;
    let (a, b) = spec.domain();
    let sets = contact_sets(v, spec)?;
    let sq = |g: &PiecewiseField, set: &IntervalSet| -> Result<f64> {
        if set.is_empty() {
            return Ok(0.0);
        }
        integrate_fields(&[g], Some(set), |_, x| x[0] * x[0])
    };
    Ok(sq(&r, &sets.free(a, b))? + sq(&r.positive_part(), &sets.lower)? + sq(&r.negative_part(), &sets.upper)?)
}

pub fn majorant_plus_1(v: &PiecewiseField, beta: f64, y: &FluxField, spec: &ClassicalSpec) -> Result<f64> {
    majorant_plus_1_with(v, beta, y, spec, DgCoefficient::Consistent)
}

pub fn majorant_plus_1_with(
    v: &PiecewiseField,
    beta: f64,
    y: &FluxField,
    spec: &ClassicalSpec,
    coefficient: DgCoefficient,
) -> Result<f64> {
    check_beta(beta)?;
    let d = half_flux_misfit_sq(v, y, &spec.diffusion)?;
    let q = bracket_residual_sq(v, y, spec)?;
    let c = spec.friedrichs();
    let k = match coefficient {
        DgCoefficient::Consistent => 1.0,
        DgCoefficient::HalfPrinted => 0.5,
    };
    Ok(k * (1.0 + 1.0 / beta) * d + 0.5 * c * c * (1.0 + beta) * q)
}

/// Sharper majorant with the three-branch integrand `R(v, r, β)`, `c_β = C²(1+β)`.
pub fn majorant_plus_2(v: &PiecewiseField, beta: f64, y: &FluxField, spec: &ClassicalSpec) -> Result<f64> {
    check_beta(beta)?;
    let d = half_flux_misfit_sq(v, y, &spec.diffusion)?;
    let cb = spec.friedrichs().powi(2) * (1.0 + beta);
    let r = y.residual(&spec.f)?;
    let (a, b) = spec.domain();
    // g = c_β r + v; lower branch where g < φ, upper where g > ψ
    let g = r.combine(cb, v, 1.0)?;
    let mut branch_sum = 0.0;
    let mut taken = IntervalSet::empty();
    if let Some(phi) = &spec.lower {
        let set = sign_partition(&g.sub(phi)?, 0.0).negative;
        if !set.is_empty() {
            branch_sum += integrate_fields(&[phi, v, &r], Some(&set), |_, x| {
                let w = x[0] - x[1];
                -w * w / cb + 2.0 * x[2] * w
            })?;
        }
        taken = taken.union(&set);
    }
    if let Some(psi) = &spec.upper {
        let set = sign_partition(&g.sub(psi)?, 0.0).positive;
        if !set.is_empty() {
            branch_sum += integrate_fields(&[psi, v, &r], Some(&set), |_, x| {
                let w = x[0] - x[1];
                -w * w / cb + 2.0 * x[2] * w
            })?;
        }
        taken = taken.union(&set);
    }
    let middle = taken.complement(a, b);
    if !middle.is_empty() {
        branch_sum += integrate_fields(&[&r], Some(&middle), |_, x| cb * x[0] * x[0])?;
    }
    Ok((1.0 + 1.0 / beta) * d + 0.5 * branch_sum)
}

/// Pointwise minimizers `λ₁ = ((φ−v)/c_β − r)₊`, `λ₂ = (r − (ψ−v)/c_β)₊` of the general majorant.
pub fn optimal_multipliers(
    v: &PiecewiseField,
    y: &FluxField,
    spec: &ClassicalSpec,
    beta: f64,
    c_omega: f64,
) -> Result<(Option<PiecewiseField>, Option<PiecewiseField>)> {
    let cb = c_omega * c_omega * (1.0 + beta);
    let r = y.residual(&spec.f)?;
    let l1 = match &spec.lower {
        Some(phi) => Some(phi.sub(v)?.combine(1.0 / cb, &r, -1.0)?.positive_part()),
        None => None,
    };
    let l2 = match &spec.upper {
        Some(psi) => Some(r.combine(1.0, &psi.sub(v)?, -1.0 / cb)?.positive_part()),
        None => None,
    };
    Ok((l1, l2))
}

/// Minimizer of `(1+β⁻¹) D + ½ C² (1+β) Q` over `β > 0`.
pub fn optimal_beta(d: f64, q: f64, c_omega: f64) -> f64 {
    let num = 2.0 * d;
    let den = c_omega * c_omega * q;
    if den <= 0.0 {
        return BETA_MAX;
    }
    if num <= 0.0 {
        return BETA_MIN;
    }
    (num / den).sqrt().clamp(BETA_MIN, BETA_MAX)
}

pub(crate) const BETA_MIN: f64 = 1e-8;
pub(crate) const BETA_MAX: f64 = 1e8;

fn check_beta(beta: f64) -> Result<()> {
    if !(beta > 0.0 && beta.is_finite()) {
        return Err(Error::InvalidParameter(format!("beta must be positive, got {beta}")));
    }
    Ok(())
}

/// `M⁻(v, w) = J(v) − J(w)`.
pub fn minorant(v: &PiecewiseField, w: &PiecewiseField, spec: &ClassicalSpec) -> Result<f64> {
    Ok(primal_energy(v, spec)? - primal_energy(w, spec)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{classical_exact, classical_perturbed_dual, classical_perturbed_primal, ClassicalBenchmark};
    use crate::space::Mesh1D;

    fn bench() -> ClassicalBenchmark {
        classical_exact(-14.0, -1.0).unwrap()
    }

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    fn zero_spec() -> ClassicalSpec {
        let mesh = Mesh1D::new(vec![0.0, 1.0]).unwrap();
        ClassicalSpec::new(
            Diffusion::unit(0.0, 1.0).unwrap(),
            PiecewiseField::constant(mesh.clone(), 0.0),
            Some(PiecewiseField::constant(mesh.clone(), -1.0)),
            Some(PiecewiseField::constant(mesh, 1.0)),
        )
        .unwrap()
    }

    #[test]
    fn spec_rejects_crossing_obstacles() {
        let mesh = Mesh1D::new(vec![0.0, 1.0]).unwrap();
        let phi = PiecewiseField::piecewise_linear(&[0.0, 1.0], &[-1.0, 2.0]).unwrap();
        let res = ClassicalSpec::new(
            Diffusion::unit(0.0, 1.0).unwrap(),
            PiecewiseField::constant(mesh.clone(), 0.0),
            Some(phi),
            Some(PiecewiseField::constant(mesh, 1.0)),
        );
        assert!(res.is_err());
    }

    #[test]
    fn admissibility() {
        let b = bench();
        assert!(admissible(&b.solution.u, &b.spec));
        assert!(admissible(&classical_perturbed_primal(&b, 0.05).unwrap(), &b.spec));
        let dip = PiecewiseField::piecewise_linear(&[0.0, 0.5, 1.0], &[0.0, -1.1, 0.0]).unwrap();
        assert!(!admissible(&dip, &b.spec));
    }

    #[test]
    fn energies_of_exact_pair() {
        let b = bench();
        let j = primal_energy(&b.solution.u, &b.spec).unwrap();
        let i = dual_energy(&b.solution.flux, &b.spec).unwrap();
        assert!((j + 6.9446).abs() < 5e-4);
        assert!((j - i).abs() < 1e-13);
        assert!(mu(&b.solution.u, &b.spec, &b.solution).unwrap().abs() < 1e-14);
        assert!(mu_star(&b.solution.flux, &b.spec, &b.solution).unwrap().abs() < 1e-14);
        assert!(upsilon(&b.solution.u, &b.solution.flux, &b.spec).unwrap().abs() < 1e-14);
    }

    #[test]
    fn trivial_zero_problem() {
        let spec = zero_spec();
        let mesh = spec.f().mesh().clone();
        let v = PiecewiseField::constant(mesh.clone(), 0.0);
        let y = FluxField::new(PiecewiseField::constant(mesh, 0.0)).unwrap();
        assert_eq!(primal_energy(&v, &spec).unwrap(), 0.0);
        assert_eq!(dual_energy(&y, &spec).unwrap(), 0.0);
        let params = ClassicalMajorantParams {
            beta: 1.0,
            lambda1: None,
            lambda2: None,
            c_omega: spec.friedrichs(),
        };
        assert_eq!(majorant_plus(&v, &params, &y, &spec).unwrap(), 0.0);
    }

    #[test]
    fn table_rows() {
        let b = bench();
        let p = primal_identity(&classical_perturbed_primal(&b, 0.05).unwrap(), &b.spec, &b.solution).unwrap();
        for (got, want) in [
            (p.quadratic, 4.82e-2),
            (p.nonlinear, 6.37e-3),
            (p.total, 5.45e-2),
            (p.gap, 5.45e-2),
        ] {
            assert!(rel(got, want) < 1e-2, "{got} vs {want}");
        }
        let d = dual_identity(&classical_perturbed_dual(&b, 0.0125).unwrap(), &b.spec, &b.solution).unwrap();
        assert!(rel(d.quadratic, 6.38e-5) < 1e-2 && rel(d.nonlinear, 6.38e-5) < 1e-2);
        assert!((d.share_pct() - 50.0).abs() < 1e-9);
        let v = classical_perturbed_primal(&b, 0.1).unwrap();
        let y = classical_perturbed_dual(&b, 0.05).unwrap();
        let c = combined_gap(&v, &y, &b.spec).unwrap();
        assert!(rel(c.half_flux_misfit_sq, 1.32e-1) < 1e-2);
        assert!(rel(c.upsilon, 7.15e-2) < 1e-2);
        let oracle = primal_identity(&v, &b.spec, &b.solution).unwrap().total
            + dual_identity(&y, &b.spec, &b.solution).unwrap().total;
        assert!(rel(c.sum, oracle) < 1e-10);
    }

    #[test]
    fn exact_choice_majorant_is_tight() {
        let b = bench();
        let r = b.solution.flux.residual(b.spec.f()).unwrap();
        let params = ClassicalMajorantParams {
            beta: 1e8,
            lambda1: Some(r.negative_part()),
            lambda2: None,
            c_omega: b.spec.friedrichs(),
        };
        assert!(majorant_plus(&b.solution.u, &params, &b.solution.flux, &b.spec).unwrap() <= 1e-6);
        assert!(majorant_plus_1(&b.solution.u, 1.0, &b.solution.flux, &b.spec).unwrap() <= 1e-12);
        assert!(majorant_plus_2(&b.solution.u, 1.0, &b.solution.flux, &b.spec).unwrap() <= 1e-12);
    }

    #[test]
    fn majorant_ordering_on_perturbation() {
        let b = bench();
        let v = classical_perturbed_primal(&b, 0.1).unwrap();
        let y = classical_perturbed_dual(&b, 0.1).unwrap();
        let gap = primal_identity(&v, &b.spec, &b.solution).unwrap().gap;
        for beta in [0.1, 1.0, 10.0] {
            let m1 = majorant_plus_1(&v, beta, &y, &b.spec).unwrap();
            let m2 = majorant_plus_2(&v, beta, &y, &b.spec).unwrap();
            assert!(gap <= m2 && m2 <= m1 + 1e-14, "β = {beta}: {gap} {m2} {m1}");
        }
        let params = ClassicalMajorantParams {
            beta: 1.0,
            lambda1: None,
            lambda2: None,
            c_omega: b.spec.friedrichs(),
        };
        assert!(majorant_plus(&v, &params, &y, &b.spec).unwrap() >= 1.95e-1);
    }

    #[test]
    fn optimal_multipliers_reproduce_sharper_majorant() {
        let b = bench();
        let v = classical_perturbed_primal(&b, 0.05).unwrap();
        let y = classical_perturbed_dual(&b, 0.025).unwrap();
        let c = b.spec.friedrichs();
        for beta in [0.3, 2.0] {
            let (lambda1, lambda2) = optimal_multipliers(&v, &y, &b.spec, beta, c).unwrap();
            let params = ClassicalMajorantParams {
                beta,
                lambda1,
                lambda2,
                c_omega: c,
            };
            let general = majorant_plus(&v, &params, &y, &b.spec).unwrap();
            let sharp = majorant_plus_2(&v, beta, &y, &b.spec).unwrap();
            assert!(
                (general - sharp).abs() <= 1e-12 * sharp.abs().max(1.0),
                "{general} vs {sharp}"
            );
        }
    }

    #[test]
    fn half_printed_variant_is_smaller() {
        let b = bench();
        let v = classical_perturbed_primal(&b, 0.05).unwrap();
        let y = classical_perturbed_dual(&b, 0.05).unwrap();
        let full = majorant_plus_1(&v, 1.0, &y, &b.spec).unwrap();
        let half = majorant_plus_1_with(&v, 1.0, &y, &b.spec, DgCoefficient::HalfPrinted).unwrap();
        assert!(half < full);
    }

    #[test]
    fn negative_multiplier_rejected() {
        let b = bench();
        let mesh = b.spec.f().mesh().clone();
        let params = ClassicalMajorantParams {
            beta: 1.0,
            lambda1: Some(PiecewiseField::constant(mesh, -1.0)),
            lambda2: None,
            c_omega: 1.0,
        };
        let err = majorant_plus(&b.solution.u, &params, &b.solution.flux, &b.spec).unwrap_err();
        assert!(matches!(err, Error::MultiplierOutOfRange { name: "lambda1", .. }));
    }

    #[test]
    fn one_sided_dual_requires_sign() {
        let b = bench();
        // y* = 0 gives div y* + f = −14 ≤ 0, fine for a lower obstacle only
        let zero = FluxField::new(PiecewiseField::constant(b.spec.f().mesh().clone(), 0.0)).unwrap();
        assert!(dual_energy(&zero, &b.spec).is_ok());
        let steep = FluxField::new(PiecewiseField::piecewise_linear(&[0.0, 1.0], &[0.0, 20.0]).unwrap()).unwrap();
        assert!(matches!(
            dual_energy(&steep, &b.spec),
            Err(Error::DualInfeasible { .. })
        ));
    }

    #[test]
    fn minorant_examples() {
        let b = bench();
        let v = classical_perturbed_primal(&b, 0.1).unwrap();
        let w = classical_perturbed_primal(&b, 0.05).unwrap();
        assert_eq!(minorant(&v, &v, &b.spec).unwrap(), 0.0);
        let m = minorant(&v, &w, &b.spec).unwrap();
        assert!(rel(m, 1.95e-1 - 5.45e-2) < 2e-2);
        let gap = minorant(&v, &b.solution.u, &b.spec).unwrap();
        assert!(m <= gap);
    }

    #[test]
    fn beta_formula() {
        // (1+1/β) d + ½ c² (1+β) q is minimal at √(2d/(c²q))
        let (d, q, c) = (0.3, 2.0, 0.5);
        let f = |b: f64| (1.0 + 1.0 / b) * d + 0.5 * c * c * (1.0 + b) * q;
        let b = optimal_beta(d, q, c);
        assert!(f(b) <= f(b * 1.01) && f(b) <= f(b * 0.99));
        assert_eq!(optimal_beta(0.0, 1.0, 1.0), BETA_MIN);
        assert_eq!(optimal_beta(1.0, 0.0, 1.0), BETA_MAX);
    }
}
