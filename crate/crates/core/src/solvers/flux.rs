use crate::double::DoubleSpec;
use crate::error::{Error, Result};
use crate::space::{interpolate_nodal, Diffusion, FluxField, Mesh1D, PiecewiseField};

/// Continuous P1 flux on `mesh` whose nodal values average the one-sided limits of `A v'`.
pub fn reconstruct_flux(v: &PiecewiseField, diffusion: &Diffusion, mesh: &Mesh1D) -> Result<FluxField> {
    let g = diffusion.times(&v.derivative())?;
    FluxField::new(interpolate_nodal(&g, mesh.points())?)
}

/// Makes a P1 flux dual feasible, `div y* + f ∈ [−α₋, α₊]` on every cell.
///
/// Slopes are clamped in a forward and a backward march and the two results are
/// averaged; the admissible slopes form an interval per cell, so the average is
/// still feasible and the result stays continuous.
pub fn clip_feasible(y: &FluxField, spec: &DoubleSpec) -> Result<FluxField> {
    let field = y.field();
    if field.degree() > 1 {
        return Err(Error::InvalidParameter(
            "flux clipping expects a piecewise linear flux".into(),
        ));
    }
    let mesh = field.mesh().clone();
    let pts = mesh.points();
    let f = spec.f();
    let bounds = mesh
        .cells()
        .map(|(l, r)| {
            // exact range of f over the cell, whatever mesh f lives on
            let sub = f.restrict(&crate::space::IntervalSet::interval(l, r));
            let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
            for (k, (cl, cr)) in sub.mesh().cells().enumerate() {
                if cr <= l || cl >= r {
                    continue;
                }
                let (a, b) = sub.cell_range(k);
                lo = lo.min(a);
                hi = hi.max(b);
            }
            let (smin, smax) = (-spec.alpha_minus() - lo, spec.alpha_plus() - hi);
            if smin > smax {
                return Err(Error::DualInfeasible {
                    left: l,
                    right: r,
                    reason: "source term varies more than α₊ + α₋ on one cell".into(),
                });
            }
            Ok((smin * (r - l), smax * (r - l)))
        })
        .collect::<Result<Vec<_>>>()?;
    let y0: Vec<f64> = pts.iter().map(|&x| field.eval(x)).collect();
    let n = y0.len();
    let mut fwd = y0.clone();
    for i in 0..n - 1 {
        let (lo, hi) = bounds[i];
        fwd[i + 1] = fwd[i] + (y0[i + 1] - fwd[i]).clamp(lo, hi);
    }
    let mut bwd = y0.clone();
    for i in (0..n - 1).rev() {
        let (lo, hi) = bounds[i];
        bwd[i] = bwd[i + 1] - (bwd[i + 1] - y0[i]).clamp(lo, hi);
    }
    let avg: Vec<f64> = fwd.iter().zip(&bwd).map(|(a, b)| 0.5 * (a + b)).collect();
    FluxField::new(PiecewiseField::piecewise_linear(pts, &avg)?)
}
