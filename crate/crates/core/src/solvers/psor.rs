use super::assembly::{cell_stiffness, load_vector};
use super::{prolong, quadratic_energy, solver_mesh, DiscreteSolution, SolverOptions};
use crate::classical::ClassicalSpec;
use crate::error::{Error, Result};
use crate::space::{Mesh1D, PiecewiseField};

fn check_shape(obstacle: &PiecewiseField, convex: bool) -> Result<()> {
    obstacle.require_continuous()?;
    for (k, q) in obstacle.cells().iter().enumerate() {
        let c2 = q.0[2];
        if (convex && c2 < 0.0) || (!convex && c2 > 0.0) {
            let (l, r) = obstacle.mesh().cell(k);
            return Err(Error::InvalidParameter(format!(
                "obstacle must be {} on each cell; fails on ({l}, {r})",
                if convex { "convex" } else { "concave" }
            )));
        }
    }
    Ok(())
}

/// Projected SOR for the P1 discretization of the classical problem.
///
/// Nodal clamping keeps the iterate admissible because the lower obstacle is required
/// convex and the upper one concave on every cell.
pub fn solve_classical(spec: &ClassicalSpec, opts: &SolverOptions) -> Result<DiscreteSolution> {
    opts.validate()?;
    let (a, b) = spec.domain();
    let mut data = vec![spec.f(), spec.diffusion().field()];
    data.extend(spec.lower());
    data.extend(spec.upper());
    let mesh = solver_mesh(a, b, opts.cells, &data)?;
    let init = vec![0.0; mesh.points().len()];
    run(spec, mesh, init, opts)
}

/// Warm-started solve on the mesh with every cell of `sol` split in two.
pub fn improve_classical(
    spec: &ClassicalSpec,
    sol: &DiscreteSolution,
    opts: &SolverOptions,
) -> Result<DiscreteSolution> {
    let fine = sol.mesh.subdivided(2);
    let init = prolong(sol, &fine);
    let mut o = *opts;
    o.cells = fine.cell_count();
    run(spec, fine, init, &o)
}

fn run(spec: &ClassicalSpec, mesh: Mesh1D, mut v: Vec<f64>, opts: &SolverOptions) -> Result<DiscreteSolution> {
    let omega = opts.validate()?;
    if let Some(phi) = spec.lower() {
        check_shape(phi, true)?;
    }
    if let Some(psi) = spec.upper() {
        check_shape(psi, false)?;
    }
    let k = cell_stiffness(&mesh, spec.diffusion().field());
    let b = load_vector(spec.f(), &mesh)?;
    let n = v.len();
    let lo: Vec<f64> = mesh
        .points()
        .iter()
        .map(|&x| spec.lower().map_or(f64::NEG_INFINITY, |p| p.eval(x)))
        .collect();
    let hi: Vec<f64> = mesh
        .points()
        .iter()
        .map(|&x| spec.upper().map_or(f64::INFINITY, |p| p.eval(x)))
        .collect();
    v[0] = 0.0;
    v[n - 1] = 0.0;
    for i in 1..n - 1 {
        v[i] = v[i].clamp(lo[i], hi[i]);
    }
    let mut history = vec![quadratic_energy(&k, &b, &v)];
    let mut change = f64::INFINITY;
    for it in 1..=opts.max_iter {
        change = 0.0;
        for i in 1..n - 1 {
            let diag = k[i - 1] + k[i];
            let gs = (b[i] + k[i - 1] * v[i - 1] + k[i] * v[i + 1]) / diag;
            let new = (v[i] + omega * (gs - v[i])).clamp(lo[i], hi[i]);
            change = f64::max(change, (new - v[i]).abs());
            v[i] = new;
        }
        history.push(quadratic_energy(&k, &b, &v));
        if change <= opts.tol {
            return Ok(DiscreteSolution {
                mesh,
                values: v,
                iterations: it,
                last_change: change,
                energy_history: history,
            });
        }
    }
    Err(Error::NotConverged {
        iterations: opts.max_iter,
        last_change: change,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::classical_exact;
    use crate::space::Diffusion;

    #[test]
    fn zero_load_stays_zero() {
        let m = Mesh1D::new(vec![0.0, 1.0]).unwrap();
        let spec = ClassicalSpec::new(
            Diffusion::unit(0.0, 1.0).unwrap(),
            PiecewiseField::constant(m.clone(), 0.0),
            Some(PiecewiseField::constant(m.clone(), -1.0)),
            Some(PiecewiseField::constant(m, 1.0)),
        )
        .unwrap();
        let sol = solve_classical(&spec, &SolverOptions::default()).unwrap();
        assert!(sol.iterations <= 2);
        assert!(sol.values.iter().all(|&x| x == 0.0));
    }

    #[test]
    fn energy_decreases_every_sweep() {
        let b = classical_exact(-14.0, -1.0).unwrap();
        let sol = solve_classical(
            &b.spec,
            &SolverOptions {
                cells: 32,
                ..Default::default()
            },
        )
        .unwrap();
        for w in sol.energy_history.windows(2) {
            assert!(w[1] <= w[0] + 1e-12);
        }
        assert!(crate::classical::admissible(&sol.to_field(), &b.spec));
    }

    #[test]
    fn concave_lower_obstacle_rejected() {
        let m = Mesh1D::new(vec![0.0, 1.0]).unwrap();
        let spec = ClassicalSpec::new(
            Diffusion::unit(0.0, 1.0).unwrap(),
            PiecewiseField::constant(m.clone(), -1.0),
            Some(PiecewiseField::global_polynomial(m, [-1.0, 4.0, -4.0])),
            None,
        )
        .unwrap();
        assert!(solve_classical(&spec, &SolverOptions::default()).is_err());
    }
}
