use super::assembly::{cell_stiffness, load_vector, lumped_mass};
use super::{prolong, quadratic_energy, solver_mesh, DiscreteSolution, SolverOptions};
use crate::double::DoubleSpec;
use crate::error::{Error, Result};
use crate::space::Mesh1D;

/// Minimizer of `½ d t² − g t + m(α₊ t₊ + α₋ t₋)`.
fn scalar_prox(d: f64, g: f64, m_plus: f64, m_minus: f64) -> f64 {
    if g > m_plus {
        (g - m_plus) / d
    } else if g < -m_minus {
        (g + m_minus) / d
    } else {
        0.0
    }
}

fn scalar_objective(d: f64, g: f64, m_plus: f64, m_minus: f64, t: f64) -> f64 {
    0.5 * d * t * t - g * t + m_plus * t.max(0.0) + m_minus * (-t).max(0.0)
}

/// Cyclic coordinate minimization of the P1 energy with a lumped phase term.
///
/// Every nodal subproblem is solved exactly by soft thresholding. The over-relaxed
/// step is kept only if it achieves a fixed fraction of the exact decrease, so the
/// discrete energy never increases.
pub fn solve_double(spec: &DoubleSpec, opts: &SolverOptions) -> Result<DiscreteSolution> {
    opts.validate()?;
    let (a, b) = spec.domain();
    let mesh = solver_mesh(a, b, opts.cells, &[spec.f(), spec.diffusion().field()])?;
    let init = mesh.points().iter().map(|&x| spec.lift().eval(x)).collect();
    run(spec, mesh, init, opts)
}

/// Warm-started solve on the mesh with every cell of `sol` split in two.
pub fn improve_double(spec: &DoubleSpec, sol: &DiscreteSolution, opts: &SolverOptions) -> Result<DiscreteSolution> {
    let fine = sol.mesh.subdivided(2);
    let init = prolong(sol, &fine);
    let mut o = *opts;
    o.cells = fine.cell_count();
    run(spec, fine, init, &o)
}

fn run(spec: &DoubleSpec, mesh: Mesh1D, mut v: Vec<f64>, opts: &SolverOptions) -> Result<DiscreteSolution> {
    let omega = opts.validate()?;
    let k = cell_stiffness(&mesh, spec.diffusion().field());
    let b = load_vector(spec.f(), &mesh)?;
    let mass = lumped_mass(&mesh);
    let (ap, am) = (spec.alpha_plus(), spec.alpha_minus());
    let n = v.len();
    let (ga, gb) = spec.boundary();
    v[0] = ga;
    v[n - 1] = gb;
    let energy = |v: &[f64]| {
        quadratic_energy(&k, &b, v)
            + (1..n - 1)
                .map(|i| mass[i] * (ap * v[i].max(0.0) + am * (-v[i]).max(0.0)))
                .sum::<f64>()
    };
    let mut history = vec![energy(&v)];
    let mut change = f64::INFINITY;
    let fraction = 0.5 * omega * (2.0 - omega);
    for it in 1..=opts.max_iter {
        change = 0.0;
        for i in 1..n - 1 {
            let d = k[i - 1] + k[i];
            let g = b[i] + k[i - 1] * v[i - 1] + k[i] * v[i + 1];
            let (mp, mm) = (mass[i] * ap, mass[i] * am);
            let exact = scalar_prox(d, g, mp, mm);
            let relaxed = v[i] + omega * (exact - v[i]);
            let obj = |t| scalar_objective(d, g, mp, mm, t);
            let now = obj(v[i]);
            let new = if now - obj(relaxed) >= fraction * (now - obj(exact)) {
                relaxed
            } else {
                exact
            };
            change = f64::max(change, (new - v[i]).abs());
            v[i] = new;
        }
        history.push(energy(&v));
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
