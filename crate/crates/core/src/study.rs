//! Solver runs on the benchmarks with their computable certificates.

use crate::classical::{self, contact_sets};
use crate::double::{self, omega_sets, phase_sets};
use crate::error::Result;
use crate::par::{map_ordered, Execution};
use crate::solvers::{
    improve_classical, improve_double, optimize_majorant_classical, optimize_majorant_double, solve_classical,
    solve_double, DiscreteSolution, MajorantOptions, SolverOptions,
};
use crate::space::{FluxField, IntervalSet, PiecewiseField};
use crate::tables::Benchmark;

/// Discrete solution of one mesh level with its two-sided bound.
#[derive(Debug, Clone, PartialEq)]
pub struct Certificate {
    pub n: usize,
    pub h: f64,
    pub iterations: usize,
    pub v: PiecewiseField,
    /// One-level-finer discrete solution used by the minorant.
    pub w: PiecewiseField,
    pub flux: FluxField,
    pub energy: f64,
    pub gap: f64,
    pub quadratic: f64,
    pub nonlinear: f64,
    pub minorant: f64,
    pub majorant: f64,
    pub beta: f64,
    /// Endpoints of the contact set (classical) or of the zero phase (double) of `v`.
    pub free_boundary: Vec<f64>,
}

impl Certificate {
    pub fn efficiency(&self) -> f64 {
        self.majorant / self.gap
    }

    pub fn sandwich_holds(&self) -> bool {
        self.minorant <= self.gap && self.gap <= self.majorant
    }
}

fn interior_endpoints(set: &IntervalSet, a: f64, b: f64) -> Vec<f64> {
    set.endpoints().filter(|&x| x > a && x < b).collect()
}

/// Solves on `n` cells, improves once for the minorant, and optimizes the majorant on a
/// flux mesh of `n` cells.
pub fn certify(bench: &Benchmark, n: usize, solver: &SolverOptions, majorant: &MajorantOptions) -> Result<Certificate> {
    let opts = SolverOptions { cells: n, ..*solver };
    let mopts = MajorantOptions {
        flux_cells: majorant.flux_cells.max(n),
        ..*majorant
    };
    match bench {
        Benchmark::Classical(b) => {
            let sol = solve_classical(&b.spec, &opts)?;
            let w = improve_classical(&b.spec, &sol, &opts)?.to_field();
            let v = sol.to_field();
            let br = classical::primal_breakdown(&v, &b.spec, &b.solution)?;
            let m = optimize_majorant_classical(&v, &b.spec, &mopts)?;
            let (a, bb) = b.spec.domain();
            Ok(Certificate {
                n,
                h: sol.h(),
                iterations: sol.iterations,
                free_boundary: interior_endpoints(&contact_sets(&v, &b.spec)?.lower, a, bb),
                minorant: classical::minorant(&v, &w, &b.spec)?,
                energy: br.gap + b.solution.energy,
                gap: br.gap,
                quadratic: br.quadratic,
                nonlinear: br.nonlinear,
                majorant: m.bound,
                beta: m.params.beta,
                flux: m.flux,
                v,
                w,
            })
        }
        Benchmark::Double(b) => {
            let sol = solve_double(&b.spec, &opts)?;
            let w = improve_double(&b.spec, &sol, &opts)?.to_field();
            let v = sol.to_field();
            let br = double::primal_breakdown_d(&v, &b.spec, &b.solution)?;
            let m = optimize_majorant_double(&v, &b.spec, &mopts)?;
            let (a, bb) = b.spec.domain();
            Ok(Certificate {
                n,
                h: sol.h(),
                iterations: sol.iterations,
                free_boundary: interior_endpoints(&phase_sets(&v).zero, a, bb),
                minorant: double::minorant_d(&v, &w, &b.spec)?,
                energy: br.gap + b.solution.energy,
                gap: br.gap,
                quadratic: br.quadratic,
                nonlinear: br.nonlinear,
                majorant: m.bound,
                beta: m.beta,
                flux: m.flux,
                v,
                w,
            })
        }
    }
}

/// Discrete solution only, without the certificate.
pub fn solve(bench: &Benchmark, n: usize, solver: &SolverOptions) -> Result<DiscreteSolution> {
    let opts = SolverOptions { cells: n, ..*solver };
    match bench {
        Benchmark::Classical(b) => solve_classical(&b.spec, &opts),
        Benchmark::Double(b) => solve_double(&b.spec, &opts),
    }
}

/// Pointwise integrands of the quadratic and nonlinear parts of `J(v) − J(u)`.
pub fn error_densities(bench: &Benchmark, v: &PiecewiseField) -> Result<(PiecewiseField, PiecewiseField)> {
    match bench {
        Benchmark::Classical(b) => {
            let e = b.solution.u.sub(v)?.derivative();
            let quadratic = b.spec.diffusion().times(&e.mul(&e)?)?.scaled(0.5);
            let sets = contact_sets(&b.solution.u, &b.spec)?;
            let a = b.spec.diffusion().field();
            let mut nonlinear = PiecewiseField::constant(v.mesh().clone(), 0.0);
            if let Some(phi) = b.spec.lower() {
                let w = a.mul(&phi.derivative().derivative())?.add(b.spec.f())?.scaled(-1.0);
                nonlinear = nonlinear.add(&w.mul(&v.sub(phi)?)?.restrict(&sets.lower))?;
            }
            if let Some(psi) = b.spec.upper() {
                let w = a.mul(&psi.derivative().derivative())?.add(b.spec.f())?;
                nonlinear = nonlinear.add(&w.mul(&psi.sub(v)?)?.restrict(&sets.upper))?;
            }
            Ok((quadratic, nonlinear))
        }
        Benchmark::Double(b) => {
            let e = b.solution.u.sub(v)?.derivative();
            let quadratic = b.spec.diffusion().times(&e.mul(&e)?)?.scaled(0.5);
            let om = omega_sets(v, &b.solution.u);
            let (ap, am) = (b.spec.alpha_plus(), b.spec.alpha_minus());
            let f = b.spec.f();
            let plus = f.scaled(-1.0).add_constant(ap).mul(v)?.restrict(&om.plus);
            let minus = f.add_constant(am).mul(v)?.scaled(-1.0).restrict(&om.minus);
            let both = v
                .positive_part()
                .add(&v.negative_part())?
                .scaled(ap + am)
                .restrict(&om.both);
            Ok((quadratic, plus.add(&minus)?.add(&both)?))
        }
    }
}

/// One row of a convergence study.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceRow {
    pub certificate: Certificate,
    /// `log(gap_prev / gap) / log(h_prev / h)` against the previous row.
    pub order: Option<f64>,
}

/// Independent certificates for every `n`, in input order.
pub fn converge(
    bench: &Benchmark,
    ns: &[usize],
    solver: &SolverOptions,
    majorant: &MajorantOptions,
    exec: Execution,
) -> Result<Vec<ConvergenceRow>> {
    let certs = map_ordered(ns, exec, |&n| certify(bench, n, solver, majorant))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let mut rows: Vec<ConvergenceRow> = Vec::with_capacity(certs.len());
    for c in certs {
        let order = rows.last().map(|p| {
            let prev = &p.certificate;
            (prev.gap / c.gap).ln() / (prev.h / c.h).ln()
        });
        rows.push(ConvergenceRow { certificate: c, order });
    }
    Ok(rows)
}

/// Least-squares slope of `log gap` against `log h`.
pub fn fit_order(h: &[f64], gap: &[f64]) -> f64 {
    let xs: Vec<f64> = h.iter().map(|x| x.ln()).collect();
    let ys: Vec<f64> = gap.iter().map(|y| y.ln()).collect();
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    sxy / sxx
}
