//! Pass/fail checks of the identities, sign properties and bounds.
//!
//! A check passes when its `value` is at most its `limit`; every check is phrased so
//! that `value` is a violation measure (a residual, or how far an inequality fails).

use crate::classical::{self, ClassicalMajorantParams};
use crate::double::{self, upsilon_decomposition};
use crate::error::Result;
use crate::exact::{ClassicalBenchmark, DoubleBenchmark};
use crate::par::{map_ordered, Execution};
use crate::sampling::Sampler;
use crate::solvers::{MajorantOptions, SolverOptions};
use crate::study::certify;
use crate::tables::{Benchmark, TableKind};

/// Allowed negativity of quantities that are nonnegative in exact arithmetic.
pub const NONNEG_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub group: &'static str,
    pub name: &'static str,
    pub case: String,
    pub value: f64,
    pub limit: f64,
}

impl Check {
    fn new(group: &'static str, name: &'static str, case: String, value: f64, limit: f64) -> Self {
        Self {
            group,
            name,
            case,
            value,
            limit,
        }
    }

    pub fn passed(&self) -> bool {
        self.value <= self.limit
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyConfig {
    pub seed: u64,
    /// Random `(v, y*)` pairs for the identity and sign checks.
    pub identity_samples: usize,
    /// Random `(v, β, y*, λ, w)` draws for the bound checks.
    pub majorant_samples: usize,
    /// Relative identity tolerance; residuals are compared with `tol · (1 + |J(u)|)`.
    pub tol_identity: f64,
    /// Cells of the solver run used for the sandwich check (0 skips it).
    pub solver_cells: usize,
    pub solver: SolverOptions,
    pub exec: Execution,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            seed: 20240611,
            identity_samples: 200,
            majorant_samples: 100,
            tol_identity: crate::IDENTITY_TOL,
            solver_cells: 64,
            solver: SolverOptions::default(),
            exec: Execution::default(),
        }
    }
}

/// Runs every check group on `bench`.
pub fn verify(bench: &Benchmark, cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let mut out = table_checks(bench, cfg)?;
    out.extend(identity_checks(bench, cfg)?);
    out.extend(majorant_checks(bench, cfg)?);
    if cfg.solver_cells > 0 {
        out.extend(sandwich_checks(bench, cfg)?);
    }
    Ok(out)
}

/// Identity residuals on the default ε-grids.
pub fn table_checks(bench: &Benchmark, cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let scale = 1.0 + bench.exact_energy().abs();
    let tol = cfg.tol_identity * scale;
    let mut out = Vec::new();
    for r in bench.primal_table(&bench.default_eps(TableKind::Primal), cfg.exec)? {
        out.push(Check::new(
            "table",
            "primal identity",
            format!("eps1={}", r.eps),
            r.breakdown.residual,
            tol,
        ));
    }
    for r in bench.dual_table(&bench.default_eps(TableKind::Dual), cfg.exec)? {
        out.push(Check::new(
            "table",
            "dual identity",
            format!("eps2={}", r.eps),
            r.breakdown.residual,
            tol,
        ));
    }
    let pairs = bench.pairs(&bench.default_eps(TableKind::Combined));
    for r in bench.combined_table(&pairs, cfg.exec)? {
        let case = format!("eps1={} eps2={}", r.eps1, r.eps2);
        out.push(Check::new(
            "table",
            "combined identity",
            case.clone(),
            r.breakdown.residual,
            tol,
        ));
        out.push(Check::new(
            "table",
            "combined equals oracle",
            case,
            r.oracle_mismatch(),
            cfg.tol_identity,
        ));
    }
    Ok(out)
}

fn sample_seed(seed: u64, group: u64, i: usize) -> u64 {
    seed ^ (group << 48) ^ (i as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

fn classical_align(b: &ClassicalBenchmark) -> [f64; 2] {
    [b.contact_left(), b.contact_right()]
}

fn double_align(b: &DoubleBenchmark) -> [f64; 2] {
    [b.r_minus, b.r_plus]
}

/// Identities and sign properties on random admissible pairs.
pub fn identity_checks(bench: &Benchmark, cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let idx: Vec<usize> = (0..cfg.identity_samples).collect();
    let tol = cfg.tol_identity * (1.0 + bench.exact_energy().abs());
    let groups = map_ordered(&idx, cfg.exec, |&i| -> Result<Vec<Check>> {
        let seed = sample_seed(cfg.seed, 1, i);
        let mut s = Sampler::new(seed);
        let case = format!("seed={} sample={i}", cfg.seed);
        let cells = 4 + i % 12;
        let mut out = Vec::new();
        let mut push = |name, value, limit| out.push(Check::new("random", name, case.clone(), value, limit));
        match bench {
            Benchmark::Classical(b) => {
                let v = s.classical_primal(&b.spec, cells, &classical_align(b))?;
                let y = s.classical_dual(&b.spec, cells, &classical_align(b))?;
                let p = classical::primal_breakdown(&v, &b.spec, &b.solution)?;
                let d = classical::dual_breakdown(&y, &b.spec, &b.solution)?;
                let c = classical::combined_breakdown(&v, &y, &b.spec)?;
                push("primal identity", p.residual, tol);
                push("dual identity", d.residual, tol);
                push("combined identity", c.residual, tol);
                push("combined equals sum of gaps", (c.sum - p.total - d.total).abs(), tol);
                push("mu nonnegative", -p.nonlinear, NONNEG_TOL);
                push("mu_star nonnegative", -d.nonlinear, NONNEG_TOL);
                push("upsilon nonnegative", -c.upsilon, NONNEG_TOL);
                push("flux misfit nonnegative", -c.half_flux_misfit_sq, NONNEG_TOL);
            }
            Benchmark::Double(b) => {
                let v = s.double_primal(&b.spec, cells, &double_align(b))?;
                let y = s.double_dual(&b.spec, cells, &double_align(b))?;
                let p = double::primal_breakdown_d(&v, &b.spec, &b.solution)?;
                let d = double::dual_breakdown_d(&y, &b.spec, &b.solution)?;
                let c = double::combined_breakdown_d(&v, &y, &b.spec)?;
                let parts = upsilon_decomposition(&v, &y, &b.spec)?;
                push("primal identity", p.residual, tol);
                push("dual identity", d.residual, tol);
                push("combined identity", c.residual, tol);
                push("combined equals sum of gaps", (c.sum - p.total - d.total).abs(), tol);
                push("upsilon decomposition", (parts.sum() - c.upsilon).abs(), tol);
                push("corollary bound", p.quadratic + d.quadratic - c.sum, NONNEG_TOL);
                push("mu_omega nonnegative", -p.nonlinear, NONNEG_TOL);
                push("mu_omega_star nonnegative", -d.nonlinear, NONNEG_TOL);
                push("upsilon nonnegative", -c.upsilon, NONNEG_TOL);
                push("upsilon_1 nonnegative", -parts.opposite_phase, NONNEG_TOL);
                push("upsilon_2 nonnegative", -parts.positive_free, NONNEG_TOL);
                push("upsilon_3 nonnegative", -parts.negative_free, NONNEG_TOL);
                push("flux misfit nonnegative", -c.half_flux_misfit_sq, NONNEG_TOL);
            }
        }
        Ok(out)
    });
    Ok(groups
        .into_iter()
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect())
}

fn bound_tol(x: f64) -> f64 {
    1e-12 * (1.0 + x.abs())
}

/// Majorants above and minorant below the true gap; sharper majorant below the simpler one.
pub fn majorant_checks(bench: &Benchmark, cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let idx: Vec<usize> = (0..cfg.majorant_samples).collect();
    let groups = map_ordered(&idx, cfg.exec, |&i| -> Result<Vec<Check>> {
        let mut s = Sampler::new(sample_seed(cfg.seed, 2, i));
        let case = format!("seed={} sample={i}", cfg.seed);
        let cells = 4 + i % 12;
        let beta = s.log_uniform(1e-3, 1e3);
        let mut out = Vec::new();
        let mut push = |name, value, limit| out.push(Check::new("bounds", name, case.clone(), value, limit));
        match bench {
            Benchmark::Classical(b) => {
                let al = classical_align(b);
                let v = s.classical_primal(&b.spec, cells, &al)?;
                let w = s.classical_primal(&b.spec, cells, &al)?;
                let y = s.flux_with_residual(b.spec.f(), cells, &al, -30.0, 30.0)?;
                let (a, bb) = b.spec.domain();
                let lambda1 = s.box_field(a, bb, cells, 0.0, 20.0)?;
                let gap = classical::primal_energy(&v, &b.spec)? - b.solution.energy;
                let m1 = classical::majorant_plus_1(&v, beta, &y, &b.spec)?;
                let m2 = classical::majorant_plus_2(&v, beta, &y, &b.spec)?;
                let params = ClassicalMajorantParams {
                    beta,
                    lambda1: Some(lambda1),
                    lambda2: None,
                    c_omega: b.spec.friedrichs(),
                };
                let m = classical::majorant_plus(&v, &params, &y, &b.spec)?;
                push("sharper majorant below simplified", m2 - m1, bound_tol(m1));
                push("general majorant above gap", gap - m, 0.0);
                push("simplified majorant above gap", gap - m1, 0.0);
                push("sharper majorant above gap", gap - m2, 0.0);
                push(
                    "minorant below gap",
                    classical::minorant(&v, &w, &b.spec)? - gap,
                    bound_tol(gap),
                );
            }
            Benchmark::Double(b) => {
                let al = double_align(b);
                let v = s.double_primal(&b.spec, cells, &al)?;
                let w = s.double_primal(&b.spec, cells, &al)?;
                let y = s.flux_with_residual(b.spec.f(), cells, &al, -30.0, 30.0)?;
                let (a, bb) = b.spec.domain();
                let lp = s.box_field(a, bb, cells, 0.0, 1.0)?;
                let lm = s.box_field(a, bb, cells, 0.0, 1.0)?;
                let lambda = s.box_field(a, bb, cells, -b.spec.alpha_minus(), b.spec.alpha_plus())?;
                let gap = double::primal_energy_d(&v, &b.spec)? - b.solution.energy;
                let m = double::majorant_plus_d(&v, beta, &lp, &lm, &y, &b.spec)?;
                let m1 = double::majorant_plus_1_d(&v, beta, &lambda, &y, &b.spec)?;
                let best = double::optimal_lambda_d(&v, &y, &b.spec, beta)?;
                let m1_best = double::majorant_plus_1_d(&v, beta, &best, &y, &b.spec)?;
                push("optimal multiplier below random", m1_best - m1, bound_tol(m1));
                push("two-multiplier majorant above gap", gap - m, 0.0);
                push("single-multiplier majorant above gap", gap - m1, 0.0);
                push("optimal-multiplier majorant above gap", gap - m1_best, 0.0);
                push(
                    "minorant below gap",
                    double::minorant_d(&v, &w, &b.spec)? - gap,
                    bound_tol(gap),
                );
            }
        }
        Ok(out)
    });
    Ok(groups
        .into_iter()
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect())
}

/// `M⁻ ≤ J(v_h) − J(u) ≤ M⁺` for the discrete solution on `cfg.solver_cells` cells.
pub fn sandwich_checks(bench: &Benchmark, cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let c = certify(bench, cfg.solver_cells, &cfg.solver, &MajorantOptions::default())?;
    let case = format!("n={}", cfg.solver_cells);
    Ok(vec![
        Check::new(
            "sandwich",
            "minorant below gap",
            case.clone(),
            c.minorant - c.gap,
            bound_tol(c.gap),
        ),
        Check::new("sandwich", "majorant above gap", case, c.gap - c.majorant, 0.0),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> VerifyConfig {
        VerifyConfig {
            identity_samples: 20,
            majorant_samples: 20,
            solver_cells: 16,
            ..Default::default()
        }
    }

    #[test]
    fn default_suites_pass() {
        for bench in [
            Benchmark::classical_default().unwrap(),
            Benchmark::double_default().unwrap(),
        ] {
            let checks = verify(&bench, &small()).unwrap();
            let failed: Vec<_> = checks.iter().filter(|c| !c.passed()).collect();
            assert!(failed.is_empty(), "{failed:?}");
        }
    }

    #[test]
    fn zero_tolerance_fails_somewhere() {
        let bench = Benchmark::classical_default().unwrap();
        let cfg = VerifyConfig {
            tol_identity: 0.0,
            ..small()
        };
        let checks = table_checks(&bench, &cfg).unwrap();
        assert!(checks.iter().any(|c| !c.passed()));
    }

    #[test]
    fn deterministic_for_a_seed() {
        let bench = Benchmark::double_default().unwrap();
        let a = identity_checks(&bench, &small()).unwrap();
        let b = identity_checks(
            &bench,
            &VerifyConfig {
                exec: Execution::Sequential,
                ..small()
            },
        )
        .unwrap();
        assert_eq!(a, b);
    }
}
