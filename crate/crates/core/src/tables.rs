//! Rows of the benchmark error tables over ε-grids.

use crate::breakdown::{CombinedBreakdown, ErrorBreakdown};
use crate::error::Result;
use crate::exact::{
    classical_exact, classical_perturbed_dual, classical_perturbed_primal, double_exact, double_perturbed_dual,
    double_perturbed_primal, ClassicalBenchmark, DoubleBenchmark,
};
use crate::par::{map_ordered, Execution};
use crate::{classical, double};

#[derive(Debug, Clone, PartialEq)]
pub enum Benchmark {
    Classical(ClassicalBenchmark),
    Double(DoubleBenchmark),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableKind {
    Primal,
    Dual,
    Combined,
}

/// One row of a primal or dual table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IdentityRow {
    pub eps: f64,
    pub breakdown: ErrorBreakdown,
}

/// One row of a combined table, with the oracle value `M(u, v) + M(p*, y*)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CombinedRow {
    pub eps1: f64,
    pub eps2: f64,
    pub breakdown: CombinedBreakdown,
    pub oracle: f64,
}

impl CombinedRow {
    /// `|sum − oracle| / |oracle|`, or the absolute difference when the oracle is zero.
    pub fn oracle_mismatch(&self) -> f64 {
        let d = (self.breakdown.sum - self.oracle).abs();
        if self.oracle == 0.0 {
            d
        } else {
            d / self.oracle.abs()
        }
    }
}

pub const CLASSICAL_PRIMAL_EPS: [f64; 5] = [0.1, 0.05, 0.025, 0.0125, 0.00625];
pub const CLASSICAL_DUAL_EPS: [f64; 5] = [0.05, 0.025, 0.0125, 0.00625, 0.003125];
pub const DOUBLE_EPS: [f64; 5] = [0.2, 0.1, 0.05, 0.025, 0.0125];

impl Benchmark {
    /// `f = −14`, `φ = −1` on `(0, 1)`.
    pub fn classical_default() -> Result<Self> {
        Ok(Benchmark::Classical(classical_exact(-14.0, -1.0)?))
    }

    /// `α₊ = α₋ = 8` on `(−1, 1)`.
    pub fn double_default() -> Result<Self> {
        Ok(Benchmark::Double(double_exact(8.0, 8.0)?))
    }

    pub fn name(&self) -> &'static str {
        match self {
            Benchmark::Classical(_) => "classical",
            Benchmark::Double(_) => "double",
        }
    }

    pub fn exact_energy(&self) -> f64 {
        match self {
            Benchmark::Classical(b) => b.solution.energy,
            Benchmark::Double(b) => b.solution.energy,
        }
    }

    pub fn default_eps(&self, kind: TableKind) -> Vec<f64> {
        match (self, kind) {
            (Benchmark::Classical(_), TableKind::Dual) => CLASSICAL_DUAL_EPS.to_vec(),
            (Benchmark::Classical(_), _) => CLASSICAL_PRIMAL_EPS.to_vec(),
            (Benchmark::Double(_), _) => DOUBLE_EPS.to_vec(),
        }
    }

    /// `(ε, ε)` followed by `(ε, ε/2)` (classical) or `(ε/2, ε)` (double) for each `ε`.
    pub fn pairs(&self, eps: &[f64]) -> Vec<(f64, f64)> {
        eps.iter()
            .flat_map(|&e| {
                let second = match self {
                    Benchmark::Classical(_) => (e, 0.5 * e),
                    Benchmark::Double(_) => (0.5 * e, e),
                };
                [(e, e), second]
            })
            .collect()
    }

    pub fn primal_row(&self, eps: f64) -> Result<IdentityRow> {
        let breakdown = match self {
            Benchmark::Classical(b) => {
                classical::primal_breakdown(&classical_perturbed_primal(b, eps)?, &b.spec, &b.solution)?
            }
            Benchmark::Double(b) => {
                double::primal_breakdown_d(&double_perturbed_primal(b, eps)?, &b.spec, &b.solution)?
            }
        };
        Ok(IdentityRow { eps, breakdown })
    }

    pub fn dual_row(&self, eps: f64) -> Result<IdentityRow> {
        let breakdown = match self {
            Benchmark::Classical(b) => {
                classical::dual_breakdown(&classical_perturbed_dual(b, eps)?, &b.spec, &b.solution)?
            }
            Benchmark::Double(b) => double::dual_breakdown_d(&double_perturbed_dual(b, eps)?, &b.spec, &b.solution)?,
        };
        Ok(IdentityRow { eps, breakdown })
    }

    pub fn combined_row(&self, eps1: f64, eps2: f64) -> Result<CombinedRow> {
        let (breakdown, oracle) = match self {
            Benchmark::Classical(b) => {
                let v = classical_perturbed_primal(b, eps1)?;
                let y = classical_perturbed_dual(b, eps2)?;
                let oracle = classical::primal_breakdown(&v, &b.spec, &b.solution)?.total
                    + classical::dual_breakdown(&y, &b.spec, &b.solution)?.total;
                (classical::combined_breakdown(&v, &y, &b.spec)?, oracle)
            }
            Benchmark::Double(b) => {
                let v = double_perturbed_primal(b, eps1)?;
                let y = double_perturbed_dual(b, eps2)?;
                let oracle = double::primal_breakdown_d(&v, &b.spec, &b.solution)?.total
                    + double::dual_breakdown_d(&y, &b.spec, &b.solution)?.total;
                (double::combined_breakdown_d(&v, &y, &b.spec)?, oracle)
            }
        };
        Ok(CombinedRow {
            eps1,
            eps2,
            breakdown,
            oracle,
        })
    }

    pub fn primal_table(&self, eps: &[f64], exec: Execution) -> Result<Vec<IdentityRow>> {
        map_ordered(eps, exec, |&e| self.primal_row(e)).into_iter().collect()
    }

    pub fn dual_table(&self, eps: &[f64], exec: Execution) -> Result<Vec<IdentityRow>> {
        map_ordered(eps, exec, |&e| self.dual_row(e)).into_iter().collect()
    }

    pub fn combined_table(&self, pairs: &[(f64, f64)], exec: Execution) -> Result<Vec<CombinedRow>> {
        map_ordered(pairs, exec, |&(e1, e2)| self.combined_row(e1, e2))
            .into_iter()
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_orders() {
        let c = Benchmark::classical_default().unwrap();
        assert_eq!(c.pairs(&[0.1]), vec![(0.1, 0.1), (0.1, 0.05)]);
        let d = Benchmark::double_default().unwrap();
        assert_eq!(d.pairs(&[0.2]), vec![(0.2, 0.2), (0.1, 0.2)]);
    }

    #[test]
    fn execution_modes_agree() {
        let d = Benchmark::double_default().unwrap();
        let pairs = d.pairs(&DOUBLE_EPS);
        let seq = d.combined_table(&pairs, Execution::Sequential).unwrap();
        let par = d.combined_table(&pairs, Execution::Parallel).unwrap();
        assert_eq!(seq, par);
        assert_eq!(seq.len(), 10);
    }

    #[test]
    fn empty_grid_gives_no_rows() {
        let c = Benchmark::classical_default().unwrap();
        assert!(c.primal_table(&[], Execution::Sequential).unwrap().is_empty());
    }

    #[test]
    fn out_of_range_eps_is_an_error() {
        let c = Benchmark::classical_default().unwrap();
        assert!(c.primal_table(&[0.05, 0.3], Execution::Sequential).is_err());
    }
}
