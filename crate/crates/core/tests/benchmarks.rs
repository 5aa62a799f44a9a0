mod common;

use common::golden;
use common::{classical_zero_measure, double_zero_measure, rel, upper_fixture};
use obstacle_core::classical;
use obstacle_core::double;
use obstacle_core::par::Execution;
use obstacle_core::solvers::{MajorantOptions, Relaxation, SolverOptions};
use obstacle_core::study::{certify, converge};
use obstacle_core::tables::{Benchmark, TableKind};

fn close(got: f64, want: f64) -> bool {
    rel(got, want) <= 0.01
}

#[test]
fn classical_tables_match_reference_rows() {
    let bench = Benchmark::classical_default().unwrap();
    for (eps, q, mu, total, gap, share) in golden::CLASSICAL_PRIMAL {
        let b = bench.primal_row(eps).unwrap().breakdown;
        assert!(
            close(b.quadratic, q) && close(b.nonlinear, mu) && close(b.total, total) && close(b.gap, gap),
            "{eps}: {b:?}"
        );
        assert!((b.share_pct() - share).abs() <= 0.011);
    }
    for (eps, q, total) in golden::CLASSICAL_DUAL {
        let b = bench.dual_row(eps).unwrap().breakdown;
        assert!(
            close(b.quadratic, q) && close(b.nonlinear, q) && close(b.total, total),
            "{eps}: {b:?}"
        );
    }
    for (e1, e2, d, ups, sum) in golden::CLASSICAL_COMBINED {
        let r = bench.combined_row(e1, e2).unwrap();
        assert!(
            close(r.breakdown.half_flux_misfit_sq, d) && close(r.breakdown.upsilon, ups) && close(r.breakdown.sum, sum)
        );
    }
}

#[test]
fn double_tables_match_reference_rows() {
    let bench = Benchmark::double_default().unwrap();
    for (eps, q, mu, total, gap, share) in golden::DOUBLE_PRIMAL {
        let b = bench.primal_row(eps).unwrap().breakdown;
        assert!(
            close(b.quadratic, q) && close(b.nonlinear, mu) && close(b.total, total) && close(b.gap, gap),
            "{eps}: {b:?}"
        );
        assert!((b.share_pct() - share).abs() <= 0.011);
    }
    for (eps, q, total) in golden::DOUBLE_DUAL {
        let b = bench.dual_row(eps).unwrap().breakdown;
        assert!(
            close(b.quadratic, q) && close(b.nonlinear, q) && close(b.total, total),
            "{eps}: {b:?}"
        );
    }
    for (e1, e2, d, ups, sum) in golden::DOUBLE_COMBINED {
        let r = bench.combined_row(e1, e2).unwrap();
        assert!(
            close(r.breakdown.half_flux_misfit_sq, d) && close(r.breakdown.upsilon, ups) && close(r.breakdown.sum, sum)
        );
    }
}

#[test]
fn default_pair_grids_match_reference_order() {
    let c = Benchmark::classical_default().unwrap();
    let pairs = c.pairs(&c.default_eps(TableKind::Combined));
    let want: Vec<(f64, f64)> = golden::CLASSICAL_COMBINED.iter().map(|r| (r.0, r.1)).collect();
    assert_eq!(pairs, want);
    let d = Benchmark::double_default().unwrap();
    let pairs = d.pairs(&d.default_eps(TableKind::Combined));
    let want: Vec<(f64, f64)> = golden::DOUBLE_COMBINED.iter().map(|r| (r.0, r.1)).collect();
    assert_eq!(pairs, want);
}

#[test]
fn zero_measure_constructions() {
    let Benchmark::Classical(c) = Benchmark::classical_default().unwrap() else {
        unreachable!()
    };
    for widen in [0.01, 0.05, 0.2] {
        let (v, y) = classical_zero_measure(&c, widen);
        assert!(classical::mu(&v, &c.spec, &c.solution).unwrap().abs() <= 1e-12);
        assert!(classical::mu_star(&y, &c.spec, &c.solution).unwrap().abs() <= 1e-12);
        let cb = classical::combined_gap(&v, &y, &c.spec).unwrap();
        assert!(cb.upsilon.abs() <= 1e-12);
        assert!(rel(cb.half_flux_misfit_sq, cb.gap) <= 1e-10);
    }
    let Benchmark::Double(d) = Benchmark::double_default().unwrap() else {
        unreachable!()
    };
    for widen in [0.05, 0.1, 0.3] {
        let (v, y) = double_zero_measure(&d, widen);
        assert!(double::mu_omega(&v, &d.spec, &d.solution).unwrap().abs() <= 1e-12);
        assert!(double::mu_omega_star(&y, &d.spec, &d.solution).unwrap().abs() <= 1e-12);
        let parts = double::upsilon_decomposition(&v, &y, &d.spec).unwrap();
        assert!(parts.sum().abs() <= 1e-12);
        let cb = double::combined_gap_d(&v, &y, &d.spec).unwrap();
        assert!(rel(cb.half_flux_misfit_sq, cb.gap) <= 1e-10);
    }
}

#[test]
fn upper_obstacle_measure_is_source_times_l1_gap() {
    let fx = upper_fixture();
    let u_sets = classical::contact_sets(&fx.solution.u, &fx.spec).unwrap();
    assert!(u_sets.lower.is_empty());
    for eps in [0.1, 0.02] {
        let v = fx.perturbed(eps);
        let v_sets = classical::contact_sets(&v, &fx.spec).unwrap();
        let set = u_sets.upper.difference(&v_sets.upper);
        let l1 = obstacle_core::space::integrate(&v.scaled(-1.0).add_constant(fx.psi).restrict(&set), None);
        let mu = classical::mu(&v, &fx.spec, &fx.solution).unwrap();
        assert!(rel(mu, fx.f * l1) <= 1e-10);
        let b = classical::primal_identity(&v, &fx.spec, &fx.solution).unwrap();
        assert!(b.gap > 0.0);
    }
}

#[test]
fn solver_levels_agree_across_execution_modes() {
    let bench = Benchmark::double_default().unwrap();
    let opts = SolverOptions {
        relaxation: Relaxation::Optimal,
        ..Default::default()
    };
    let seq = converge(
        &bench,
        &[16, 32],
        &opts,
        &MajorantOptions::default(),
        Execution::Sequential,
    )
    .unwrap();
    let par = converge(
        &bench,
        &[16, 32],
        &opts,
        &MajorantOptions::default(),
        Execution::Parallel,
    )
    .unwrap();
    assert_eq!(seq, par);
    assert!(seq[1].order.unwrap() > 1.5);
}

#[test]
fn certificates_bracket_the_gap() {
    for bench in [
        Benchmark::classical_default().unwrap(),
        Benchmark::double_default().unwrap(),
    ] {
        for n in [8, 33] {
            let c = certify(&bench, n, &SolverOptions::default(), &MajorantOptions::default()).unwrap();
            assert!(c.sandwich_holds(), "{} n={n}", bench.name());
            assert!(c.efficiency() < 3.0);
        }
    }
}
