//! Number formats and CSV rows for the table, convergence and verification outputs.

use obstacle_core::study::ConvergenceRow;
use obstacle_core::tables::{Benchmark, CombinedRow, IdentityRow, TableKind};
use obstacle_core::verify::Check;

/// Three significant digits with a signed two-digit exponent, e.g. `1.54e-01`.
pub fn sci3(x: f64) -> String {
    let s = format!("{x:.2e}");
    let (mantissa, exp) = s.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    format!("{mantissa}e{}{:02}", if exp < 0 { '-' } else { '+' }, exp.abs())
}

/// Percentage rounded half-up to two decimals.
pub fn pct2(x: f64) -> String {
    // snap binary noise first so that 20.915 rounds up
    let cents = (x * 1e8).round() / 1e6;
    format!("{:.2}", (cents + 0.5).floor() / 100.0)
}

/// Shortest representation that reads back to the same `f64`.
pub fn full(x: f64) -> String {
    format!("{x:e}")
}

pub fn header(bench: &Benchmark, kind: TableKind) -> Vec<&'static str> {
    let classical = matches!(bench, Benchmark::Classical(_));
    match kind {
        TableKind::Primal => vec![
            "eps1",
            "quadratic",
            if classical { "mu" } else { "mu_omega" },
            "measure_total",
            "energy_gap",
            if classical { "nonlinear_share_pct" } else { "share_pct" },
            "measure_total_full",
            "energy_gap_full",
        ],
        TableKind::Dual => vec![
            "eps2",
            "quadratic_dual",
            if classical { "mu_star" } else { "mu_omega_star" },
            "measure_total",
            "dual_gap",
            "share_pct",
            "measure_total_full",
            "dual_gap_full",
        ],
        TableKind::Combined => vec![
            "eps1",
            "eps2",
            "half_flux_misfit_sq",
            "upsilon",
            "sum",
            "combined_measure",
            "sum_full",
            "combined_measure_full",
        ],
    }
}

pub fn identity_record(r: &IdentityRow) -> Vec<String> {
    let b = &r.breakdown;
    vec![
        r.eps.to_string(),
        sci3(b.quadratic),
        sci3(b.nonlinear),
        sci3(b.total),
        sci3(b.gap),
        pct2(b.share_pct()),
        full(b.total),
        full(b.gap),
    ]
}

pub fn combined_record(r: &CombinedRow) -> Vec<String> {
    let b = &r.breakdown;
    vec![
        r.eps1.to_string(),
        r.eps2.to_string(),
        sci3(b.half_flux_misfit_sq),
        sci3(b.upsilon),
        sci3(b.sum),
        sci3(r.oracle),
        full(b.sum),
        full(r.oracle),
    ]
}

pub const CONVERGE_HEADER: [&str; 11] = [
    "n",
    "h",
    "gap",
    "quadratic",
    "nonlinear",
    "nonlinear_share_pct",
    "majorant",
    "minorant",
    "efficiency",
    "order",
    "iterations",
];

pub fn converge_record(r: &ConvergenceRow) -> Vec<String> {
    let c = &r.certificate;
    let share = if c.gap > 0.0 { 100.0 * c.nonlinear / c.gap } else { 0.0 };
    vec![
        c.n.to_string(),
        full(c.h),
        full(c.gap),
        full(c.quadratic),
        full(c.nonlinear),
        pct2(share),
        full(c.majorant),
        full(c.minorant),
        format!("{:.4}", c.efficiency()),
        r.order.map(|o| format!("{o:.4}")).unwrap_or_default(),
        c.iterations.to_string(),
    ]
}

pub const VERIFY_HEADER: [&str; 6] = ["group", "check", "case", "value", "limit", "passed"];

pub fn check_record(c: &Check) -> Vec<String> {
    vec![
        c.group.to_string(),
        c.name.to_string(),
        c.case.clone(),
        full(c.value),
        full(c.limit),
        c.passed().to_string(),
    ]
}
