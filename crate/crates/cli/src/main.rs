//! `obstacle`: benchmark tables, identity checks, solver certificates and convergence runs.

mod config;
mod report;

use std::fs::File;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use obstacle_core::par::Execution;
use obstacle_core::space::{io::read_field_csv, io::write_field_csv, FluxField, PiecewiseField};
use obstacle_core::study::{certify, converge, error_densities};
use obstacle_core::tables::{Benchmark, TableKind};
use obstacle_core::verify::{verify, Check, VerifyConfig};
use obstacle_core::{classical, double, Error};

use config::ExperimentConfig;

#[derive(Parser)]
#[command(
    name = "obstacle",
    version,
    about = "Error identities and two-sided bounds for 1D obstacle problems"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Error-identity tables over ε-grids.
    Table {
        #[arg(long, value_enum, default_value_t = KindArg::Primal)]
        kind: KindArg,
        #[command(flatten)]
        common: Common,
    },
    /// Identity, sign and bound checks; optionally on user-supplied fields.
    Verify {
        /// Primal field CSV (`breakpoint_left,breakpoint_right,c0,c1,c2`).
        #[arg(long)]
        primal: Option<PathBuf>,
        /// Flux field CSV in the same format.
        #[arg(long)]
        flux: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Discrete solution on `n` cells with its certificate and field dumps.
    Solve {
        #[command(flatten)]
        common: Common,
    },
    /// Certificates over a sequence of meshes with observed orders.
    Converge {
        /// Comma-separated cell counts.
        #[arg(long)]
        levels: Option<String>,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Primal,
    Dual,
    Combined,
    All,
}

/// Every flag mirrors a config key; flags win over the file.
#[derive(Args)]
struct Common {
    /// Flat `key = value` file.
    #[arg(long)]
    config: Option<PathBuf>,
    /// classical | double
    #[arg(long)]
    problem: Option<String>,
    #[arg(long = "f", allow_hyphen_values = true)]
    f: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    phi: Option<String>,
    #[arg(long)]
    alpha_minus: Option<String>,
    #[arg(long)]
    alpha_plus: Option<String>,
    /// Comma-separated; empty for none.
    #[arg(long, allow_hyphen_values = true)]
    eps1: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    eps2: Option<String>,
    #[arg(long)]
    n: Option<String>,
    #[arg(long)]
    tol: Option<String>,
    /// Relaxation factor, or `optimal`.
    #[arg(long)]
    omega: Option<String>,
    #[arg(long)]
    max_iter: Option<String>,
    #[arg(long)]
    seed: Option<String>,
    /// Random samples per check group.
    #[arg(long)]
    samples: Option<String>,
    #[arg(long)]
    tol_identity: Option<String>,
    /// Output directory; CSV goes to stdout when absent.
    #[arg(long)]
    out: Option<String>,
}

enum Failure {
    Usage(String),
    Assertion(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidParameter(_) => Failure::Usage(e.to_string()),
            _ => Failure::Assertion(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Assertion(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

impl Common {
    fn resolve(&self, extra: &[(&str, &Option<String>)]) -> Result<ExperimentConfig, Failure> {
        let mut cfg = ExperimentConfig::default();
        if let Some(path) = &self.config {
            cfg.apply_file(path).map_err(Failure::Usage)?;
        }
        let flags = [
            ("problem", &self.problem),
            ("f", &self.f),
            ("phi", &self.phi),
            ("alpha_minus", &self.alpha_minus),
            ("alpha_plus", &self.alpha_plus),
            ("eps1", &self.eps1),
            ("eps2", &self.eps2),
            ("n", &self.n),
            ("tol", &self.tol),
            ("omega", &self.omega),
            ("max_iter", &self.max_iter),
            ("seed", &self.seed),
            ("samples", &self.samples),
            ("tol_identity", &self.tol_identity),
            ("out", &self.out),
        ];
        for (key, value) in flags.iter().chain(extra) {
            if let Some(v) = value {
                cfg.set(key, v)
                    .map_err(|e| Failure::Usage(format!("--{}: {e}", key.replace('_', "-"))))?;
            }
        }
        cfg.validate().map_err(Failure::Usage)?;
        Ok(cfg)
    }
}

/// CSV sink: `dir/name` when an output directory is set, stdout otherwise.
fn sink(out: &Option<PathBuf>, name: &str) -> io::Result<Box<dyn Write>> {
    match out {
        Some(dir) => {
            std::fs::create_dir_all(dir)?;
            let path = dir.join(name);
            eprintln!("writing {}", path.display());
            Ok(Box::new(File::create(path)?))
        }
        None => Ok(Box::new(io::stdout().lock())),
    }
}

fn write_csv<S: AsRef<str>>(out: Box<dyn Write>, header: &[&str], rows: &[Vec<S>]) -> io::Result<()> {
    let mut w = io::BufWriter::new(out);
    writeln!(w, "{}", header.join(","))?;
    for r in rows {
        let cells: Vec<&str> = r.iter().map(AsRef::as_ref).collect();
        writeln!(w, "{}", cells.join(","))?;
    }
    w.flush()
}

fn kind_name(kind: TableKind) -> &'static str {
    match kind {
        TableKind::Primal => "primal",
        TableKind::Dual => "dual",
        TableKind::Combined => "combined",
    }
}

fn cmd_table(kind: KindArg, cfg: &ExperimentConfig) -> Outcome {
    let bench = cfg.benchmark()?;
    let kinds = match kind {
        KindArg::Primal => vec![TableKind::Primal],
        KindArg::Dual => vec![TableKind::Dual],
        KindArg::Combined => vec![TableKind::Combined],
        KindArg::All if cfg.out.is_none() => {
            return Err(Failure::Usage("--kind all writes several files and needs --out".into()))
        }
        KindArg::All => vec![TableKind::Primal, TableKind::Dual, TableKind::Combined],
    };
    let exec = Execution::default();
    let mut bad = Vec::new();
    for kind in kinds {
        let rows: Vec<Vec<String>> = match kind {
            TableKind::Combined => {
                let pairs = cfg.pairs(&bench).map_err(Failure::Usage)?;
                let rows = bench.combined_table(&pairs, exec)?;
                for r in &rows {
                    let tol = r.breakdown.tolerance(cfg.tol_identity);
                    if r.breakdown.residual > tol || r.oracle_mismatch() > cfg.tol_identity {
                        bad.push(format!(
                            "combined eps1={} eps2={}: residual {:e} (tol {tol:e}), oracle mismatch {:e}",
                            r.eps1,
                            r.eps2,
                            r.breakdown.residual,
                            r.oracle_mismatch()
                        ));
                    }
                }
                rows.iter().map(report::combined_record).collect()
            }
            _ => {
                let eps = cfg.eps(&bench, kind);
                let rows = if kind == TableKind::Primal {
                    bench.primal_table(&eps, exec)?
                } else {
                    bench.dual_table(&eps, exec)?
                };
                for r in &rows {
                    let tol = r.breakdown.tolerance(cfg.tol_identity);
                    if r.breakdown.residual > tol {
                        bad.push(format!(
                            "{} eps={}: residual {:e} exceeds {tol:e}",
                            kind_name(kind),
                            r.eps,
                            r.breakdown.residual
                        ));
                    }
                }
                rows.iter().map(report::identity_record).collect()
            }
        };
        let name = format!("{}_{}.csv", bench.name(), kind_name(kind));
        write_csv(sink(&cfg.out, &name)?, &report::header(&bench, kind), &rows)?;
    }
    if bad.is_empty() {
        Ok(())
    } else {
        Err(Failure::Assertion(bad.join("\n")))
    }
}

fn load_field(path: &Path) -> Result<PiecewiseField, Failure> {
    let file = File::open(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    read_field_csv(file).map_err(|e| Failure::Assertion(format!("{}: {e}", path.display())))
}

fn load_flux(path: &Path) -> Result<FluxField, Failure> {
    FluxField::new(load_field(path)?).map_err(|e| Failure::Assertion(format!("{}: flux rejected: {e}", path.display())))
}

/// Identity checks on user-supplied fields against the benchmark.
fn user_checks(
    bench: &Benchmark,
    v: Option<&PiecewiseField>,
    y: Option<&FluxField>,
    tol: f64,
) -> Result<Vec<Check>, Failure> {
    let scale = 1.0 + bench.exact_energy().abs();
    let check = |name: &'static str, value: f64| Check {
        group: "input",
        name,
        case: "user fields".into(),
        value,
        limit: tol * scale,
    };
    let mut out = Vec::new();
    match bench {
        Benchmark::Classical(b) => {
            if let Some(v) = v {
                classical::check_admissible(v, &b.spec)?;
                out.push(check(
                    "primal identity",
                    classical::primal_breakdown(v, &b.spec, &b.solution)?.residual,
                ));
            }
            if let Some(y) = y {
                out.push(check(
                    "dual identity",
                    classical::dual_breakdown(y, &b.spec, &b.solution)?.residual,
                ));
            }
            if let (Some(v), Some(y)) = (v, y) {
                out.push(check(
                    "combined identity",
                    classical::combined_breakdown(v, y, &b.spec)?.residual,
                ));
            }
        }
        Benchmark::Double(b) => {
            if let Some(v) = v {
                b.spec.check_boundary(v)?;
                out.push(check(
                    "primal identity",
                    double::primal_breakdown_d(v, &b.spec, &b.solution)?.residual,
                ));
            }
            if let Some(y) = y {
                b.spec.check_feasible(y)?;
                out.push(check(
                    "dual identity",
                    double::dual_breakdown_d(y, &b.spec, &b.solution)?.residual,
                ));
            }
            if let (Some(v), Some(y)) = (v, y) {
                out.push(check(
                    "combined identity",
                    double::combined_breakdown_d(v, y, &b.spec)?.residual,
                ));
            }
        }
    }
    Ok(out)
}

fn cmd_verify(primal: Option<&Path>, flux: Option<&Path>, cfg: &ExperimentConfig) -> Outcome {
    let bench = cfg.benchmark()?;
    let v = primal.map(load_field).transpose()?;
    let y = flux.map(load_flux).transpose()?;
    let defaults = VerifyConfig::default();
    let vc = VerifyConfig {
        seed: cfg.seed,
        identity_samples: cfg.samples.unwrap_or(defaults.identity_samples),
        majorant_samples: cfg.samples.unwrap_or(defaults.majorant_samples),
        tol_identity: cfg.tol_identity,
        solver_cells: cfg.n,
        solver: cfg.solver(),
        exec: Execution::default(),
    };
    let mut checks = user_checks(&bench, v.as_ref(), y.as_ref(), cfg.tol_identity)?;
    checks.extend(verify(&bench, &vc)?);
    let rows: Vec<Vec<String>> = checks.iter().map(report::check_record).collect();
    write_csv(
        sink(&cfg.out, &format!("{}_verify.csv", bench.name()))?,
        &report::VERIFY_HEADER,
        &rows,
    )?;
    let failed: Vec<&Check> = checks.iter().filter(|c| !c.passed()).collect();
    eprintln!("{} checks, {} failed", checks.len(), failed.len());
    match failed.first() {
        None => Ok(()),
        Some(c) => Err(Failure::Assertion(format!(
            "{} failed checks; first: {} / {} ({}): {:e} > {:e}",
            failed.len(),
            c.group,
            c.name,
            c.case,
            c.value,
            c.limit
        ))),
    }
}

fn dump(dir: &Path, name: &str, field: &PiecewiseField) -> Outcome {
    let path = dir.join(name);
    write_field_csv(field, io::BufWriter::new(File::create(&path)?))?;
    eprintln!("writing {}", path.display());
    Ok(())
}

fn cmd_solve(cfg: &ExperimentConfig) -> Outcome {
    let bench = cfg.benchmark()?;
    let c = certify(&bench, cfg.n, &cfg.solver(), &cfg.majorant())?;
    let boundary: Vec<String> = c.free_boundary.iter().map(|x| report::full(*x)).collect();
    let rows: Vec<Vec<String>> = [
        ("problem", bench.name().to_string()),
        ("n", c.n.to_string()),
        ("h", report::full(c.h)),
        ("iterations", c.iterations.to_string()),
        ("energy", report::full(c.energy)),
        ("exact_energy", report::full(bench.exact_energy())),
        ("gap", report::full(c.gap)),
        ("quadratic", report::full(c.quadratic)),
        ("nonlinear", report::full(c.nonlinear)),
        ("minorant", report::full(c.minorant)),
        ("majorant", report::full(c.majorant)),
        ("efficiency", report::full(c.efficiency())),
        ("beta", report::full(c.beta)),
        ("free_boundary", boundary.join(";")),
        ("sandwich", c.sandwich_holds().to_string()),
    ]
    .into_iter()
    .map(|(k, v)| vec![k.to_string(), v])
    .collect();
    let stem = format!("{}_n{}", bench.name(), c.n);
    write_csv(
        sink(&cfg.out, &format!("{stem}_certificate.csv"))?,
        &["key", "value"],
        &rows,
    )?;
    if let Some(dir) = &cfg.out {
        let (quadratic, nonlinear) = error_densities(&bench, &c.v)?;
        let (u, p) = match &bench {
            Benchmark::Classical(b) => (&b.solution.u, &b.solution.flux),
            Benchmark::Double(b) => (&b.solution.u, &b.solution.flux),
        };
        dump(dir, &format!("{stem}_v.csv"), &c.v)?;
        dump(dir, &format!("{stem}_flux.csv"), c.flux.field())?;
        dump(dir, &format!("{stem}_quadratic_density.csv"), &quadratic)?;
        dump(dir, &format!("{stem}_nonlinear_density.csv"), &nonlinear)?;
        dump(dir, &format!("{}_u.csv", bench.name()), u)?;
        dump(dir, &format!("{}_p.csv", bench.name()), p.field())?;
    }
    if c.sandwich_holds() {
        Ok(())
    } else {
        Err(Failure::Assertion(format!(
            "bounds violated: minorant {:e}, gap {:e}, majorant {:e}",
            c.minorant, c.gap, c.majorant
        )))
    }
}

fn cmd_converge(cfg: &ExperimentConfig) -> Outcome {
    let bench = cfg.benchmark()?;
    let rows = converge(
        &bench,
        &cfg.levels,
        &cfg.solver(),
        &cfg.majorant(),
        Execution::default(),
    )?;
    let records: Vec<Vec<String>> = rows.iter().map(report::converge_record).collect();
    write_csv(
        sink(&cfg.out, &format!("{}_converge.csv", bench.name()))?,
        &report::CONVERGE_HEADER,
        &records,
    )?;
    let bad: Vec<String> = rows
        .iter()
        .filter(|r| !r.certificate.sandwich_holds())
        .map(|r| format!("n={}: minorant ≤ gap ≤ majorant violated", r.certificate.n))
        .collect();
    if bad.is_empty() {
        Ok(())
    } else {
        Err(Failure::Assertion(bad.join("\n")))
    }
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Table { kind, common } => cmd_table(kind, &common.resolve(&[])?),
        Command::Verify { primal, flux, common } => {
            cmd_verify(primal.as_deref(), flux.as_deref(), &common.resolve(&[])?)
        }
        Command::Solve { common } => cmd_solve(&common.resolve(&[])?),
        Command::Converge { levels, common } => cmd_converge(&common.resolve(&[("levels", &levels)])?),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Assertion(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
    }
}
