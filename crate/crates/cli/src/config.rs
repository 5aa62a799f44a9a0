//! Experiment settings from a flat `key = value` file, overridden by flags.

use std::path::{Path, PathBuf};

use obstacle_core::exact::{classical_exact, double_exact};
use obstacle_core::solvers::{MajorantOptions, Relaxation, SolverOptions};
use obstacle_core::tables::{Benchmark, TableKind};
use obstacle_core::IDENTITY_TOL;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Problem {
    Classical,
    Double,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub problem: Problem,
    pub f: f64,
    pub phi: f64,
    pub alpha_minus: f64,
    pub alpha_plus: f64,
    /// `None` selects the default grid.
    pub eps1: Option<Vec<f64>>,
    pub eps2: Option<Vec<f64>>,
    pub n: usize,
    pub levels: Vec<usize>,
    pub tol: f64,
    pub omega: Relaxation,
    pub max_iter: usize,
    pub majorant_rounds: usize,
    pub seed: u64,
    pub samples: Option<usize>,
    pub tol_identity: f64,
    pub out: Option<PathBuf>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        let s = SolverOptions::default();
        Self {
            problem: Problem::Classical,
            f: -14.0,
            phi: -1.0,
            alpha_minus: 8.0,
            alpha_plus: 8.0,
            eps1: None,
            eps2: None,
            n: 64,
            levels: vec![64, 128, 256, 512, 1024],
            tol: s.tol,
            omega: s.relaxation,
            max_iter: s.max_iter,
            majorant_rounds: MajorantOptions::default().rounds,
            seed: 20240611,
            samples: None,
            tol_identity: IDENTITY_TOL,
            out: None,
        }
    }
}

fn number<T: std::str::FromStr>(key: &str, value: &str) -> Result<T, String>
where
    T::Err: std::fmt::Display,
{
    value.parse().map_err(|e| format!("{key}: cannot parse {value:?}: {e}"))
}

/// Comma-separated list; an empty string is an empty list.
pub fn list<T: std::str::FromStr>(key: &str, value: &str) -> Result<Vec<T>, String>
where
    T::Err: std::fmt::Display,
{
    value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| number(key, s))
        .collect()
}

impl ExperimentConfig {
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), String> {
        let value = value.trim();
        match key {
            "problem" => {
                self.problem = match value {
                    "classical" => Problem::Classical,
                    "double" => Problem::Double,
                    _ => return Err(format!("problem: expected classical or double, got {value:?}")),
                }
            }
            "f" => self.f = number(key, value)?,
            "phi" => self.phi = number(key, value)?,
            "alpha_minus" => self.alpha_minus = number(key, value)?,
            "alpha_plus" => self.alpha_plus = number(key, value)?,
            "eps1" => self.eps1 = Some(list(key, value)?),
            "eps2" => self.eps2 = Some(list(key, value)?),
            "n" => self.n = number(key, value)?,
            "levels" => self.levels = list(key, value)?,
            "tol" => self.tol = number(key, value)?,
            "omega" => {
                self.omega = if value == "optimal" {
                    Relaxation::Optimal
                } else {
                    Relaxation::Fixed(number(key, value)?)
                }
            }
            "max_iter" => self.max_iter = number(key, value)?,
            "majorant_rounds" => self.majorant_rounds = number(key, value)?,
            "seed" => self.seed = number(key, value)?,
            "samples" => self.samples = Some(number(key, value)?),
            "tol_identity" => self.tol_identity = number(key, value)?,
            "out" => self.out = Some(PathBuf::from(value)),
            _ => return Err(format!("unknown key {key:?}")),
        }
        Ok(())
    }

    /// Applies every `key = value` line; blank lines and `#` comments are skipped.
    pub fn apply_text(&mut self, text: &str) -> Result<(), String> {
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| format!("line {}: expected key = value", i + 1))?;
            self.set(k.trim(), v).map_err(|e| format!("line {}: {e}", i + 1))?;
        }
        Ok(())
    }

    pub fn apply_file(&mut self, path: &Path) -> Result<(), String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        self.apply_text(&text).map_err(|e| format!("{}: {e}", path.display()))
    }

    pub fn validate(&self) -> Result<(), String> {
        if self.n < 2 {
            return Err(format!("n must be at least 2, got {}", self.n));
        }
        if let Some(&n) = self.levels.iter().find(|&&n| n < 2) {
            return Err(format!("levels must be at least 2, got {n}"));
        }
        if !(self.tol > 0.0) {
            return Err(format!("tol must be positive, got {}", self.tol));
        }
        if !(self.tol_identity >= 0.0) {
            return Err(format!("tol_identity must be nonnegative, got {}", self.tol_identity));
        }
        Ok(())
    }

    pub fn benchmark(&self) -> obstacle_core::Result<Benchmark> {
        Ok(match self.problem {
            Problem::Classical => Benchmark::Classical(classical_exact(self.f, self.phi)?),
            Problem::Double => Benchmark::Double(double_exact(self.alpha_minus, self.alpha_plus)?),
        })
    }

    pub fn solver(&self) -> SolverOptions {
        SolverOptions {
            cells: self.n,
            tol: self.tol,
            max_iter: self.max_iter,
            relaxation: self.omega,
        }
    }

    pub fn majorant(&self) -> MajorantOptions {
        MajorantOptions {
            rounds: self.majorant_rounds,
            ..Default::default()
        }
    }

    pub fn eps(&self, bench: &Benchmark, kind: TableKind) -> Vec<f64> {
        let explicit = match kind {
            TableKind::Dual => &self.eps2,
            _ => &self.eps1,
        };
        explicit.clone().unwrap_or_else(|| bench.default_eps(kind))
    }

    /// Explicit `eps1`/`eps2` lists are zipped; otherwise each `eps1` yields its default pair.
    pub fn pairs(&self, bench: &Benchmark) -> Result<Vec<(f64, f64)>, String> {
        match (&self.eps1, &self.eps2) {
            (Some(a), Some(b)) if a.len() == b.len() => Ok(a.iter().copied().zip(b.iter().copied()).collect()),
            (Some(a), Some(b)) => Err(format!(
                "combined table: eps1 has {} values but eps2 has {}",
                a.len(),
                b.len()
            )),
            _ => Ok(bench.pairs(&self.eps(bench, TableKind::Combined))),
        }
    }
}
