//! Grid-refinement studies, observed-order estimation and report emission.
//!
//! A refinement run instantiates one of the bundled benchmarks at a ladder
//! of grid levels, solves each level, measures the max-norm error at the final
//! time against the exact solution, and derives observed rates from
//! consecutive error ratios. `reproduce_table` runs the exact level/order
//! matrices behind the three bundled reference tables and attaches the
//! published numbers cell by cell.

use crate::baselines::{BaselineColumn, TABLE1, TABLE2, TABLE3};
use crate::error::{Error, Result};
use crate::problem::{benchmark_1d, benchmark_2d, max_error_1d, max_error_2d};
use crate::solver1d::{solve_explicit_1d, solve_implicit_1d};
use crate::solver2d::{solve_explicit_2d, solve_implicit_2d};
use rayon::prelude::*;
use std::fmt;
use std::fs;
use std::path::Path;

/// Relative tolerance on |computed - reference| / reference for errors.
pub const BASELINE_ERROR_RTOL: f64 = 0.02;
/// Absolute tolerance on observed vs reference rates.
pub const BASELINE_RATE_ATOL: f64 = 0.05;

/// How the time step follows the mesh width across levels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Coupling {
    /// tau = dx.
    TauEqDx,
    /// tau = dx^(2/(2-gamma)): equalizes the time and space error orders.
    TauEqDxPow,
    /// The same tau on every level.
    FixedTau(f64),
}

impl fmt::Display for Coupling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coupling::TauEqDx => write!(f, "tau-eq-dx"),
            Coupling::TauEqDxPow => write!(f, "tau-eq-dx-pow"),
            Coupling::FixedTau(tau) => write!(f, "fixed-tau({tau})"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scheme {
    Implicit,
    Explicit,
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scheme::Implicit => write!(f, "implicit"),
            Scheme::Explicit => write!(f, "explicit"),
        }
    }
}

/// Benchmark family plus its fractional orders.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BenchmarkFamily {
    Bench1D { alpha: f64, gamma: f64 },
    Bench2D { alpha: f64, beta: f64, gamma: f64 },
}

#[derive(Debug, Clone)]
pub struct RefinementConfig {
    pub family: BenchmarkFamily,
    pub levels: Vec<usize>,
    pub coupling: Coupling,
    pub scheme: Scheme,
}

/// One refinement level of a finished study.
#[derive(Debug, Clone)]
pub struct ReportRow {
    pub n: usize,
    pub dx: f64,
    pub dy: Option<f64>,
    pub tau: f64,
    pub max_error: Option<f64>,
    pub rate: Option<f64>,
    /// Populated when the level's solve failed; the report stays usable.
    pub failure: Option<String>,
    pub paper_error: Option<f64>,
    pub paper_rate: Option<f64>,
    pub rel_diff: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct ConvergenceReport {
    pub config: RefinementConfig,
    pub rows: Vec<ReportRow>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EmitFormat {
    Csv,
    Markdown,
}

impl ConvergenceReport {
    pub fn label(&self) -> String {
        match self.config.family {
            BenchmarkFamily::Bench1D { alpha, gamma } => format!(
                "bench1d alpha={alpha} gamma={gamma} {} {}",
                self.config.scheme, self.config.coupling
            ),
            BenchmarkFamily::Bench2D { alpha, beta, gamma } => format!(
                "bench2d alpha={alpha} beta={beta} gamma={gamma} {} {}",
                self.config.scheme, self.config.coupling
            ),
        }
    }

    /// Worst |computed - reference| / reference over rows carrying both.
    pub fn worst_error_rel_diff(&self) -> Option<f64> {
        self.rows
            .iter()
            .filter_map(|r| r.rel_diff)
            .fold(None, |acc, v| Some(acc.map_or(v, |a: f64| a.max(v))))
    }

    /// Worst |computed rate - reference rate| over rows carrying both.
    pub fn worst_rate_diff(&self) -> Option<f64> {
        self.rows
            .iter()
            .filter_map(|r| match (r.rate, r.paper_rate) {
                (Some(a), Some(b)) => Some((a - b).abs()),
                _ => None,
            })
            .fold(None, |acc, v| Some(acc.map_or(v, |a: f64| a.max(v))))
    }

    /// True when every row solved and every baseline comparison is within
    /// the gate tolerances.
    pub fn passes_gate(&self) -> bool {
        self.rows.iter().all(|r| r.failure.is_none())
            && self
                .worst_error_rel_diff()
                .is_some_and(|d| d <= BASELINE_ERROR_RTOL)
            && self
                .worst_rate_diff()
                .is_none_or(|d| d <= BASELINE_RATE_ATOL)
    }

    pub fn render(&self, format: EmitFormat) -> String {
        match format {
            EmitFormat::Csv => self.render_csv(),
            EmitFormat::Markdown => self.render_markdown(),
        }
    }

    fn render_csv(&self) -> String {
        let mut out = String::from("N,dx,tau,max_error,rate,paper_error,rel_diff\n");
        for row in &self.rows {
            out.push_str(&format!("{},{},{}", row.n, sig5(row.dx), sig5(row.tau)));
            out.push(',');
            if let Some(e) = row.max_error {
                out.push_str(&sig5(e));
            }
            out.push(',');
            if let Some(r) = row.rate {
                out.push_str(&format!("{r:.4}"));
            }
            out.push(',');
            if let Some(p) = row.paper_error {
                out.push_str(&sig5(p));
            }
            out.push(',');
            if let Some(d) = row.rel_diff {
                out.push_str(&sig5(d));
            }
            out.push('\n');
        }
        out
    }

    fn render_markdown(&self) -> String {
        let mut out = format!("## {}\n\n", self.label());
        let with_baseline = self.rows.iter().any(|r| r.paper_error.is_some());
        if with_baseline {
            out.push_str("| N | dx | tau | max error | rate | reference | rel diff |\n");
            out.push_str("|---|----|-----|-----------|------|-----------|----------|\n");
        } else {
            out.push_str("| N | dx | tau | max error | rate |\n");
            out.push_str("|---|----|-----|-----------|------|\n");
        }
        for row in &self.rows {
            let err = match (&row.failure, row.max_error) {
                (Some(msg), _) => format!("failed: {msg}"),
                (None, Some(e)) => sig5(e),
                (None, None) => String::new(),
            };
            let rate = row.rate.map_or(String::new(), |r| format!("{r:.4}"));
            if with_baseline {
                let paper = row.paper_error.map_or(String::new(), sig5);
                let diff = row.rel_diff.map_or(String::new(), sig5);
                out.push_str(&format!(
                    "| {} | {} | {} | {} | {} | {} | {} |\n",
                    row.n,
                    sig5(row.dx),
                    sig5(row.tau),
                    err,
                    rate,
                    paper,
                    diff
                ));
            } else {
                out.push_str(&format!(
                    "| {} | {} | {} | {} | {} |\n",
                    row.n,
                    sig5(row.dx),
                    sig5(row.tau),
                    err,
                    rate
                ));
            }
        }
        out
    }
}

/// Five significant digits, scientific.
fn sig5(v: f64) -> String {
    format!("{v:.4e}")
}

/// Writes a rendered report to `destination`.
pub fn emit(report: &ConvergenceReport, format: EmitFormat, destination: &Path) -> Result<()> {
    fs::write(destination, report.render(format))?;
    Ok(())
}

/// Time steps for one level: the coupling fixes a target tau, the step
/// count is the nearest integer count that tiles [0, T], and tau is then
/// recomputed as T / n_steps.
pub fn steps_for_level(coupling: Coupling, gamma: f64, dx: f64, t_final: f64) -> usize {
    let target = match coupling {
        Coupling::TauEqDx => dx,
        Coupling::TauEqDxPow => dx.powf(2.0 / (2.0 - gamma)),
        Coupling::FixedTau(tau) => tau,
    };
    ((t_final / target).round() as usize).max(1)
}

fn run_level(config: &RefinementConfig, n: usize) -> Result<ReportRow> {
    let t_final = 0.5;
    let dx = 1.0 / n as f64;
    match config.family {
        BenchmarkFamily::Bench1D { alpha, gamma } => {
            let n_steps = steps_for_level(config.coupling, gamma, dx, t_final);
            let spec = benchmark_1d(alpha, gamma, n, n_steps)?;
            let result = match config.scheme {
                Scheme::Implicit => solve_implicit_1d(&spec),
                Scheme::Explicit => solve_explicit_1d(&spec),
            }?;
            let exact = spec
                .exact
                .clone()
                .expect("benchmark carries an exact solution");
            let err = max_error_1d(&result.final_field, &spec.grid, &exact, t_final);
            Ok(ReportRow {
                n,
                dx,
                dy: None,
                tau: spec.time.tau(),
                max_error: Some(err),
                rate: None,
                failure: None,
                paper_error: None,
                paper_rate: None,
                rel_diff: None,
            })
        }
        BenchmarkFamily::Bench2D { alpha, beta, gamma } => {
            let n_steps = steps_for_level(config.coupling, gamma, dx, t_final);
            let spec = benchmark_2d(alpha, beta, gamma, n, n_steps)?;
            let result = match config.scheme {
                Scheme::Implicit => solve_implicit_2d(&spec),
                Scheme::Explicit => solve_explicit_2d(&spec),
            }?;
            let exact = spec
                .exact
                .clone()
                .expect("benchmark carries an exact solution");
            let err = max_error_2d(&result.final_field, &spec.grid, &exact, t_final);
            Ok(ReportRow {
                n,
                dx,
                dy: Some(dx),
                tau: spec.time.tau(),
                max_error: Some(err),
                rate: None,
                failure: None,
                paper_error: None,
                paper_rate: None,
                rel_diff: None,
            })
        }
    }
}

/// Runs the study. Levels are independent and run in parallel; a level
/// whose solve fails is recorded in its row rather than aborting the rest.
pub fn run_refinement(config: &RefinementConfig) -> Result<ConvergenceReport> {
    if config.levels.is_empty() {
        return Err(Error::Domain("refinement needs at least one level".into()));
    }
    if config.levels.iter().any(|&n| n < 4) {
        return Err(Error::Domain(
            "refinement levels must be at least 4 cells".into(),
        ));
    }
    if config.levels.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Domain(
            "refinement levels must be strictly increasing".into(),
        ));
    }
    let mut rows: Vec<ReportRow> = config
        .levels
        .par_iter()
        .map(|&n| {
            run_level(config, n).unwrap_or_else(|e| ReportRow {
                n,
                dx: 1.0 / n as f64,
                dy: None,
                tau: f64::NAN,
                max_error: None,
                rate: None,
                failure: Some(e.to_string()),
                paper_error: None,
                paper_rate: None,
                rel_diff: None,
            })
        })
        .collect();
    compute_rates(&mut rows);
    Ok(ConvergenceReport {
        config: config.clone(),
        rows,
    })
}

/// Observed order between consecutive successful rows, using the actual
/// dx ratio (levels need not halve).
pub fn compute_rates(rows: &mut [ReportRow]) {
    for r in 1..rows.len() {
        if let (Some(coarse), Some(fine)) = (rows[r - 1].max_error, rows[r].max_error) {
            let ratio = rows[r - 1].dx / rows[r].dx;
            if coarse > 0.0 && fine > 0.0 && ratio > 0.0 && ratio != 1.0 {
                rows[r].rate = Some((coarse / fine).ln() / ratio.ln());
            } else if coarse == fine {
                rows[r].rate = Some(0.0);
            }
        }
    }
}

fn attach_baseline(report: &mut ConvergenceReport, column: &BaselineColumn) {
    for row in report.rows.iter_mut() {
        if let Some(cell) = column.cells.iter().find(|c| c.n == row.n) {
            row.paper_error = Some(cell.error);
            row.paper_rate = cell.rate;
            if let Some(err) = row.max_error {
                row.rel_diff = Some((err - cell.error).abs() / cell.error);
            }
        }
    }
}

type TablePlan = (
    &'static [BaselineColumn],
    Vec<usize>,
    Coupling,
    fn(&BaselineColumn) -> BenchmarkFamily,
);

/// Reruns every column of one of the bundled reference tables and attaches
/// the published values for side-by-side comparison.
pub fn reproduce_table(id: u8) -> Result<Vec<ConvergenceReport>> {
    let (columns, levels, coupling, family_of): TablePlan = match id {
        1 => (&TABLE1, vec![40, 80, 160, 320], Coupling::TauEqDx, |c| {
            BenchmarkFamily::Bench1D {
                alpha: c.alpha,
                gamma: c.gamma,
            }
        }),
        2 => (&TABLE2, vec![10, 20, 40, 80], Coupling::TauEqDxPow, |c| {
            BenchmarkFamily::Bench1D {
                alpha: c.alpha,
                gamma: c.gamma,
            }
        }),
        3 => (&TABLE3, vec![10, 20, 30, 40], Coupling::TauEqDx, |c| {
            BenchmarkFamily::Bench2D {
                alpha: c.alpha,
                beta: c.beta.expect("2D column carries beta"),
                gamma: c.gamma,
            }
        }),
        other => {
            return Err(Error::Domain(format!(
                "no bundled table {other}; valid ids are 1, 2, 3"
            )))
        }
    };
    columns
        .par_iter()
        .map(|column| {
            let config = RefinementConfig {
                family: family_of(column),
                levels: levels.clone(),
                coupling,
                scheme: Scheme::Implicit,
            };
            let mut report = run_refinement(&config)?;
            attach_baseline(&mut report, column);
            Ok(report)
        })
        .collect()
}
