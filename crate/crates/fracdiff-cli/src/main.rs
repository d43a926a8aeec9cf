//! `fracdiff` — config-driven runs of the fractional diffusion solvers.
//!
//! Subcommands: `solve` (one problem from a JSON config), `convergence`
//! (refinement study on a bundled benchmark), `reproduce` (rerun and gate
//! the bundled reference tables), `stability` (explicit-scheme bound
//! report), `dump-coefficients` (inspect the discrete weight tables).
//!
//! Exit codes: 1 config/parse problems, 2 solver failures, 3 gate failures.

use clap::{Parser, Subcommand, ValueEnum};
use fracdiff::error::Error;
use fracdiff::problem::{max_error_1d, max_error_2d};
use fracdiff::verification::{
    emit, BenchmarkFamily, Coupling, EmitFormat, RefinementConfig, Scheme, BASELINE_ERROR_RTOL,
    BASELINE_RATE_ATOL,
};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "fracdiff",
    version,
    about = "Fractional diffusion finite difference solvers"
)]
struct Cli {
    /// Worker threads (also via FRACDIFF_JOBS); defaults to logical cores.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve the problem described by a JSON config and write the final field.
    Solve {
        #[arg(long)]
        config: PathBuf,
        /// Output CSV path (overrides the config's `output` entry).
        #[arg(long)]
        output: Option<PathBuf>,
        /// Also write one CSV per time level into `<output stem>_history/`.
        #[arg(long)]
        dump_history: bool,
    },
    /// Run a grid-refinement study on a bundled benchmark.
    Convergence {
        #[arg(long)]
        problem: Problem,
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        beta: Option<f64>,
        #[arg(long)]
        gamma: f64,
        /// Comma-separated cell counts, strictly increasing, each >= 4.
        #[arg(long, value_delimiter = ',')]
        levels: Vec<usize>,
        #[arg(long)]
        coupling: CouplingArg,
        #[arg(long)]
        scheme: SchemeArg,
        /// Report path; extension picks the format (.md for Markdown, else CSV).
        #[arg(long)]
        out: PathBuf,
    },
    /// Recompute a bundled reference table and compare cell by cell.
    Reproduce {
        #[arg(long)]
        table: u8,
        /// Directory for the per-column CSV/Markdown reports.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Fail (exit 3) if any cell drifts beyond the gate tolerances.
        #[arg(long)]
        gate: bool,
    },
    /// Evaluate the explicit-scheme stability bound for a config.
    Stability {
        #[arg(long)]
        config: PathBuf,
    },
    /// Print a coefficient table as CSV.
    DumpCoefficients {
        /// Fractional order (time order when --what caputo).
        #[arg(long)]
        nu: f64,
        /// Cell count (weight count when --what caputo).
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "g")]
        what: Table,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Problem {
    Bench1d,
    Bench2d,
}

#[derive(Clone, Copy, ValueEnum)]
enum CouplingArg {
    TauEqDx,
    TauEqDxPow,
}

#[derive(Clone, Copy, ValueEnum)]
enum SchemeArg {
    Implicit,
    Explicit,
}

#[derive(Clone, Copy, ValueEnum)]
enum Table {
    G,
    P,
    Q,
    Caputo,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let jobs = cli.jobs.or_else(|| {
        std::env::var("FRACDIFF_JOBS")
            .ok()
            .and_then(|v| v.parse().ok())
    });
    if let Some(jobs) = jobs {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build_global();
    }
    match run(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {}: {err}", err.category());
            match err {
                Error::SingularMatrix { .. } | Error::NonFinite { .. } => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}

fn run(command: Command) -> Result<ExitCode, Error> {
    match command {
        Command::Solve {
            config,
            output,
            dump_history,
        } => solve(&config, output, dump_history),
        Command::Convergence {
            problem,
            alpha,
            beta,
            gamma,
            levels,
            coupling,
            scheme,
            out,
        } => convergence(problem, alpha, beta, gamma, levels, coupling, scheme, &out),
        Command::Reproduce { table, out, gate } => reproduce(table, out.as_deref(), gate),
        Command::Stability { config } => stability(&config),
        Command::DumpCoefficients { nu, n, what } => dump_coefficients(nu, n, what),
    }
}

fn solve(
    config_path: &Path,
    output: Option<PathBuf>,
    dump_history: bool,
) -> Result<ExitCode, Error> {
    let config = fracdiff::load_config(config_path)?;
    let output = output.or(config.output.clone());
    let scheme = config.scheme;
    if config.dimension == 1 {
        let spec = config.to_problem_1d()?;
        if scheme == Scheme::Explicit {
            warn_if_unstable_1d(&spec);
        }
        let result = match scheme {
            Scheme::Implicit => fracdiff::solve_implicit_1d(&spec)?,
            Scheme::Explicit => fracdiff::solve_explicit_1d(&spec)?,
        };
        if let Some(path) = &output {
            std::fs::write(path, field_csv_1d(&spec, &result.final_field))?;
            println!("final field written to {}", path.display());
            if dump_history {
                let dir = history_dir(path)?;
                for (k, level) in result.history.levels.iter().enumerate() {
                    std::fs::write(
                        dir.join(format!("step_{k:05}.csv")),
                        field_csv_1d(&spec, level),
                    )?;
                }
                println!(
                    "history ({} levels) written to {}",
                    result.history.levels.len(),
                    dir.display()
                );
            }
        }
        if let Some(exact) = &spec.exact {
            let err = max_error_1d(&result.final_field, &spec.grid, exact, spec.time.t_final);
            println!("max error at t = {}: {:.4e}", spec.time.t_final, err);
        }
    } else {
        let spec = config.to_problem_2d()?;
        if scheme == Scheme::Explicit {
            warn_if_unstable_2d(&spec);
        }
        let result = match scheme {
            Scheme::Implicit => fracdiff::solve_implicit_2d(&spec)?,
            Scheme::Explicit => fracdiff::solve_explicit_2d(&spec)?,
        };
        if let Some(path) = &output {
            std::fs::write(path, field_csv_2d(&spec, &result.final_field))?;
            println!("final field written to {}", path.display());
            if dump_history {
                let dir = history_dir(path)?;
                for (k, level) in result.history.levels.iter().enumerate() {
                    std::fs::write(
                        dir.join(format!("step_{k:05}.csv")),
                        field_csv_2d(&spec, level),
                    )?;
                }
                println!(
                    "history ({} levels) written to {}",
                    result.history.levels.len(),
                    dir.display()
                );
            }
        }
        if let Some(exact) = &spec.exact {
            let err = max_error_2d(&result.final_field, &spec.grid, exact, spec.time.t_final);
            println!("max error at t = {}: {:.4e}", spec.time.t_final, err);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn warn_if_unstable_1d(spec: &fracdiff::ProblemSpec1D) {
    match fracdiff::explicit_bound_1d(spec) {
        Ok(report) if !report.satisfied => eprintln!(
            "warning: explicit step-size ratio {:.4e} exceeds the sufficient stability bound {:.4e}",
            report.actual, report.bound
        ),
        _ => {}
    }
}

fn warn_if_unstable_2d(spec: &fracdiff::ProblemSpec2D) {
    match fracdiff::explicit_bound_2d(spec) {
        Ok(report) if !report.satisfied => eprintln!(
            "warning: explicit step-size ratio {:.4e} exceeds the sufficient stability bound {:.4e}",
            report.actual, report.bound
        ),
        _ => {}
    }
}

fn history_dir(output: &Path) -> Result<PathBuf, Error> {
    let stem = output.file_stem().unwrap_or_default().to_string_lossy();
    let dir = output.with_file_name(format!("{stem}_history"));
    std::fs::create_dir_all(&dir)?;
    Ok(dir)
}

fn field_csv_1d(spec: &fracdiff::ProblemSpec1D, field: &fracdiff::Field1D) -> String {
    let mut out = format!("# t = {}\nx,u\n", field.time_label);
    for (i, v) in field.values.iter().enumerate() {
        let _ = writeln!(out, "{},{}", spec.grid.node(i), v);
    }
    out
}

fn field_csv_2d(spec: &fracdiff::ProblemSpec2D, field: &fracdiff::Field2D) -> String {
    let mut out = format!("# t = {}\nx,y,u\n", field.time_label);
    for i in 0..=field.nx {
        let x = spec.grid.x.node(i);
        for j in 0..=field.ny {
            let _ = writeln!(out, "{},{},{}", x, spec.grid.y.node(j), field.get(i, j));
        }
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn convergence(
    problem: Problem,
    alpha: f64,
    beta: Option<f64>,
    gamma: f64,
    levels: Vec<usize>,
    coupling: CouplingArg,
    scheme: SchemeArg,
    out: &Path,
) -> Result<ExitCode, Error> {
    let family = match problem {
        Problem::Bench1d => BenchmarkFamily::Bench1D { alpha, gamma },
        Problem::Bench2d => BenchmarkFamily::Bench2D {
            alpha,
            beta: beta.ok_or_else(|| Error::Schema("--beta is required for bench2d".into()))?,
            gamma,
        },
    };
    let config = RefinementConfig {
        family,
        levels,
        coupling: match coupling {
            CouplingArg::TauEqDx => Coupling::TauEqDx,
            CouplingArg::TauEqDxPow => Coupling::TauEqDxPow,
        },
        scheme: match scheme {
            SchemeArg::Implicit => Scheme::Implicit,
            SchemeArg::Explicit => Scheme::Explicit,
        },
    };
    let report = fracdiff::run_refinement(&config)?;
    let format = if out.extension().is_some_and(|e| e == "md") {
        EmitFormat::Markdown
    } else {
        EmitFormat::Csv
    };
    emit(&report, format, out)?;
    println!("{}", report.render(EmitFormat::Markdown));
    println!("report written to {}", out.display());
    Ok(ExitCode::SUCCESS)
}

fn reproduce(table: u8, out: Option<&Path>, gate: bool) -> Result<ExitCode, Error> {
    let reports = fracdiff::reproduce_table(table)?;
    if let Some(dir) = out {
        std::fs::create_dir_all(dir)?;
    }
    let mut all_pass = true;
    for report in &reports {
        let (alpha, beta, gamma) = match report.config.family {
            BenchmarkFamily::Bench1D { alpha, gamma } => (alpha, None, gamma),
            BenchmarkFamily::Bench2D { alpha, beta, gamma } => (alpha, Some(beta), gamma),
        };
        let mut name = format!("table{table}_a{alpha}");
        if let Some(beta) = beta {
            let _ = write!(name, "_b{beta}");
        }
        let _ = write!(name, "_g{gamma}");
        if let Some(dir) = out {
            emit(report, EmitFormat::Csv, &dir.join(format!("{name}.csv")))?;
            emit(
                report,
                EmitFormat::Markdown,
                &dir.join(format!("{name}.md")),
            )?;
        }
        let pass = report.passes_gate();
        all_pass &= pass;
        println!(
            "{name}: worst error diff {} (tol {BASELINE_ERROR_RTOL}), worst rate diff {} (tol {BASELINE_RATE_ATOL}) -> {}",
            report
                .worst_error_rel_diff()
                .map_or("n/a".to_string(), |d| format!("{d:.4e}")),
            report
                .worst_rate_diff()
                .map_or("n/a".to_string(), |d| format!("{d:.4}")),
            if pass { "ok" } else { "MISMATCH" }
        );
    }
    if gate && !all_pass {
        eprintln!("error: gate: table {table} drifted beyond the reference tolerances");
        return Ok(ExitCode::from(3));
    }
    Ok(ExitCode::SUCCESS)
}

fn stability(config_path: &Path) -> Result<ExitCode, Error> {
    let config = fracdiff::load_config(config_path)?;
    let report = if config.dimension == 1 {
        fracdiff::explicit_bound_1d(&config.to_problem_1d()?)?
    } else {
        fracdiff::explicit_bound_2d(&config.to_problem_2d()?)?
    };
    println!("{}", report.render());
    println!("csv: scheme,actual,bound,c_max,satisfied");
    println!("csv: {}", report.csv_row());
    Ok(ExitCode::SUCCESS)
}

fn dump_coefficients(nu: f64, n: usize, what: Table) -> Result<ExitCode, Error> {
    match what {
        Table::Caputo => {
            let weights = fracdiff::caputo_weights(nu, n)?;
            println!("s,l");
            for (s, l) in weights.weights().iter().enumerate() {
                println!("{s},{l}");
            }
        }
        Table::G | Table::P | Table::Q => {
            print!("i");
            for m in 0..=n {
                print!(",m{m}");
            }
            println!();
            for i in 1..n {
                let row = match what {
                    Table::G => fracdiff::riesz_row(nu, i, n)?.weights,
                    Table::P => fracdiff::left_rl_row(nu, i, n)?,
                    Table::Q => fracdiff::right_rl_row(nu, i, n)?,
                    Table::Caputo => unreachable!(),
                };
                print!("{i}");
                for v in row {
                    print!(",{v}");
                }
                println!();
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}
