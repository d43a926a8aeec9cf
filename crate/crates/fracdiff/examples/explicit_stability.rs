//! The explicit scheme's step-size bound in action: evaluate the bound,
//! run safely inside it, then push far beyond it and watch the field
//! blow up.
//!
//!     cargo run --example explicit_stability

use fracdiff::{benchmark_1d, explicit_bound_1d, max_error_1d, solve_explicit_1d, Error};

fn main() -> fracdiff::Result<()> {
    let n = 32;
    let dx = 1.0 / n as f64;

    // Inside the bound: stable, converging run (gamma = 0.9, alpha = 1.2).
    let (alpha, gamma) = (1.2, 0.9);
    let probe = benchmark_1d(alpha, gamma, n, 8)?;
    let bound = explicit_bound_1d(&probe)?.bound;
    println!("sufficient bound on tau^gamma/dx^alpha: {bound:.4}\n");
    let tau_safe = (0.8 * bound * dx.powf(alpha)).powf(1.0 / gamma);
    let n_steps = (0.5 / tau_safe).ceil() as usize;
    let spec = benchmark_1d(alpha, gamma, n, n_steps)?;
    let report = explicit_bound_1d(&spec)?;
    println!("{}\n", report.render());
    let result = solve_explicit_1d(&spec)?;
    let exact = spec.exact.clone().unwrap();
    println!(
        "stable run ({n_steps} steps): max error {:.4e}\n",
        max_error_1d(&result.final_field, &spec.grid, &exact, 0.5)
    );

    // 50x beyond the bound: the field grows without control
    // (gamma = 0.5, alpha = 1.5 blows up within a dozen steps).
    let (alpha, gamma) = (1.5, 0.5);
    let probe = benchmark_1d(alpha, gamma, n, 8)?;
    let bound = explicit_bound_1d(&probe)?.bound;
    let tau_wild = (50.0 * bound * dx.powf(alpha)).powf(1.0 / gamma);
    let n_steps = ((0.5 / tau_wild).ceil() as usize).max(2);
    let spec = benchmark_1d(alpha, gamma, n, n_steps)?;
    let report = explicit_bound_1d(&spec)?;
    println!(
        "50x the bound (ratio {:.3} vs {:.3}):",
        report.actual, report.bound
    );
    match solve_explicit_1d(&spec) {
        Ok(result) => {
            for (k, m) in result.diagnostics.max_abs.iter().enumerate() {
                println!("  step {k:>2}: max |u| = {m:.3e}");
            }
        }
        Err(Error::NonFinite { step }) => {
            println!("  field became non-finite at step {step}");
        }
        Err(other) => return Err(other),
    }
    Ok(())
}
