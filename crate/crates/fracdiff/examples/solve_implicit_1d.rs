//! Solve the bundled 1D benchmark with the implicit scheme and measure the
//! error against its exact solution.
//!
//!     cargo run --example solve_implicit_1d

use fracdiff::{benchmark_1d, max_error_1d, solve_implicit_1d};

fn main() -> fracdiff::Result<()> {
    // Orders: gamma in time, alpha in space; tau = dx = 1/40.
    let (alpha, gamma) = (1.2, 0.9);
    let spec = benchmark_1d(alpha, gamma, 40, 20)?;
    let result = solve_implicit_1d(&spec)?;

    let exact = spec.exact.clone().expect("benchmark has an exact solution");
    let err = max_error_1d(&result.final_field, &spec.grid, &exact, spec.time.t_final);
    println!("alpha = {alpha}, gamma = {gamma}, dx = tau = 1/40");
    println!("max error at t = 1/2: {err:.4e} (reference value 3.1438e-4)");

    println!("\n  x        computed     exact");
    for i in (0..=40).step_by(5) {
        let x = spec.grid.node(i);
        println!(
            "  {:<8} {:<12.6e} {:.6e}",
            x,
            result.final_field.values[i],
            exact(x, 0.5)
        );
    }
    Ok(())
}
