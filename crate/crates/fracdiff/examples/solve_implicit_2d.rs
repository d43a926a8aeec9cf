//! Solve the bundled 2D benchmark with the implicit scheme.
//!
//!     cargo run --example solve_implicit_2d

use fracdiff::{benchmark_2d, max_error_2d, solve_implicit_2d};

fn main() -> fracdiff::Result<()> {
    let (alpha, beta, gamma) = (1.2, 1.3, 0.9);
    let spec = benchmark_2d(alpha, beta, gamma, 10, 5)?;
    let result = solve_implicit_2d(&spec)?;

    let exact = spec.exact.clone().expect("benchmark has an exact solution");
    let err = max_error_2d(&result.final_field, &spec.grid, &exact, spec.time.t_final);
    println!("alpha = {alpha}, beta = {beta}, gamma = {gamma}, dx = dy = tau = 1/10");
    println!("max error at t = 1/2: {err:.4e} (reference value 7.7867e-5)");
    println!(
        "worst linear-solve residual: {:.2e}",
        result
            .diagnostics
            .solve_residuals
            .iter()
            .fold(0.0f64, |a, &b| a.max(b))
    );

    println!("\nfinal field along the diagonal:");
    for i in 0..=10 {
        let x = spec.grid.x.node(i);
        println!("  u({x:.1}, {x:.1}) = {:.6e}", result.final_field.get(i, i));
    }
    Ok(())
}
