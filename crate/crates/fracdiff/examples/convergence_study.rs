//! Grid-refinement study on the 1D benchmark: errors and observed orders
//! under the two step-size couplings.
//!
//!     cargo run --example convergence_study

use fracdiff::{run_refinement, BenchmarkFamily, Coupling, EmitFormat, RefinementConfig, Scheme};

fn main() -> fracdiff::Result<()> {
    // tau = dx: the time error dominates, observed order 2 - gamma.
    let config = RefinementConfig {
        family: BenchmarkFamily::Bench1D {
            alpha: 1.5,
            gamma: 0.5,
        },
        levels: vec![16, 32, 64, 128],
        coupling: Coupling::TauEqDx,
        scheme: Scheme::Implicit,
    };
    println!("{}", run_refinement(&config)?.render(EmitFormat::Markdown));

    // tau = dx^(2/(2-gamma)): both error components shrink at order 2 in dx.
    let config = RefinementConfig {
        coupling: Coupling::TauEqDxPow,
        levels: vec![8, 16, 32],
        ..config
    };
    println!("{}", run_refinement(&config)?.render(EmitFormat::Markdown));
    Ok(())
}
