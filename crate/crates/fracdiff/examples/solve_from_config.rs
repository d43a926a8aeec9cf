//! Drive a solve from a JSON config file, the same path the CLI uses.
//!
//!     cargo run --example solve_from_config -- [path/to/config.json]

use fracdiff::{load_config, max_error_1d, solve_implicit_1d};
use std::path::PathBuf;

fn main() -> fracdiff::Result<()> {
    let path = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| {
            PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples/configs/table1_a12_g09.json")
        });
    println!("loading {}", path.display());
    let config = load_config(&path)?;
    let spec = config.to_problem_1d()?;
    let result = solve_implicit_1d(&spec)?;
    println!(
        "solved {} steps on {} cells; final max |u| = {:.4e}",
        spec.time.n_steps,
        spec.grid.n_cells,
        result.final_field.max_abs()
    );
    if let Some(exact) = &spec.exact {
        let err = max_error_1d(&result.final_field, &spec.grid, exact, spec.time.t_final);
        println!("max error vs exact solution: {err:.4e}");
    }
    Ok(())
}
