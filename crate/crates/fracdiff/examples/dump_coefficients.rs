//! Inspect the discrete coefficient tables: the combined spatial rows, the
//! classical limit at order 2, and the time-memory weights.
//!
//!     cargo run --example dump_coefficients

use fracdiff::{assemble_riesz_operator, caputo_weights, kappa, riesz_row};

fn main() -> fracdiff::Result<()> {
    let n = 8;

    println!("combined row weights g[i][m], nu = 1.5, {n} cells:");
    for i in 1..n {
        let row = riesz_row(1.5, i, n)?;
        let cells: Vec<String> = row.weights.iter().map(|v| format!("{v:>8.4}")).collect();
        println!(
            "  i={i}: [{}]  (sum {:+.4})",
            cells.join(" "),
            row.weights.iter().sum::<f64>()
        );
    }

    println!(
        "\nkappa(1.5) = {:.6}, kappa(0.5) = {:.6}",
        kappa(1.5)?,
        kappa(0.5)?
    );

    println!("\nscaled operator at nu = 2 reduces to (1, -2, 1)/h^2:");
    let op = assemble_riesz_operator(2.0, 4, 0.25)?;
    for i in 1..4 {
        let row: Vec<String> = (0..=4)
            .map(|m| format!("{:>6.1}", op.matrix.get(i, m)))
            .collect();
        println!("  row {i}: [{}]", row.join(" "));
    }

    println!("\ntime-memory weights l_s, gamma = 0.5:");
    let w = caputo_weights(0.5, 8)?;
    for (s, l) in w.weights().iter().enumerate() {
        println!("  l_{s} = {l:.6}");
    }
    Ok(())
}
