//! Recompute one of the bundled reference tables and compare cell by cell.
//!
//!     cargo run --example reproduce_tables -- [1|2|3]
//!
//! Table 1 takes a few seconds, table 3 about a minute on two cores.

use fracdiff::verification::{BASELINE_ERROR_RTOL, BASELINE_RATE_ATOL};
use fracdiff::{reproduce_table, EmitFormat};

fn main() -> fracdiff::Result<()> {
    let id: u8 = std::env::args()
        .nth(1)
        .map(|a| a.parse().expect("table id must be 1, 2 or 3"))
        .unwrap_or(1);
    let reports = reproduce_table(id)?;
    let mut all_ok = true;
    for report in &reports {
        println!("{}", report.render(EmitFormat::Markdown));
        let ok = report.passes_gate();
        all_ok &= ok;
        println!(
            "worst error diff {:.3e} (tol {BASELINE_ERROR_RTOL}), worst rate diff {:.4} (tol {BASELINE_RATE_ATOL}) -> {}\n",
            report.worst_error_rel_diff().unwrap_or(f64::NAN),
            report.worst_rate_diff().unwrap_or(f64::NAN),
            if ok { "ok" } else { "MISMATCH" }
        );
    }
    println!(
        "table {id}: {}",
        if all_ok {
            "all cells within tolerance"
        } else {
            "some cells drifted"
        }
    );
    Ok(())
}
