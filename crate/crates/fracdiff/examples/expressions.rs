//! The expression language used in config files: parse, evaluate,
//! round-trip.
//!
//!     cargo run --example expressions

use fracdiff::parse;

fn main() -> fracdiff::Result<()> {
    let sources = [
        "2 + 3*4",
        "x^2 * (1-x)^2",
        "-x^2",
        "pow(0.5, 2.9)",
        "tgamma(3.9) * t^2",
        "sin(pi * x) * exp(-t)",
    ];
    for src in sources {
        let expr = parse(src)?;
        let value = expr.eval(0.5, 0.0, 0.25)?;
        println!("{src:<24} -> {expr:<28} = {value:.6} at (x=0.5, t=0.25)");
    }

    // Errors carry byte offsets and name the offending identifier.
    for bad in ["x^", "2 + unknown_var", "pow(1)"] {
        match parse(bad) {
            Err(e) => println!("{bad:<24} -> error: {}: {e}", e.category()),
            Ok(_) => unreachable!(),
        }
    }
    Ok(())
}
