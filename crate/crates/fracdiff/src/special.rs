//! Gamma function.
//!
//! The coefficient tables and the manufactured benchmarks need Gamma at
//! arguments like 4 - nu, 2 - gamma and 3 + gamma, all positive and well
//! below 20. A Lanczos approximation (g = 7, 9 terms) with the reflection
//! formula for small arguments delivers better than 1e-13 relative accuracy
//! on that range.

use crate::error::{Error, Result};
use std::f64::consts::PI;

const LANCZOS_G: f64 = 7.0;
#[allow(clippy::excessive_precision)]
const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Gamma(z) for z > 0.
///
/// Returns a domain error for z <= 0 (the schemes never need the poles).
pub fn gamma_fn(z: f64) -> Result<f64> {
    if !z.is_finite() || z <= 0.0 {
        return Err(Error::Domain(format!(
            "gamma_fn requires a positive argument, got {z}"
        )));
    }
    Ok(lanczos(z))
}

fn lanczos(z: f64) -> f64 {
    if z < 0.5 {
        // Reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z).
        PI / ((PI * z).sin() * lanczos(1.0 - z))
    } else {
        let z = z - 1.0;
        let mut acc = LANCZOS_COEF[0];
        for (i, c) in LANCZOS_COEF.iter().enumerate().skip(1) {
            acc += c / (z + i as f64);
        }
        let t = z + LANCZOS_G + 0.5;
        (2.0 * PI).sqrt() * t.powf(z + 0.5) * (-t).exp() * acc
    }
}
