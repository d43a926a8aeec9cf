//! Sufficient stability bounds for the explicit schemes.
//!
//! The explicit update stays sup-norm stable as long as the diagonal
//! update weight `1 - l_1 + sigma g_ii` stays nonnegative, which caps
//! `tau^gamma / dx^alpha` (plus the y term in 2D) by a constant built from
//! the orders and the largest coefficient value over the grid/time nodes.
//! The bounds are sufficient, not necessary: violating one produces a
//! warning-grade report, never a refusal.

use crate::coefficients::kappa;
use crate::error::{Error, Result};
use crate::problem::{ProblemSpec1D, ProblemSpec2D};
use crate::special::gamma_fn;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SchemeKind {
    Explicit1D,
    Explicit2D,
}

impl fmt::Display for SchemeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SchemeKind::Explicit1D => write!(f, "explicit-1d"),
            SchemeKind::Explicit2D => write!(f, "explicit-2d"),
        }
    }
}

/// Outcome of evaluating an explicit-scheme stability bound.
///
/// `actual` is the step-size ratio the spec implies
/// (`tau^gamma / dx^alpha`, plus `tau^gamma / dy^beta` in 2D) and `bound`
/// the largest admissible value; `c_max` is the coefficient maximum the
/// bound was built from. A coefficient that vanishes everywhere removes
/// the spatial coupling entirely, reported as an infinite bound.
#[derive(Debug, Clone)]
pub struct StabilityReport {
    pub scheme: SchemeKind,
    pub bound: f64,
    pub actual: f64,
    pub satisfied: bool,
    pub c_max: f64,
}

impl StabilityReport {
    pub fn render(&self) -> String {
        format!(
            "scheme:    {}\n\
             actual:    {:.6e}\n\
             bound:     {:.6e}\n\
             c_max:     {:.6e}\n\
             satisfied: {}",
            self.scheme, self.actual, self.bound, self.c_max, self.satisfied
        )
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},{:.17e},{:.17e},{:.17e},{}",
            self.scheme, self.actual, self.bound, self.c_max, self.satisfied
        )
    }
}

fn require_superdiffusive(nu: f64, name: &str) -> Result<()> {
    if !(nu > 1.0 && nu <= 2.0) {
        return Err(Error::Domain(format!(
            "the explicit stability bound requires {name} in (1, 2], got {nu}"
        )));
    }
    Ok(())
}

/// Largest value of the 1D coefficient over all grid and time nodes.
fn c_max_1d(spec: &ProblemSpec1D) -> f64 {
    let mut worst = 0.0f64;
    for k in 0..=spec.time.n_steps {
        let t = spec.time.node(k);
        for x in spec.grid.nodes() {
            worst = worst.max((spec.c)(x, t));
        }
    }
    worst
}

/// tau^gamma / dx^alpha <= -Gamma(4-a)(1 - 2^-g) / (4 kappa_a C Gamma(2-g)(1 - 2^(1-a))).
pub fn explicit_bound_1d(spec: &ProblemSpec1D) -> Result<StabilityReport> {
    require_superdiffusive(spec.alpha, "alpha")?;
    let c_max = c_max_1d(spec);
    let actual = spec.time.tau().powf(spec.gamma) / spec.grid.dx().powf(spec.alpha);
    let bound = if c_max == 0.0 {
        f64::INFINITY
    } else {
        let numer = -gamma_fn(4.0 - spec.alpha)? * (1.0 - 2f64.powf(-spec.gamma));
        let denom = 4.0
            * kappa(spec.alpha)?
            * c_max
            * gamma_fn(2.0 - spec.gamma)?
            * (1.0 - 2f64.powf(1.0 - spec.alpha));
        numer / denom
    };
    Ok(StabilityReport {
        scheme: SchemeKind::Explicit1D,
        bound,
        actual,
        satisfied: actual <= bound,
        c_max,
    })
}

/// The bracketed coefficient maximum of the 2D bound:
/// max over nodes of { -kappa_a (4 - 2^(3-a)) c / Gamma(4-a),
///                     -kappa_b (4 - 2^(3-b)) d / Gamma(4-b) }.
pub fn bracket_max_2d(spec: &ProblemSpec2D) -> Result<f64> {
    let fx =
        -kappa(spec.alpha)? * (4.0 - 2f64.powf(3.0 - spec.alpha)) / gamma_fn(4.0 - spec.alpha)?;
    let fy = -kappa(spec.beta)? * (4.0 - 2f64.powf(3.0 - spec.beta)) / gamma_fn(4.0 - spec.beta)?;
    let mut worst = f64::NEG_INFINITY;
    for k in 0..=spec.time.n_steps {
        let t = spec.time.node(k);
        for x in spec.grid.x.nodes() {
            for y in spec.grid.y.nodes() {
                worst = worst.max(fx * (spec.c)(x, y, t));
                worst = worst.max(fy * (spec.d)(x, y, t));
            }
        }
    }
    Ok(worst)
}

/// tau^gamma/dx^alpha + tau^gamma/dy^beta <= (1 - 2^-gamma) / (Gamma(2-gamma) C).
pub fn explicit_bound_2d(spec: &ProblemSpec2D) -> Result<StabilityReport> {
    require_superdiffusive(spec.alpha, "alpha")?;
    require_superdiffusive(spec.beta, "beta")?;
    let c_max = bracket_max_2d(spec)?;
    let tau_g = spec.time.tau().powf(spec.gamma);
    let actual =
        tau_g / spec.grid.x.dx().powf(spec.alpha) + tau_g / spec.grid.y.dx().powf(spec.beta);
    let bound = if c_max == 0.0 {
        f64::INFINITY
    } else {
        (1.0 - 2f64.powf(-spec.gamma)) / (gamma_fn(2.0 - spec.gamma)? * c_max)
    };
    Ok(StabilityReport {
        scheme: SchemeKind::Explicit2D,
        bound,
        actual,
        satisfied: actual <= bound,
        c_max,
    })
}
