//! JSON run configurations.
//!
//! A config describes one solve: the domain, the orders, the grids, the
//! scheme, and the data functions as expression strings in x, y, t. The
//! schema is strict — unknown keys anywhere are errors, so a misspelled
//! `beta` cannot be silently ignored.
//!
//! ```json
//! {
//!   "dimension": 1,
//!   "domain": { "x": [0.0, 1.0] },
//!   "T": 0.5,
//!   "orders": { "gamma": 0.9, "alpha": 1.2 },
//!   "grid": { "nx": 40, "nt": 20 },
//!   "scheme": "implicit",
//!   "coefficients": { "c": "x^1.2 * t^0.1" },
//!   "source": "0",
//!   "initial": "0",
//!   "boundary": { "left": "0", "right": "0" },
//!   "exact": "t^2.9 * x^2 * (1-x)^2",
//!   "output": "field.csv"
//! }
//! ```
//!
//! Two-dimensional configs add `domain.y`, `grid.ny`, `orders.beta`,
//! `coefficients.d`, and give `boundary` as a single expression of
//! (x, y, t) instead of left/right sides.

use crate::error::{Error, Result};
use crate::expression::{parse, Expr};
use crate::problem::{
    Grid1D, Grid2D, ProblemSpec1D, ProblemSpec2D, SpaceFn, SpaceFn2, SpaceTimeFn, SpaceTimeFn2,
    TimeFn, TimeGrid,
};
use crate::verification::Scheme;
use serde::Deserialize;
use std::path::{Path, PathBuf};
use std::sync::Arc;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    dimension: u8,
    domain: RawDomain,
    #[serde(rename = "T")]
    t_final: f64,
    orders: RawOrders,
    grid: RawGrid,
    scheme: String,
    coefficients: RawCoefficients,
    source: String,
    initial: String,
    boundary: RawBoundary,
    #[serde(default)]
    exact: Option<String>,
    #[serde(default)]
    output: Option<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDomain {
    x: [f64; 2],
    #[serde(default)]
    y: Option<[f64; 2]>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawOrders {
    gamma: f64,
    alpha: f64,
    #[serde(default)]
    beta: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGrid {
    nx: usize,
    #[serde(default)]
    ny: Option<usize>,
    nt: usize,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCoefficients {
    c: String,
    #[serde(default)]
    d: Option<String>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum RawBoundary {
    /// One expression of (x, y, t) applied on the whole boundary.
    Uniform(String),
    /// Separate left/right expressions of t (1D only).
    Sides { left: String, right: String },
}

/// A validated run configuration with all expressions parsed.
pub struct RunConfig {
    pub dimension: u8,
    pub x_bounds: [f64; 2],
    pub y_bounds: Option<[f64; 2]>,
    pub t_final: f64,
    pub gamma: f64,
    pub alpha: f64,
    pub beta: Option<f64>,
    pub nx: usize,
    pub ny: Option<usize>,
    pub nt: usize,
    pub scheme: Scheme,
    pub c: Expr,
    pub d: Option<Expr>,
    pub source: Expr,
    pub initial: Expr,
    pub boundary: ParsedBoundary,
    pub exact: Option<Expr>,
    pub output: Option<PathBuf>,
}

pub enum ParsedBoundary {
    Uniform(Expr),
    Sides { left: Expr, right: Expr },
}

fn parse_field(name: &str, source: &str) -> Result<Expr> {
    parse(source).map_err(|e| Error::Schema(format!("{name}: {e} (expression `{source}`)")))
}

fn check_range(name: &str, value: f64, lo: f64, hi: f64) -> Result<()> {
    if !(value.is_finite() && value > lo && value <= hi) {
        return Err(Error::Schema(format!(
            "{name}: must lie in ({lo}, {hi}], got {value}"
        )));
    }
    Ok(())
}

/// Loads and validates a config file.
pub fn load_config(path: &Path) -> Result<RunConfig> {
    let text = std::fs::read_to_string(path)?;
    let raw: RawConfig = serde_json::from_str(&text)
        .map_err(|e| Error::Schema(format!("{}: {e}", path.display())))?;

    if raw.dimension != 1 && raw.dimension != 2 {
        return Err(Error::Schema(format!(
            "dimension: must be 1 or 2, got {}",
            raw.dimension
        )));
    }
    check_range("orders.gamma", raw.orders.gamma, 0.0, 1.0)?;
    check_range("orders.alpha", raw.orders.alpha, 0.0, 2.0)?;
    let scheme = match raw.scheme.as_str() {
        "implicit" => Scheme::Implicit,
        "explicit" => Scheme::Explicit,
        other => {
            return Err(Error::Schema(format!(
                "scheme: must be `implicit` or `explicit`, got `{other}`"
            )))
        }
    };
    if raw.t_final <= 0.0 || !raw.t_final.is_finite() {
        return Err(Error::Schema(format!(
            "T: must be positive, got {}",
            raw.t_final
        )));
    }
    if raw.grid.nx < 3 {
        return Err(Error::Schema(format!(
            "grid.nx: needs at least 3 cells, got {}",
            raw.grid.nx
        )));
    }
    if raw.grid.nt < 1 {
        return Err(Error::Schema("grid.nt: needs at least 1 step".to_string()));
    }

    let (y_bounds, beta, ny, d) = if raw.dimension == 2 {
        let y = raw
            .domain
            .y
            .ok_or_else(|| Error::Schema("domain.y: required when dimension = 2".into()))?;
        let beta = raw
            .orders
            .beta
            .ok_or_else(|| Error::Schema("orders.beta: required when dimension = 2".into()))?;
        check_range("orders.beta", beta, 0.0, 2.0)?;
        let ny = raw
            .grid
            .ny
            .ok_or_else(|| Error::Schema("grid.ny: required when dimension = 2".into()))?;
        if ny < 3 {
            return Err(Error::Schema(format!(
                "grid.ny: needs at least 3 cells, got {ny}"
            )));
        }
        let d =
            raw.coefficients.d.as_deref().ok_or_else(|| {
                Error::Schema("coefficients.d: required when dimension = 2".into())
            })?;
        (
            Some(y),
            Some(beta),
            Some(ny),
            Some(parse_field("coefficients.d", d)?),
        )
    } else {
        if raw.domain.y.is_some() {
            return Err(Error::Schema(
                "domain.y: only valid when dimension = 2".into(),
            ));
        }
        if raw.orders.beta.is_some() {
            return Err(Error::Schema(
                "orders.beta: only valid when dimension = 2".into(),
            ));
        }
        if raw.grid.ny.is_some() {
            return Err(Error::Schema(
                "grid.ny: only valid when dimension = 2".into(),
            ));
        }
        if raw.coefficients.d.is_some() {
            return Err(Error::Schema(
                "coefficients.d: only valid when dimension = 2".into(),
            ));
        }
        (None, None, None, None)
    };

    let boundary = match (&raw.boundary, raw.dimension) {
        (RawBoundary::Uniform(src), _) => ParsedBoundary::Uniform(parse_field("boundary", src)?),
        (RawBoundary::Sides { left, right }, 1) => ParsedBoundary::Sides {
            left: parse_field("boundary.left", left)?,
            right: parse_field("boundary.right", right)?,
        },
        (RawBoundary::Sides { .. }, _) => {
            return Err(Error::Schema(
                "boundary: left/right form is only valid when dimension = 1".into(),
            ))
        }
    };

    Ok(RunConfig {
        dimension: raw.dimension,
        x_bounds: raw.domain.x,
        y_bounds,
        t_final: raw.t_final,
        gamma: raw.orders.gamma,
        alpha: raw.orders.alpha,
        beta,
        nx: raw.grid.nx,
        ny,
        nt: raw.grid.nt,
        scheme,
        c: parse_field("coefficients.c", &raw.coefficients.c)?,
        d,
        source: parse_field("source", &raw.source)?,
        initial: parse_field("initial", &raw.initial)?,
        boundary,
        exact: raw
            .exact
            .as_deref()
            .map(|s| parse_field("exact", s))
            .transpose()?,
        output: raw.output.map(PathBuf::from),
    })
}

/// Expression-backed closure of (x, t); evaluation failures surface as NaN
/// and are caught by the solvers' finiteness checks.
fn space_time_fn(expr: Expr) -> SpaceTimeFn {
    Arc::new(move |x, t| expr.eval(x, 0.0, t).unwrap_or(f64::NAN))
}

fn space_time_fn2(expr: Expr) -> SpaceTimeFn2 {
    Arc::new(move |x, y, t| expr.eval(x, y, t).unwrap_or(f64::NAN))
}

impl RunConfig {
    pub fn to_problem_1d(&self) -> Result<ProblemSpec1D> {
        if self.dimension != 1 {
            return Err(Error::Schema("config is not one-dimensional".into()));
        }
        let grid = Grid1D::new(self.x_bounds[0], self.x_bounds[1], self.nx)?;
        let time = TimeGrid::new(self.t_final, self.nt)?;
        let initial = self.initial.clone();
        let u0: SpaceFn = Arc::new(move |x| initial.eval(x, 0.0, 0.0).unwrap_or(f64::NAN));
        let (left, right): (TimeFn, TimeFn) = match &self.boundary {
            ParsedBoundary::Uniform(expr) => {
                let (xl, xr) = (self.x_bounds[0], self.x_bounds[1]);
                let el = expr.clone();
                let er = expr.clone();
                (
                    Arc::new(move |t| el.eval(xl, 0.0, t).unwrap_or(f64::NAN)),
                    Arc::new(move |t| er.eval(xr, 0.0, t).unwrap_or(f64::NAN)),
                )
            }
            ParsedBoundary::Sides { left, right } => {
                let el = left.clone();
                let er = right.clone();
                (
                    Arc::new(move |t| el.eval(0.0, 0.0, t).unwrap_or(f64::NAN)),
                    Arc::new(move |t| er.eval(0.0, 0.0, t).unwrap_or(f64::NAN)),
                )
            }
        };
        ProblemSpec1D::new(
            grid,
            time,
            self.gamma,
            self.alpha,
            space_time_fn(self.c.clone()),
            space_time_fn(self.source.clone()),
            u0,
            left,
            right,
            self.exact.clone().map(space_time_fn),
        )
    }

    pub fn to_problem_2d(&self) -> Result<ProblemSpec2D> {
        if self.dimension != 2 {
            return Err(Error::Schema("config is not two-dimensional".into()));
        }
        let yb = self.y_bounds.expect("validated at load");
        let grid = Grid2D {
            x: Grid1D::new(self.x_bounds[0], self.x_bounds[1], self.nx)?,
            y: Grid1D::new(yb[0], yb[1], self.ny.expect("validated at load"))?,
        };
        let time = TimeGrid::new(self.t_final, self.nt)?;
        let initial = self.initial.clone();
        let u0: SpaceFn2 = Arc::new(move |x, y| initial.eval(x, y, 0.0).unwrap_or(f64::NAN));
        let boundary = match &self.boundary {
            ParsedBoundary::Uniform(expr) => space_time_fn2(expr.clone()),
            ParsedBoundary::Sides { .. } => unreachable!("rejected at load for dimension = 2"),
        };
        ProblemSpec2D::new(
            grid,
            time,
            self.gamma,
            self.alpha,
            self.beta.expect("validated at load"),
            space_time_fn2(self.c.clone()),
            space_time_fn2(self.d.clone().expect("validated at load")),
            space_time_fn2(self.source.clone()),
            u0,
            boundary,
            self.exact.clone().map(space_time_fn2),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn write_config(text: &str) -> tempfile::NamedTempFile {
        let mut file = tempfile::NamedTempFile::new().unwrap();
        file.write_all(text.as_bytes()).unwrap();
        file
    }

    const MINIMAL_1D: &str = r#"{
        "dimension": 1,
        "domain": { "x": [0.0, 1.0] },
        "T": 0.5,
        "orders": { "gamma": 0.9, "alpha": 1.2 },
        "grid": { "nx": 8, "nt": 4 },
        "scheme": "implicit",
        "coefficients": { "c": "0" },
        "source": "0",
        "initial": "0",
        "boundary": { "left": "0", "right": "0" }
    }"#;

    #[test]
    fn minimal_config_loads_and_solves_to_zero() {
        let file = write_config(MINIMAL_1D);
        let config = load_config(file.path()).unwrap();
        let spec = config.to_problem_1d().unwrap();
        let result = crate::solver1d::solve_implicit_1d(&spec).unwrap();
        assert!(result.final_field.values.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let text = MINIMAL_1D.replace("\"source\"", "\"sorce\"");
        let file = write_config(&text);
        match load_config(file.path()) {
            Err(Error::Schema(msg)) => assert!(msg.contains("sorce") || msg.contains("unknown")),
            other => panic!("expected schema error, got {:?}", other.map(|_| ())),
        }
    }

    #[test]
    fn gamma_out_of_range_names_the_key() {
        let text = MINIMAL_1D.replace("\"gamma\": 0.9", "\"gamma\": 1.5");
        let file = write_config(&text);
        match load_config(file.path()) {
            Err(Error::Schema(msg)) => assert!(msg.contains("orders.gamma"), "{msg}"),
            other => panic!("expected schema error, got {:?}", other.map(|_| ())),
        }
    }

    #[test]
    fn malformed_expression_names_the_field() {
        let text = MINIMAL_1D.replace("\"c\": \"0\"", "\"c\": \"x^\"");
        let file = write_config(&text);
        match load_config(file.path()) {
            Err(Error::Schema(msg)) => assert!(msg.contains("coefficients.c"), "{msg}"),
            other => panic!("expected schema error, got {:?}", other.map(|_| ())),
        }
    }

    #[test]
    fn two_dimensional_requirements_enforced() {
        let text = MINIMAL_1D.replace("\"dimension\": 1", "\"dimension\": 2");
        let file = write_config(&text);
        match load_config(file.path()) {
            Err(Error::Schema(msg)) => assert!(msg.contains("domain.y"), "{msg}"),
            other => panic!("expected schema error, got {:?}", other.map(|_| ())),
        }
    }

    #[test]
    fn full_2d_config_loads() {
        let text = r#"{
            "dimension": 2,
            "domain": { "x": [0.0, 1.0], "y": [0.0, 1.0] },
            "T": 0.5,
            "orders": { "gamma": 0.9, "alpha": 1.2, "beta": 1.3 },
            "grid": { "nx": 6, "ny": 6, "nt": 3 },
            "scheme": "implicit",
            "coefficients": { "c": "2 * x^1.2 * y^1.3 * t^0.1", "d": "2 * x^1.3 * y^1.2 * t^0.1" },
            "source": "0",
            "initial": "0",
            "boundary": "0",
            "exact": "0"
        }"#;
        let file = write_config(text);
        let config = load_config(file.path()).unwrap();
        let spec = config.to_problem_2d().unwrap();
        assert_eq!(spec.grid.x.n_cells, 6);
        assert!((spec.beta - 1.3).abs() < 1e-15);
    }
}
