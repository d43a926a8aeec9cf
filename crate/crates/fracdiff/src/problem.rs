//! Grids, problem specifications, solution fields and the bundled
//! manufactured benchmarks.
//!
//! The two benchmark families pair a known exact solution with the forcing
//! that makes the equation hold, so solver output can be measured against
//! truth on any grid. Both live on the unit domain with final time 1/2 and
//! homogeneous data; the reference error tables shipped with the crate
//! (`verification::baselines`) were produced on exactly these problems.

use crate::coefficients::validate_spatial_order;
use crate::error::{Error, Result};
use crate::special::gamma_fn;
use std::f64::consts::PI;
use std::sync::Arc;

/// (x, t) -> value, shareable across threads.
pub type SpaceTimeFn = Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>;
/// x -> value.
pub type SpaceFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;
/// t -> value.
pub type TimeFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;
/// (x, y, t) -> value.
pub type SpaceTimeFn2 = Arc<dyn Fn(f64, f64, f64) -> f64 + Send + Sync>;
/// (x, y) -> value.
pub type SpaceFn2 = Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>;

/// Uniform 1D grid with `n_cells` cells (so `n_cells + 1` nodes).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid1D {
    pub x_left: f64,
    pub x_right: f64,
    pub n_cells: usize,
}

impl Grid1D {
    pub fn new(x_left: f64, x_right: f64, n_cells: usize) -> Result<Self> {
        if !(x_left.is_finite() && x_right.is_finite() && x_left < x_right) {
            return Err(Error::Domain(format!(
                "grid bounds must satisfy x_left < x_right, got [{x_left}, {x_right}]"
            )));
        }
        if n_cells < 3 {
            return Err(Error::Domain(format!(
                "grid needs at least 3 cells, got {n_cells}"
            )));
        }
        Ok(Grid1D {
            x_left,
            x_right,
            n_cells,
        })
    }

    pub fn dx(&self) -> f64 {
        (self.x_right - self.x_left) / self.n_cells as f64
    }

    pub fn node(&self, i: usize) -> f64 {
        self.x_left + i as f64 * self.dx()
    }

    pub fn nodes(&self) -> impl Iterator<Item = f64> + '_ {
        (0..=self.n_cells).map(|i| self.node(i))
    }
}

/// Tensor grid over a rectangle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid2D {
    pub x: Grid1D,
    pub y: Grid1D,
}

/// Uniform time grid on [0, T].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeGrid {
    pub t_final: f64,
    pub n_steps: usize,
}

impl TimeGrid {
    pub fn new(t_final: f64, n_steps: usize) -> Result<Self> {
        if !(t_final.is_finite() && t_final > 0.0) {
            return Err(Error::Domain(format!(
                "final time must be positive, got {t_final}"
            )));
        }
        if n_steps == 0 {
            return Err(Error::Domain("need at least one time step".to_string()));
        }
        Ok(TimeGrid { t_final, n_steps })
    }

    pub fn tau(&self) -> f64 {
        self.t_final / self.n_steps as f64
    }

    pub fn node(&self, k: usize) -> f64 {
        k as f64 * self.tau()
    }
}

fn validate_time_order(gamma: f64) -> Result<()> {
    if !gamma.is_finite() || gamma <= 0.0 || gamma > 1.0 {
        return Err(Error::Domain(format!(
            "time-fractional order must lie in (0, 1], got {gamma}"
        )));
    }
    Ok(())
}

/// One-dimensional problem: Caputo time derivative of order `gamma` equals
/// `c(x,t)` times the Riesz space derivative of order `alpha` plus `f`.
#[derive(Clone)]
pub struct ProblemSpec1D {
    pub grid: Grid1D,
    pub time: TimeGrid,
    pub gamma: f64,
    pub alpha: f64,
    pub c: SpaceTimeFn,
    pub f: SpaceTimeFn,
    pub u0: SpaceFn,
    pub boundary_left: TimeFn,
    pub boundary_right: TimeFn,
    pub exact: Option<SpaceTimeFn>,
}

impl ProblemSpec1D {
    /// Validates orders, the sign of `c` on every grid/time node, and
    /// initial/boundary compatibility at t = 0.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        grid: Grid1D,
        time: TimeGrid,
        gamma: f64,
        alpha: f64,
        c: SpaceTimeFn,
        f: SpaceTimeFn,
        u0: SpaceFn,
        boundary_left: TimeFn,
        boundary_right: TimeFn,
        exact: Option<SpaceTimeFn>,
    ) -> Result<Self> {
        validate_time_order(gamma)?;
        validate_spatial_order(alpha)?;
        for k in 0..=time.n_steps {
            let t = time.node(k);
            for x in grid.nodes() {
                let v = c(x, t);
                if !(v.is_finite() && v >= 0.0) {
                    return Err(Error::Spec(format!(
                        "coefficient c must be finite and nonnegative; c({x}, {t}) = {v}"
                    )));
                }
            }
        }
        let left_gap = (u0(grid.x_left) - boundary_left(0.0)).abs();
        let right_gap = (u0(grid.x_right) - boundary_right(0.0)).abs();
        if left_gap > 1e-10 || right_gap > 1e-10 {
            return Err(Error::Spec(format!(
                "initial data and boundary data disagree at t = 0 (gaps {left_gap:e}, {right_gap:e})"
            )));
        }
        Ok(ProblemSpec1D {
            grid,
            time,
            gamma,
            alpha,
            c,
            f,
            u0,
            boundary_left,
            boundary_right,
            exact,
        })
    }
}

/// Two-dimensional problem with per-axis orders `alpha` (x) and `beta` (y)
/// and coefficients `c`, `d`; `boundary` supplies Dirichlet data on the
/// whole boundary.
#[derive(Clone)]
pub struct ProblemSpec2D {
    pub grid: Grid2D,
    pub time: TimeGrid,
    pub gamma: f64,
    pub alpha: f64,
    pub beta: f64,
    pub c: SpaceTimeFn2,
    pub d: SpaceTimeFn2,
    pub f: SpaceTimeFn2,
    pub u0: SpaceFn2,
    pub boundary: SpaceTimeFn2,
    pub exact: Option<SpaceTimeFn2>,
}

impl ProblemSpec2D {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        grid: Grid2D,
        time: TimeGrid,
        gamma: f64,
        alpha: f64,
        beta: f64,
        c: SpaceTimeFn2,
        d: SpaceTimeFn2,
        f: SpaceTimeFn2,
        u0: SpaceFn2,
        boundary: SpaceTimeFn2,
        exact: Option<SpaceTimeFn2>,
    ) -> Result<Self> {
        validate_time_order(gamma)?;
        validate_spatial_order(alpha)?;
        validate_spatial_order(beta)?;
        for k in 0..=time.n_steps {
            let t = time.node(k);
            for x in grid.x.nodes() {
                for y in grid.y.nodes() {
                    let cv = c(x, y, t);
                    let dv = d(x, y, t);
                    if !(cv.is_finite() && cv >= 0.0) {
                        return Err(Error::Spec(format!(
                            "coefficient c must be finite and nonnegative; c({x}, {y}, {t}) = {cv}"
                        )));
                    }
                    if !(dv.is_finite() && dv >= 0.0) {
                        return Err(Error::Spec(format!(
                            "coefficient d must be finite and nonnegative; d({x}, {y}, {t}) = {dv}"
                        )));
                    }
                }
            }
        }
        // initial/boundary compatibility along the whole boundary at t = 0
        let mut worst = 0.0f64;
        for x in grid.x.nodes() {
            worst = worst.max((u0(x, grid.y.x_left) - boundary(x, grid.y.x_left, 0.0)).abs());
            worst = worst.max((u0(x, grid.y.x_right) - boundary(x, grid.y.x_right, 0.0)).abs());
        }
        for y in grid.y.nodes() {
            worst = worst.max((u0(grid.x.x_left, y) - boundary(grid.x.x_left, y, 0.0)).abs());
            worst = worst.max((u0(grid.x.x_right, y) - boundary(grid.x.x_right, y, 0.0)).abs());
        }
        if worst > 1e-10 {
            return Err(Error::Spec(format!(
                "initial data and boundary data disagree at t = 0 (gap {worst:e})"
            )));
        }
        Ok(ProblemSpec2D {
            grid,
            time,
            gamma,
            alpha,
            beta,
            c,
            d,
            f,
            u0,
            boundary,
            exact,
        })
    }
}

/// Nodal values over a 1D grid (boundary nodes included) at one time.
#[derive(Debug, Clone, PartialEq)]
pub struct Field1D {
    pub values: Vec<f64>,
    pub time_label: f64,
}

impl Field1D {
    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.abs()).fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.values.iter().all(|v| v.is_finite())
    }
}

/// Nodal values over a 2D grid, row-major with the y index fastest:
/// `values[i * (ny + 1) + j]` holds the node (x_i, y_j).
#[derive(Debug, Clone, PartialEq)]
pub struct Field2D {
    pub nx: usize,
    pub ny: usize,
    pub values: Vec<f64>,
    pub time_label: f64,
}

impl Field2D {
    pub fn zeros(nx: usize, ny: usize, time_label: f64) -> Self {
        Field2D {
            nx,
            ny,
            values: vec![0.0; (nx + 1) * (ny + 1)],
            time_label,
        }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * (self.ny + 1) + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        self.values[i * (self.ny + 1) + j] = value;
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.abs()).fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.values.iter().all(|v| v.is_finite())
    }
}

/// Max-norm distance between a field and an exact solution sampled at `t`.
pub fn max_error_1d(field: &Field1D, grid: &Grid1D, exact: &SpaceTimeFn, t: f64) -> f64 {
    field
        .values
        .iter()
        .enumerate()
        .map(|(i, v)| (v - exact(grid.node(i), t)).abs())
        .fold(0.0, f64::max)
}

pub fn max_error_2d(field: &Field2D, grid: &Grid2D, exact: &SpaceTimeFn2, t: f64) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..=field.nx {
        let x = grid.x.node(i);
        for j in 0..=field.ny {
            let y = grid.y.node(j);
            worst = worst.max((field.get(i, j) - exact(x, y, t)).abs());
        }
    }
    worst
}

/// z^p with the convention 0^0 = 1, matching the t^(1-gamma) factor of the
/// benchmark coefficients in the gamma = 1 limit.
fn pow0(z: f64, p: f64) -> f64 {
    if z == 0.0 && p == 0.0 {
        1.0
    } else {
        z.powf(p)
    }
}

/// The bracketed sum shared by both benchmark forcings: the one-sided power
/// rule applied to z^2 (1-z)^2 term by term (divided by 2 and by the order's
/// cosine factor outside).
fn forcing_bracket(z: f64, nu: f64) -> f64 {
    (pow0(z, 2.0 - nu) + pow0(1.0 - z, 2.0 - nu)) / gamma_fn(3.0 - nu).unwrap()
        - 6.0 * (pow0(z, 3.0 - nu) + pow0(1.0 - z, 3.0 - nu)) / gamma_fn(4.0 - nu).unwrap()
        + 12.0 * (pow0(z, 4.0 - nu) + pow0(1.0 - z, 4.0 - nu)) / gamma_fn(5.0 - nu).unwrap()
}

/// Manufactured 1D problem on [0, 1] x (0, 1/2]:
/// coefficient `c = x^alpha t^(1-gamma)`, exact solution
/// `u = t^(2+gamma) x^2 (1-x)^2`, zero initial and boundary data, and a
/// forcing assembled so the equation holds exactly.
pub fn benchmark_1d(
    alpha: f64,
    gamma: f64,
    n_cells: usize,
    n_steps: usize,
) -> Result<ProblemSpec1D> {
    validate_time_order(gamma)?;
    validate_spatial_order(alpha)?;
    let grid = Grid1D::new(0.0, 1.0, n_cells)?;
    let time = TimeGrid::new(0.5, n_steps)?;
    let gamma3 = gamma_fn(3.0 + gamma)?;
    let cos_a = (alpha * PI / 2.0).cos();

    let c: SpaceTimeFn = Arc::new(move |x, t| pow0(x, alpha) * pow0(t, 1.0 - gamma));
    let f: SpaceTimeFn = Arc::new(move |x: f64, t: f64| {
        let caputo_part = 0.5 * gamma3 * t * t * x * x * (x - 1.0) * (x - 1.0);
        if x == 0.0 {
            return caputo_part;
        }
        caputo_part + t.powi(3) * x.powf(alpha) / cos_a * forcing_bracket(x, alpha)
    });
    let exact: SpaceTimeFn =
        Arc::new(move |x, t| pow0(t, 2.0 + gamma) * x * x * (1.0 - x) * (1.0 - x));
    ProblemSpec1D::new(
        grid,
        time,
        gamma,
        alpha,
        c,
        f,
        Arc::new(|_| 0.0),
        Arc::new(|_| 0.0),
        Arc::new(|_| 0.0),
        Some(exact),
    )
}

/// Manufactured 2D problem on the unit square, final time 1/2:
/// coefficients `c = 2 x^alpha y^beta t^(1-gamma)` and
/// `d = 2 x^beta y^alpha t^(1-gamma)`, exact solution
/// `u = t^(2+gamma) x^2 (1-x)^2 y^2 (1-y)^2`, zero data, and the matching
/// forcing (each fractional term carries the coefficient's factor 2).
pub fn benchmark_2d(
    alpha: f64,
    beta: f64,
    gamma: f64,
    n_cells: usize,
    n_steps: usize,
) -> Result<ProblemSpec2D> {
    validate_time_order(gamma)?;
    validate_spatial_order(alpha)?;
    validate_spatial_order(beta)?;
    let axis = Grid1D::new(0.0, 1.0, n_cells)?;
    let grid = Grid2D { x: axis, y: axis };
    let time = TimeGrid::new(0.5, n_steps)?;
    let gamma3 = gamma_fn(3.0 + gamma)?;
    let cos_a = (alpha * PI / 2.0).cos();
    let cos_b = (beta * PI / 2.0).cos();

    let c: SpaceTimeFn2 =
        Arc::new(move |x, y, t| 2.0 * pow0(x, alpha) * pow0(y, beta) * pow0(t, 1.0 - gamma));
    let d: SpaceTimeFn2 =
        Arc::new(move |x, y, t| 2.0 * pow0(x, beta) * pow0(y, alpha) * pow0(t, 1.0 - gamma));
    let f: SpaceTimeFn2 = Arc::new(move |x: f64, y: f64, t: f64| {
        let wx = x * x * (x - 1.0) * (x - 1.0);
        let wy = y * y * (y - 1.0) * (y - 1.0);
        let mut v = 0.5 * gamma3 * t * t * wx * wy;
        let t3 = t.powi(3);
        if x > 0.0 {
            v += 2.0 * t3 * x.powf(alpha) * pow0(y, 2.0 + beta) * (y - 1.0) * (y - 1.0) / cos_a
                * forcing_bracket(x, alpha);
        }
        if y > 0.0 {
            v += 2.0 * t3 * pow0(x, 2.0 + beta) * (x - 1.0) * (x - 1.0) * y.powf(alpha) / cos_b
                * forcing_bracket(y, beta);
        }
        v
    });
    let exact: SpaceTimeFn2 = Arc::new(move |x, y, t| {
        pow0(t, 2.0 + gamma) * x * x * (1.0 - x) * (1.0 - x) * y * y * (1.0 - y) * (1.0 - y)
    });
    ProblemSpec2D::new(
        grid,
        time,
        gamma,
        alpha,
        beta,
        c,
        d,
        f,
        Arc::new(|_, _| 0.0),
        Arc::new(|_, _, _| 0.0),
        Some(exact),
    )
}
