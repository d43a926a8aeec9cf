//! Time steppers for the two-dimensional problem.
//!
//! Interior unknowns are ordered lexicographically with the y index
//! fastest: unknown r = (i-1)(ny-1) + (j-1) holds node (x_i, y_j). Each
//! implicit step assembles the dense interior system — x-coupling from the
//! alpha g-rows along fixed j, y-coupling from the beta g-rows along fixed
//! i — folds boundary columns into the right-hand side, and solves by LU.
//! The matrix depends on t through the coefficients c and d, so it is
//! rebuilt and refactored every step.

use crate::coefficients::{caputo_weights, kappa, riesz_row_matrix};
use crate::error::{Error, Result};
use crate::linalg::{lu_solve_in_place, DenseMatrix};
use crate::problem::{Field2D, ProblemSpec2D};
use crate::special::gamma_fn;

#[derive(Debug, Clone)]
pub struct History2D {
    pub levels: Vec<Field2D>,
}

/// Traces recorded while stepping: max |u| per level, and for the implicit
/// scheme the max-norm residual of each linear solve.
#[derive(Debug, Clone, Default)]
pub struct Diagnostics2D {
    pub max_abs: Vec<f64>,
    pub solve_residuals: Vec<f64>,
}

#[derive(Debug, Clone)]
pub struct SolveResult2D {
    pub final_field: Field2D,
    pub history: History2D,
    pub diagnostics: Diagnostics2D,
}

struct Discretization2 {
    g_x: Vec<Vec<f64>>,
    g_y: Vec<Vec<f64>>,
    l: Vec<f64>,
    mu: f64,
    scale_x: f64,
    scale_y: f64,
    xs: Vec<f64>,
    ys: Vec<f64>,
}

fn discretize(spec: &ProblemSpec2D) -> Result<Discretization2> {
    let nx = spec.grid.x.n_cells;
    let ny = spec.grid.y.n_cells;
    let g_x = riesz_row_matrix(spec.alpha, nx)?;
    let g_y = riesz_row_matrix(spec.beta, ny)?;
    let l = caputo_weights(spec.gamma, spec.time.n_steps)?
        .weights()
        .to_vec();
    let tau = spec.time.tau();
    let mu = gamma_fn(2.0 - spec.gamma)? * tau.powf(spec.gamma);
    let scale_x = -mu * kappa(spec.alpha)?
        / (gamma_fn(4.0 - spec.alpha)? * spec.grid.x.dx().powf(spec.alpha));
    let scale_y =
        -mu * kappa(spec.beta)? / (gamma_fn(4.0 - spec.beta)? * spec.grid.y.dx().powf(spec.beta));
    Ok(Discretization2 {
        g_x,
        g_y,
        l,
        mu,
        scale_x,
        scale_y,
        xs: spec.grid.x.nodes().collect(),
        ys: spec.grid.y.nodes().collect(),
    })
}

fn initial_field(spec: &ProblemSpec2D) -> Field2D {
    let nx = spec.grid.x.n_cells;
    let ny = spec.grid.y.n_cells;
    let mut field = Field2D::zeros(nx, ny, 0.0);
    for i in 0..=nx {
        for j in 0..=ny {
            field.set(i, j, (spec.u0)(spec.grid.x.node(i), spec.grid.y.node(j)));
        }
    }
    field
}

/// Field holding boundary values at time t and zeros inside.
fn boundary_frame(spec: &ProblemSpec2D, t: f64) -> Field2D {
    let nx = spec.grid.x.n_cells;
    let ny = spec.grid.y.n_cells;
    let mut frame = Field2D::zeros(nx, ny, t);
    for i in 0..=nx {
        let x = spec.grid.x.node(i);
        frame.set(i, 0, (spec.boundary)(x, spec.grid.y.node(0), t));
        frame.set(i, ny, (spec.boundary)(x, spec.grid.y.node(ny), t));
    }
    for j in 0..=ny {
        let y = spec.grid.y.node(j);
        frame.set(0, j, (spec.boundary)(spec.grid.x.node(0), y, t));
        frame.set(nx, j, (spec.boundary)(spec.grid.x.node(nx), y, t));
    }
    frame
}

fn history_sum(levels: &[Field2D], l: &[f64], k: usize, nx: usize, ny: usize, out: &mut [f64]) {
    let nyi = ny - 1;
    for s in 0..=k {
        let (w, level) = if s < k {
            (l[s] - l[s + 1], &levels[k - s])
        } else {
            (l[k], &levels[0])
        };
        for i in 1..nx {
            for j in 1..ny {
                out[(i - 1) * nyi + (j - 1)] += w * level.get(i, j);
            }
        }
    }
}

/// Implicit scheme (dense LU per step).
pub fn solve_implicit_2d(spec: &ProblemSpec2D) -> Result<SolveResult2D> {
    let disc = discretize(spec)?;
    let nx = spec.grid.x.n_cells;
    let ny = spec.grid.y.n_cells;
    let (nxi, nyi) = (nx - 1, ny - 1);
    let n_unknowns = nxi * nyi;
    let index = |i: usize, j: usize| (i - 1) * nyi + (j - 1);

    let u0 = initial_field(spec);
    let mut diagnostics = Diagnostics2D {
        max_abs: vec![u0.max_abs()],
        solve_residuals: Vec::new(),
    };
    let mut levels = vec![u0];
    let mut matrix = DenseMatrix::zeros(n_unknowns, n_unknowns);
    let mut omega_x = vec![0.0; n_unknowns];
    let mut omega_y = vec![0.0; n_unknowns];

    for k in 0..spec.time.n_steps {
        let t_next = spec.time.node(k + 1);
        let frame = boundary_frame(spec, t_next);

        for i in 1..nx {
            for j in 1..ny {
                let r = index(i, j);
                omega_x[r] = disc.scale_x * (spec.c)(disc.xs[i], disc.ys[j], t_next);
                omega_y[r] = disc.scale_y * (spec.d)(disc.xs[i], disc.ys[j], t_next);
            }
        }

        // Assemble A = I - diag(omega_x) Gx - diag(omega_y) Gy over the
        // interior; boundary columns go to the right-hand side below.
        for r in 0..n_unknowns {
            matrix.row_mut(r).iter_mut().for_each(|v| *v = 0.0);
        }
        for i in 1..nx {
            let gx = &disc.g_x[i - 1];
            for j in 1..ny {
                let r = index(i, j);
                let (wx, wy) = (omega_x[r], omega_y[r]);
                let gy = &disc.g_y[j - 1];
                let row = matrix.row_mut(r);
                for m in 1..nx {
                    row[index(m, j)] -= wx * gx[m];
                }
                for m in 1..ny {
                    row[index(i, m)] -= wy * gy[m];
                }
                row[r] += 1.0;
            }
        }

        let mut rhs = vec![0.0; n_unknowns];
        history_sum(&levels, &disc.l, k, nx, ny, &mut rhs);
        for i in 1..nx {
            let gx = &disc.g_x[i - 1];
            for j in 1..ny {
                let r = index(i, j);
                let gy = &disc.g_y[j - 1];
                rhs[r] += disc.mu * (spec.f)(disc.xs[i], disc.ys[j], t_next)
                    + omega_x[r] * (gx[0] * frame.get(0, j) + gx[nx] * frame.get(nx, j))
                    + omega_y[r] * (gy[0] * frame.get(i, 0) + gy[ny] * frame.get(i, ny));
            }
        }

        let rhs_saved = rhs.clone();
        lu_solve_in_place(&mut matrix, &mut rhs)?;

        // Residual of the solve, reconstructed from the assembly pattern.
        let mut residual = 0.0f64;
        for i in 1..nx {
            let gx = &disc.g_x[i - 1];
            for j in 1..ny {
                let r = index(i, j);
                let gy = &disc.g_y[j - 1];
                let mut ax = rhs[r];
                for m in 1..nx {
                    ax -= omega_x[r] * gx[m] * rhs[index(m, j)];
                }
                for m in 1..ny {
                    ax -= omega_y[r] * gy[m] * rhs[index(i, m)];
                }
                residual = residual.max((ax - rhs_saved[r]).abs());
            }
        }
        diagnostics.solve_residuals.push(residual);

        let mut field = frame;
        for i in 1..nx {
            for j in 1..ny {
                field.set(i, j, rhs[index(i, j)]);
            }
        }
        if !field.is_finite() {
            return Err(Error::NonFinite { step: k + 1 });
        }
        diagnostics.max_abs.push(field.max_abs());
        levels.push(field);
    }

    Ok(SolveResult2D {
        final_field: levels.last().unwrap().clone(),
        history: History2D { levels },
        diagnostics,
    })
}

/// Explicit scheme: pointwise update with the spatial term and source at
/// the old time level.
#[allow(clippy::needless_range_loop)] // column access strides through the field
pub fn solve_explicit_2d(spec: &ProblemSpec2D) -> Result<SolveResult2D> {
    let disc = discretize(spec)?;
    let nx = spec.grid.x.n_cells;
    let ny = spec.grid.y.n_cells;
    let u0 = initial_field(spec);
    let mut diagnostics = Diagnostics2D {
        max_abs: vec![u0.max_abs()],
        solve_residuals: Vec::new(),
    };
    let mut levels = vec![u0];

    for k in 0..spec.time.n_steps {
        let t_here = spec.time.node(k);
        let t_next = spec.time.node(k + 1);
        let current = &levels[k];

        let mut field = boundary_frame(spec, t_next);
        for i in 1..nx {
            let gx = &disc.g_x[i - 1];
            for j in 1..ny {
                let gy = &disc.g_y[j - 1];
                let sigma_x = disc.scale_x * (spec.c)(disc.xs[i], disc.ys[j], t_here);
                let sigma_y = disc.scale_y * (spec.d)(disc.xs[i], disc.ys[j], t_here);
                let mut coupled = 0.0;
                for m in 0..=nx {
                    coupled += sigma_x * gx[m] * current.get(m, j);
                }
                for m in 0..=ny {
                    coupled += sigma_y * gy[m] * current.get(i, m);
                }
                let mut v = current.get(i, j)
                    + coupled
                    + disc.mu * (spec.f)(disc.xs[i], disc.ys[j], t_here);
                if k > 0 {
                    v -= disc.l[1] * current.get(i, j);
                    for s in 1..k {
                        v += (disc.l[s] - disc.l[s + 1]) * levels[k - s].get(i, j);
                    }
                    v += disc.l[k] * levels[0].get(i, j);
                }
                field.set(i, j, v);
            }
        }
        if !field.is_finite() {
            return Err(Error::NonFinite { step: k + 1 });
        }
        diagnostics.max_abs.push(field.max_abs());
        levels.push(field);
    }

    Ok(SolveResult2D {
        final_field: levels.last().unwrap().clone(),
        history: History2D { levels },
        diagnostics,
    })
}
