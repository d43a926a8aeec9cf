//! Dense matrices and the direct solver behind the implicit schemes.
//!
//! The implicit time steps assemble a fresh coefficient matrix per step
//! (it depends on t through the variable coefficients), so there is nothing
//! to factor ahead of time. Plain LU with partial pivoting on row-major
//! storage is fast enough at the scales the benchmarks use (at most a few
//! thousand unknowns) and keeps results deterministic.

use crate::error::{Error, Result};
use rayon::prelude::*;

/// Row-major dense matrix of f64.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        DenseMatrix {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = DenseMatrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1.0;
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::DimensionMismatch(
                "rows of unequal length".to_string(),
            ));
        }
        let mut data = Vec::with_capacity(nrows * ncols);
        for row in rows {
            data.extend(row);
        }
        Ok(DenseMatrix {
            rows: nrows,
            cols: ncols,
            data,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [f64] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// Max absolute row sum.
    pub fn norm_inf(&self) -> f64 {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|v| v.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }
}

/// y = A v.
pub fn matvec(a: &DenseMatrix, v: &[f64]) -> Result<Vec<f64>> {
    if a.cols != v.len() {
        return Err(Error::DimensionMismatch(format!(
            "matvec: matrix is {}x{}, vector has length {}",
            a.rows,
            a.cols,
            v.len()
        )));
    }
    Ok((0..a.rows)
        .map(|i| {
            a.row(i)
                .iter()
                .zip(v)
                .map(|(aij, vj)| aij * vj)
                .sum::<f64>()
        })
        .collect())
}

/// Solves A x = b by LU with partial pivoting. A and b are left untouched.
pub fn lu_solve(a: &DenseMatrix, b: &[f64]) -> Result<Vec<f64>> {
    let mut a = a.clone();
    let mut x = b.to_vec();
    lu_solve_in_place(&mut a, &mut x)?;
    Ok(x)
}

/// In-place variant: `a` is overwritten with its factors and `b` with the
/// solution. Used by the time steppers to avoid re-allocating the system
/// matrix every step.
pub fn lu_solve_in_place(a: &mut DenseMatrix, b: &mut [f64]) -> Result<()> {
    let n = a.rows;
    if a.cols != n {
        return Err(Error::DimensionMismatch(format!(
            "lu_solve: matrix is {}x{}, expected square",
            a.rows, a.cols
        )));
    }
    if b.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "lu_solve: matrix is {n}x{n}, right-hand side has length {}",
            b.len()
        )));
    }
    let pivot_floor = 1e-14 * a.norm_inf();

    for k in 0..n {
        // Partial pivoting: largest |a[i][k]| for i >= k.
        let mut pivot_row = k;
        let mut pivot_mag = a.get(k, k).abs();
        for i in (k + 1)..n {
            let mag = a.get(i, k).abs();
            if mag > pivot_mag {
                pivot_mag = mag;
                pivot_row = i;
            }
        }
        if pivot_mag <= pivot_floor || !pivot_mag.is_finite() {
            return Err(Error::SingularMatrix { pivot_row: k });
        }
        if pivot_row != k {
            let (lo, hi) = a.data.split_at_mut(pivot_row * n);
            lo[k * n..(k + 1) * n].swap_with_slice(&mut hi[..n]);
            b.swap(k, pivot_row);
        }

        let (head, tail) = a.data.split_at_mut((k + 1) * n);
        let pivot_slice = &head[k * n..(k + 1) * n];
        let pivot = pivot_slice[k];
        let update = |row: &mut [f64]| {
            let factor = row[k] / pivot;
            if factor != 0.0 {
                row[k] = factor;
                for (r, p) in row[k + 1..].iter_mut().zip(&pivot_slice[k + 1..]) {
                    *r -= factor * p;
                }
            }
        };
        // Row updates are independent; parallelism changes nothing about the
        // per-row arithmetic, so results stay bitwise reproducible.
        if n - k > 256 {
            tail.par_chunks_mut(n).for_each(update);
        } else {
            tail.chunks_mut(n).for_each(update);
        }
    }

    // Forward substitution with the stored multipliers.
    for i in 1..n {
        let (done, rest) = b.split_at_mut(i);
        let dot: f64 = a.row(i)[..i].iter().zip(&*done).map(|(l, r)| l * r).sum();
        rest[0] -= dot;
    }
    // Back substitution.
    for i in (0..n).rev() {
        let (head, tail) = b.split_at_mut(i + 1);
        let dot: f64 = a.row(i)[i + 1..]
            .iter()
            .zip(&*tail)
            .map(|(l, r)| l * r)
            .sum();
        head[i] = (head[i] - dot) / a.get(i, i);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    #[test]
    fn identity_returns_rhs() {
        let a = DenseMatrix::identity(5);
        let b = vec![1.0, -2.0, 3.5, 0.0, 7.0];
        let x = lu_solve(&a, &b).unwrap();
        assert_eq!(x, b);
    }

    #[test]
    fn diagonal_system() {
        let a = DenseMatrix::from_rows(vec![vec![2.0, 0.0], vec![0.0, 4.0]]).unwrap();
        let x = lu_solve(&a, &[2.0, 8.0]).unwrap();
        assert!((x[0] - 1.0).abs() < 1e-15);
        assert!((x[1] - 2.0).abs() < 1e-15);
    }

    #[test]
    fn matvec_identity_and_zero() {
        let v = vec![3.0, -1.0, 2.0];
        assert_eq!(matvec(&DenseMatrix::identity(3), &v).unwrap(), v);
        assert_eq!(matvec(&DenseMatrix::zeros(3, 3), &v).unwrap(), vec![0.0; 3]);
        let one = DenseMatrix::from_rows(vec![vec![3.0]]).unwrap();
        assert_eq!(matvec(&one, &[2.0]).unwrap(), vec![6.0]);
    }

    #[test]
    fn matvec_shape_mismatch() {
        let a = DenseMatrix::zeros(3, 4);
        assert!(matvec(&a, &[1.0; 3]).is_err());
    }

    #[test]
    fn residual_bound_on_random_system() {
        let mut rng = StdRng::seed_from_u64(0x5eed);
        let n = 50;
        let mut a = DenseMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                a.set(i, j, rng.gen_range(-1.0..1.0));
            }
            // keep it comfortably nonsingular
            a.set(i, i, a.get(i, i) + n as f64);
        }
        let b: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let x = lu_solve(&a, &b).unwrap();
        let ax = matvec(&a, &x).unwrap();
        let res = ax
            .iter()
            .zip(&b)
            .map(|(l, r)| (l - r).abs())
            .fold(0.0, f64::max);
        let xinf = x.iter().map(|v| v.abs()).fold(0.0, f64::max);
        let binf = b.iter().map(|v| v.abs()).fold(0.0, f64::max);
        let allow = 1e-10 * (a.norm_inf() * xinf + binf);
        assert!(res <= allow, "residual {res:e} exceeds {allow:e}");
    }

    #[test]
    fn round_trip_on_diagonally_dominant_matrices() {
        let mut rng = StdRng::seed_from_u64(42);
        for &n in &[10usize, 60, 200] {
            let mut a = DenseMatrix::zeros(n, n);
            for i in 0..n {
                let mut off = 0.0;
                for j in 0..n {
                    if i != j {
                        let v = rng.gen_range(-1.0..1.0);
                        a.set(i, j, v);
                        off += v.abs();
                    }
                }
                a.set(i, i, off + 1.0);
            }
            let x_true: Vec<f64> = (0..n).map(|_| rng.gen_range(-5.0..5.0)).collect();
            let b = matvec(&a, &x_true).unwrap();
            let x = lu_solve(&a, &b).unwrap();
            let worst = x
                .iter()
                .zip(&x_true)
                .map(|(l, r)| (l - r).abs() / r.abs().max(1.0))
                .fold(0.0, f64::max);
            assert!(worst < 1e-9, "n = {n}: relative error {worst:e}");
        }
    }

    #[test]
    fn pivoting_handles_zero_leading_entry() {
        let a = DenseMatrix::from_rows(vec![vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        let x = lu_solve(&a, &[3.0, 4.0]).unwrap();
        assert!((x[0] - 4.0).abs() < 1e-15);
        assert!((x[1] - 3.0).abs() < 1e-15);
    }

    #[test]
    fn singular_matrix_is_reported() {
        let a = DenseMatrix::from_rows(vec![vec![1.0, 2.0], vec![2.0, 4.0]]).unwrap();
        match lu_solve(&a, &[1.0, 2.0]) {
            Err(Error::SingularMatrix { .. }) => {}
            other => panic!("expected singular-matrix error, got {other:?}"),
        }
    }
}
