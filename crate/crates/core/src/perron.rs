//! Perron eigenvalue of a nonnegative integer matrix by power iteration.
//!
//! The iteration runs on `A + I` starting from the all-ones vector, so the
//! iterate stays strictly positive and the Collatz-Wielandt quotients
//! `min_k (y_k / x_k) <= rho <= max_k (y_k / x_k)` bracket the Perron root
//! at every step. Convergence is declared when the bracket is narrower than
//! the tolerance; running out of iterations is an error, never a guess.

use num_traits::Float;

use crate::error::{Error, Result};
use crate::tolerance::cast;

#[derive(Debug, Clone, Copy)]
pub struct PowerIteration<T> {
    pub tol: T,
    pub max_iter: usize,
}

impl<T: Float> Default for PowerIteration<T> {
    fn default() -> Self {
        // 1e-12 is below f32 resolution; fall back to a few ulps there.
        let floor = T::epsilon() * cast(64.0);
        let tol: T = cast(1e-12);
        PowerIteration {
            tol: if tol > floor { tol } else { floor },
            max_iter: 1_000_000,
        }
    }
}

/// Sparse square matrix with nonnegative integer entries, stored as
/// `(row, col, value)` triples.
#[derive(Debug, Clone, Default)]
pub struct SparseMatrix {
    pub dim: usize,
    pub entries: Vec<(usize, usize, u64)>,
}

impl SparseMatrix {
    pub fn new(dim: usize) -> Self {
        SparseMatrix {
            dim,
            entries: Vec::new(),
        }
    }

    fn apply_shifted<T: Float>(&self, x: &[T], y: &mut [T]) {
        y.copy_from_slice(x);
        for &(r, c, v) in &self.entries {
            y[r] = y[r] + cast::<T>(v as f64) * x[c];
        }
    }
}

/// Largest real eigenvalue of a nonnegative integer matrix that admits a
/// strictly positive eigenvector (as every left-multiplication matrix of a
/// fusion ring does).
pub fn perron_root<T: Float>(m: &SparseMatrix, opts: &PowerIteration<T>) -> Result<T> {
    if m.dim == 0 {
        return Err(Error::Structural("empty matrix".into()));
    }
    let mut x = vec![T::one(); m.dim];
    let mut y = vec![T::zero(); m.dim];
    for _ in 0..opts.max_iter {
        m.apply_shifted(&x, &mut y);
        let mut lo = T::infinity();
        let mut hi = T::zero();
        let mut top = T::zero();
        for (yk, xk) in y.iter().zip(&x) {
            let q = *yk / *xk;
            lo = lo.min(q);
            hi = hi.max(q);
            top = top.max(*yk);
        }
        if hi - lo < opts.tol {
            let two: T = cast(2.0);
            return Ok((lo + hi) / two - T::one());
        }
        for (xk, yk) in x.iter_mut().zip(&y) {
            *xk = *yk / top;
        }
        // Perron vector with zero entries: quotients there never settle.
        if x.iter().any(|v| *v <= T::min_positive_value()) {
            break;
        }
    }
    Err(Error::Numerical(format!(
        "power iteration did not converge within {} iterations (tolerance {:e})",
        opts.max_iter,
        opts.tol.to_f64().unwrap_or(f64::NAN)
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dense(rows: &[&[u64]]) -> SparseMatrix {
        let mut m = SparseMatrix::new(rows.len());
        for (r, row) in rows.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                if v != 0 {
                    m.entries.push((r, c, v));
                }
            }
        }
        m
    }

    #[test]
    fn golden_ratio() {
        let m = dense(&[&[0, 1], &[1, 1]]);
        let rho: f64 = perron_root(&m, &PowerIteration::default()).unwrap();
        assert!((rho - (1.0 + 5f64.sqrt()) / 2.0).abs() < 1e-12);
    }

    #[test]
    fn permutation_matrix_is_one() {
        let m = dense(&[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]]);
        let rho: f64 = perron_root(&m, &PowerIteration::default()).unwrap();
        assert!((rho - 1.0).abs() < 1e-12);
    }

    #[test]
    fn f32_converges() {
        let m = dense(&[&[0, 1], &[1, 1]]);
        let rho: f32 = perron_root(&m, &PowerIteration::default()).unwrap();
        assert!((rho - 1.618_034).abs() < 1e-5);
    }

    #[test]
    fn iteration_cap_is_an_error() {
        let m = dense(&[&[0, 1], &[1, 1]]);
        let opts = PowerIteration {
            tol: 1e-12,
            max_iter: 3,
        };
        assert!(matches!(
            perron_root::<f64>(&m, &opts),
            Err(Error::Numerical(_))
        ));
    }
}
