//! Cyclic Jacobi eigensolver for small dense symmetric matrices.

use nalgebra::{DMatrix, DVector};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EigenError {
    #[error("matrix is not square ({rows}×{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not symmetric (asymmetry {0:e})")]
    NotSymmetric(f64),
    #[error("Jacobi iteration did not converge within {sweeps} sweeps (residual {residual:e})")]
    NoConvergence { sweeps: usize, residual: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct EigenPair {
    pub value: f64,
    pub vector: DVector<f64>,
}

const MAX_SWEEPS: usize = 100;

/// Full eigendecomposition, sorted by ascending eigenvalue. Every pair is
/// certified by `‖Lv − λv‖ ≤ tol·‖L‖_F`.
pub fn sym_eigen(matrix: &DMatrix<f64>, tol: f64) -> Result<Vec<EigenPair>, EigenError> {
    let n = matrix.nrows();
    if matrix.ncols() != n {
        return Err(EigenError::NotSquare {
            rows: n,
            cols: matrix.ncols(),
        });
    }
    let norm = matrix.norm();
    let asymmetry = (matrix - matrix.transpose()).amax();
    if asymmetry > 1e-12 * norm.max(1.0) {
        return Err(EigenError::NotSymmetric(asymmetry));
    }
    let mut a = matrix.clone();
    let mut v = DMatrix::<f64>::identity(n, n);
    let mut converged = n < 2;
    let mut sweeps = 0;
    while !converged && sweeps < MAX_SWEEPS {
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                if a[(p, q)] != 0.0 {
                    rotate(&mut a, &mut v, p, q);
                }
            }
        }
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[(i, j)] * a[(i, j)])
            .sum::<f64>()
            .sqrt();
        converged = off <= 1e-2 * f64::EPSILON * norm;
    }
    let mut pairs: Vec<EigenPair> = (0..n)
        .map(|i| EigenPair {
            value: a[(i, i)],
            vector: v.column(i).into_owned(),
        })
        .collect();
    pairs.sort_by(|x, y| x.value.total_cmp(&y.value));
    let residual = pairs
        .iter()
        .map(|p| (matrix * &p.vector - &p.vector * p.value).norm())
        .fold(0.0, f64::max);
    if residual > tol * norm {
        return Err(EigenError::NoConvergence { sweeps, residual });
    }
    Ok(pairs)
}

/// Eigenvalues only, ascending.
pub fn sym_eigenvalues(matrix: &DMatrix<f64>, tol: f64) -> Result<Vec<f64>, EigenError> {
    Ok(sym_eigen(matrix, tol)?
        .into_iter()
        .map(|p| p.value)
        .collect())
}

fn rotate(a: &mut DMatrix<f64>, v: &mut DMatrix<f64>, p: usize, q: usize) {
    let apq = a[(p, q)];
    let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    let n = a.nrows();
    a[(p, p)] -= t * apq;
    a[(q, q)] += t * apq;
    a[(p, q)] = 0.0;
    a[(q, p)] = 0.0;
    for r in 0..n {
        if r != p && r != q {
            let arp = a[(r, p)];
            let arq = a[(r, q)];
            a[(r, p)] = c * arp - s * arq;
            a[(p, r)] = a[(r, p)];
            a[(r, q)] = s * arp + c * arq;
            a[(q, r)] = a[(r, q)];
        }
    }
    for r in 0..n {
        let vrp = v[(r, p)];
        let vrq = v[(r, q)];
        v[(r, p)] = c * vrp - s * vrq;
        v[(r, q)] = s * vrp + c * vrq;
    }
}
