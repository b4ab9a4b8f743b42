//! Independent reference implementations used as test oracles.
#![allow(dead_code)]

use nalgebra::DMatrix;
use num_traits::ToPrimitive;

use flagstab_core::SpaceModel;

fn bracket(space: &SpaceModel, i: usize, j: usize, k: usize) -> f64 {
    space.constant(i + 1, j + 1, k + 1).to_f64().unwrap()
}

/// Ricci eigenvalues by the full double sum over ordered `(i, j)`.
pub fn naive_rho(space: &SpaceModel, x: &[f64]) -> Vec<f64> {
    let r = x.len();
    (0..r)
        .map(|k| {
            let mut s = 0.0;
            for i in 0..r {
                for j in 0..r {
                    s += bracket(space, i, j, k) * (x[k] * x[k] - x[i] * x[i] - x[j] * x[j])
                        / (x[i] * x[j] * x[k]);
                }
            }
            0.5 / x[k] + s / (4.0 * f64::from(space.dims()[k]))
        })
        .collect()
}

/// Scalar curvature by the full triple sum.
pub fn naive_scalar(space: &SpaceModel, x: &[f64]) -> f64 {
    let r = x.len();
    let mut first = 0.0;
    let mut second = 0.0;
    for k in 0..r {
        first += f64::from(space.dims()[k]) / x[k];
        for i in 0..r {
            for j in 0..r {
                second += bracket(space, i, j, k) * x[k] / (x[i] * x[j]);
            }
        }
    }
    0.5 * first - 0.25 * second
}

/// `[L_p]` entry by entry from its defining sums.
pub fn naive_lp(space: &SpaceModel, x: &[f64]) -> DMatrix<f64> {
    let r = x.len();
    let d: Vec<f64> = space.dims().iter().map(|&v| f64::from(v)).collect();
    DMatrix::from_fn(r, r, |j, k| {
        if j == k {
            let mut s = 0.0;
            for a in (0..r).filter(|&a| a != k) {
                for b in (0..r).filter(|&b| b != k) {
                    s += bracket(space, a, b, k) * x[k] / (x[a] * x[b]);
                }
                s += bracket(space, a, k, k) * x[a] / (x[k] * x[k]);
            }
            s / d[k]
        } else {
            let s: f64 = (0..r)
                .map(|i| {
                    bracket(space, i, j, k) * (x[i] * x[i] - x[j] * x[j] - x[k] * x[k])
                        / (x[i] * x[j] * x[k])
                })
                .sum();
            s / (d[j] * d[k]).sqrt()
        }
    })
}

/// Householder reduction of a symmetric matrix to tridiagonal form;
/// returns the diagonal and the subdiagonal.
pub fn tridiagonalize(a: &DMatrix<f64>) -> (Vec<f64>, Vec<f64>) {
    let n = a.nrows();
    let mut m = a.clone();
    for k in 0..n.saturating_sub(2) {
        let x: Vec<f64> = (k + 1..n).map(|i| m[(i, k)]).collect();
        let alpha = -x[0].signum() * x.iter().map(|v| v * v).sum::<f64>().sqrt();
        let mut v = x.clone();
        v[0] -= alpha;
        let vv: f64 = v.iter().map(|t| t * t).sum();
        if vv == 0.0 {
            continue;
        }
        // H = I - 2 v vᵀ / vᵀv acting on rows and columns k+1..n
        let mut h = DMatrix::<f64>::identity(n, n);
        for i in 0..v.len() {
            for j in 0..v.len() {
                h[(k + 1 + i, k + 1 + j)] -= 2.0 * v[i] * v[j] / vv;
            }
        }
        m = &h * m * &h;
    }
    let d = (0..n).map(|i| m[(i, i)]).collect();
    let e = (1..n).map(|i| m[(i, i - 1)]).collect();
    (d, e)
}

/// Number of eigenvalues of the tridiagonal `(d, e)` below `sigma`, by the
/// Sturm count of its shifted pivots.
pub fn count_below(d: &[f64], e: &[f64], sigma: f64) -> usize {
    let scale = d.iter().chain(e).map(|v| v.abs()).fold(1.0, f64::max);
    let tiny = f64::EPSILON * f64::EPSILON * scale;
    let mut count = 0;
    let mut q = 1.0;
    for i in 0..d.len() {
        let off = if i == 0 { 0.0 } else { e[i - 1] * e[i - 1] / q };
        q = d[i] - sigma - off;
        if q.abs() < tiny {
            q = -tiny;
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// All eigenvalues of a symmetric matrix, ascending, by bisection on the
/// Sturm count.
pub fn bisection_eigenvalues(a: &DMatrix<f64>) -> Vec<f64> {
    let n = a.nrows();
    let (d, e) = tridiagonalize(a);
    let radius = (0..n)
        .map(|i| (0..n).map(|j| a[(i, j)].abs()).sum::<f64>())
        .fold(0.0, f64::max)
        + 1.0;
    (0..n)
        .map(|k| {
            // smallest t with more than k eigenvalues below it
            let (mut lo, mut hi) = (-radius, radius);
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if mid == lo || mid == hi {
                    break;
                }
                if count_below(&d, &e, mid) > k {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            0.5 * (lo + hi)
        })
        .collect()
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(u, v)| (u - v).abs())
        .fold(0.0, f64::max)
}

pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}
