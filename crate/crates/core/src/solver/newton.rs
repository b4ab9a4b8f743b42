//! Damped Gauss–Newton iteration for the Einstein equations in
//! log-coordinates, restricted to an ansatz.

use nalgebra::{DMatrix, DVector};

use crate::curvature::residual_of;
use crate::model::SpaceModel;

/// `ρ_k` and `∂ρ_k/∂y_m` where `y = ln x`.
pub fn rho_with_jacobian(space: &SpaceModel, x: &[f64]) -> (Vec<f64>, DMatrix<f64>) {
    let r = x.len();
    let d = space.dims_f64();
    let mut rho: Vec<f64> = x.iter().map(|v| 0.5 / v).collect();
    let mut jac = DMatrix::<f64>::zeros(r, r);
    for k in 0..r {
        jac[(k, k)] = -0.5 / x[k];
    }
    for &([a, b, c], value) in space.fast_triples() {
        let members = [(a, b, c), (b, a, c), (c, a, b)];
        for (pos, &(k, i, j)) in members.iter().enumerate() {
            // a repeated index is handled at its first position only
            if members[..pos].iter().any(|m| m.0 == k) {
                continue;
            }
            let ordered = if i == j { 1.0 } else { 2.0 };
            let coef = ordered * value / (4.0 * d[k]);
            // x_k/(x_i x_j) − x_i/(x_j x_k) − x_j/(x_i x_k): each monomial
            // differentiates to (exponent of x_m) × monomial in y_m
            let t1 = coef * x[k] / (x[i] * x[j]);
            let t2 = -coef * x[i] / (x[j] * x[k]);
            let t3 = -coef * x[j] / (x[i] * x[k]);
            rho[k] += t1 + t2 + t3;
            jac[(k, k)] += t1 - t2 - t3;
            jac[(k, i)] += -t1 + t2 - t3;
            jac[(k, j)] += -t1 - t2 + t3;
        }
    }
    (rho, jac)
}

/// Where a run from one start ended.
#[derive(Debug, Clone, PartialEq)]
pub enum Outcome {
    Converged(Vec<f64>),
    Diverged,
    Stalled,
}

pub struct NewtonSystem<'a> {
    space: &'a SpaceModel,
    class_of: Vec<usize>,
    classes: usize,
    pub max_iter: usize,
    pub tol: f64,
}

const LOG_LIMIT: f64 = 25.0;
const STEP_CLAMP: f64 = 1.5;

impl<'a> NewtonSystem<'a> {
    pub fn new(space: &'a SpaceModel, class_of: Vec<usize>) -> Self {
        let classes = class_of.iter().max().map_or(0, |m| m + 1);
        Self {
            space,
            class_of,
            classes,
            max_iter: 200,
            tol: 1e-12,
        }
    }

    pub fn unknowns(&self) -> usize {
        self.classes
    }

    pub fn lift(&self, z: &[f64]) -> Vec<f64> {
        self.class_of.iter().map(|&c| z[c].exp()).collect()
    }

    /// Residual vector `(2ρ_k − 2ρ_last, gauge)` and its Jacobian in `z`.
    fn system(&self, z: &[f64]) -> (DVector<f64>, DMatrix<f64>) {
        let x = self.lift(z);
        let (rho, jac) = rho_with_jacobian(self.space, &x);
        let r = x.len();
        let n = f64::from(self.space.n());
        let d = self.space.dims_f64();
        let mut f = DVector::<f64>::zeros(r);
        let mut j = DMatrix::<f64>::zeros(r, self.classes);
        let last = r - 1;
        for k in 0..last {
            f[k] = 2.0 * (rho[k] - rho[last]);
            for m in 0..r {
                j[(k, self.class_of[m])] += 2.0 * (jac[(k, m)] - jac[(last, m)]);
            }
        }
        f[last] = (0..r).map(|i| d[i] * x[i].ln()).sum::<f64>() / n;
        for m in 0..r {
            j[(last, self.class_of[m])] += d[m] / n;
        }
        (f, j)
    }

    pub fn solve_from(&self, z0: &[f64]) -> Outcome {
        let mut z = DVector::from_column_slice(z0);
        let (mut f, mut j) = self.system(z.as_slice());
        let mut norm = f.norm();
        for _ in 0..self.max_iter {
            if !norm.is_finite() {
                return Outcome::Diverged;
            }
            let svd = j.clone().svd(true, true);
            let Ok(mut step) = svd.solve(&(-&f), 1e-12 * svd.singular_values.max()) else {
                return Outcome::Stalled;
            };
            let big = step.amax();
            if big > STEP_CLAMP {
                step *= STEP_CLAMP / big;
            }
            let mut alpha = 1.0;
            let mut accepted = None;
            while alpha > 1e-4 {
                let trial = &z + &step * alpha;
                if trial.amax() > LOG_LIMIT {
                    return Outcome::Diverged;
                }
                let (tf, tj) = self.system(trial.as_slice());
                let tn = tf.norm();
                if tn.is_finite() && (tn < norm || tn <= 1e-15) {
                    accepted = Some((trial, tf, tj, tn));
                    break;
                }
                alpha *= 0.5;
            }
            let Some((trial, tf, tj, tn)) = accepted else {
                return self.finish(z.as_slice());
            };
            let moved = (&trial - &z).amax();
            z = trial;
            f = tf;
            j = tj;
            norm = tn;
            if moved < 1e-12 {
                break;
            }
        }
        self.finish(z.as_slice())
    }

    fn finish(&self, z: &[f64]) -> Outcome {
        let x = self.lift(z);
        if residual_of(self.space, &x) < self.tol {
            Outcome::Converged(x)
        } else {
            Outcome::Stalled
        }
    }
}
