//! Ricci eigenvalues, Einstein residuals and scalar curvature of invariant
//! metrics, plus derivatives of the normalized scalar curvature along curves.

pub mod curve;
pub mod exact;

use serde::{Deserialize, Serialize};

use crate::model::{InvariantMetric, SpaceModel};

pub use curve::{scn_derivative_along_curve, CurveError, CurveSpec, Parametrization};

/// Ricci eigenvalues `ρ_k` and how far they are from being equal.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RicciData {
    pub rho: Vec<f64>,
    /// Mean of `2ρ_k`.
    pub two_rho_mean: f64,
    /// `max_k |2ρ_k − mean| / mean`.
    pub residual: f64,
}

impl RicciData {
    fn from_rho(rho: Vec<f64>) -> Self {
        let two_rho_mean = 2.0 * rho.iter().sum::<f64>() / rho.len() as f64;
        let residual = relative_spread(&rho, two_rho_mean);
        Self {
            rho,
            two_rho_mean,
            residual,
        }
    }
}

fn relative_spread(rho: &[f64], two_rho_mean: f64) -> f64 {
    rho.iter()
        .map(|r| (2.0 * r - two_rho_mean).abs())
        .fold(0.0, f64::max)
        / two_rho_mean.abs()
}

/// `ρ_k` for raw coordinates; `x` must have one positive entry per summand.
pub fn rho_of(space: &SpaceModel, x: &[f64]) -> Vec<f64> {
    let dims = space.dims();
    let mut sums = vec![0.0; x.len()];
    for &([a, b, c], value) in space.fast_triples() {
        // each distinct member k of the triple pairs with the other two,
        // counted once per ordered arrangement of that pair
        let members = [(a, b, c), (b, a, c), (c, a, b)];
        for (pos, &(k, i, j)) in members.iter().enumerate() {
            // a repeated index is handled at its first position only
            if members[..pos].iter().any(|m| m.0 == k) {
                continue;
            }
            let ordered = if i == j { 1.0 } else { 2.0 };
            sums[k] +=
                ordered * value * (x[k] * x[k] - x[i] * x[i] - x[j] * x[j]) / (x[i] * x[j] * x[k]);
        }
    }
    x.iter()
        .zip(dims)
        .zip(sums)
        .map(|((&xk, &d), s)| 0.5 / xk + s / (4.0 * f64::from(d)))
        .collect()
}

/// Scalar curvature for raw coordinates.
pub fn scalar_of(space: &SpaceModel, x: &[f64]) -> f64 {
    let first: f64 = space
        .dims()
        .iter()
        .zip(x)
        .map(|(&d, &v)| f64::from(d) / v)
        .sum();
    let mut second = 0.0;
    for &([a, b, c], value) in space.fast_triples() {
        // sum over distinct orderings (i,j,k) of x_k / (x_i x_j)
        let term = |i: usize, j: usize, k: usize| x[k] / (x[i] * x[j]);
        second += value
            * if a == b && b == c {
                term(a, a, a)
            } else if a == b {
                term(a, a, c) + 2.0 * term(a, c, a)
            } else if b == c {
                2.0 * term(a, b, b) + term(b, b, a)
            } else {
                2.0 * (term(a, b, c) + term(a, c, b) + term(b, c, a))
            };
    }
    0.5 * first - 0.25 * second
}

/// Normalized scalar curvature for raw coordinates.
pub fn normalized_scalar_of(space: &SpaceModel, x: &[f64]) -> f64 {
    let n = f64::from(space.n());
    let log_volume: f64 = space
        .dims()
        .iter()
        .zip(x)
        .map(|(&d, &v)| f64::from(d) * v.ln())
        .sum();
    (log_volume / n).exp() * scalar_of(space, x)
}

pub fn ricci_eigenvalues(metric: &InvariantMetric) -> RicciData {
    RicciData::from_rho(rho_of(metric.space(), metric.coords()))
}

pub fn einstein_residual(metric: &InvariantMetric) -> f64 {
    ricci_eigenvalues(metric).residual
}

pub(crate) fn residual_of(space: &SpaceModel, x: &[f64]) -> f64 {
    let rho = rho_of(space, x);
    let two_rho_mean = 2.0 * rho.iter().sum::<f64>() / rho.len() as f64;
    relative_spread(&rho, two_rho_mean)
}

pub fn scalar_curvature(metric: &InvariantMetric) -> f64 {
    scalar_of(metric.space(), metric.coords())
}

pub fn normalized_scalar_curvature(metric: &InvariantMetric) -> f64 {
    normalized_scalar_of(metric.space(), metric.coords())
}

/// Ricci tensor relative to the background inner product: `ρ_k · x_k`.
pub fn ricci_tensor_components(metric: &InvariantMetric) -> Vec<f64> {
    rho_of(metric.space(), metric.coords())
        .iter()
        .zip(metric.coords())
        .map(|(r, x)| r * x)
        .collect()
}

/// Summary emitted by the `analyze` command.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Analysis {
    pub rho: Vec<f64>,
    pub two_rho: f64,
    pub residual: f64,
    pub sc: f64,
    pub sc_n: f64,
}

pub fn analyze(metric: &InvariantMetric) -> Analysis {
    let data = ricci_eigenvalues(metric);
    Analysis {
        two_rho: data.two_rho_mean,
        residual: data.residual,
        rho: data.rho,
        sc: scalar_curvature(metric),
        sc_n: normalized_scalar_curvature(metric),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::catalog::catalog_space;
    use std::sync::Arc;

    fn metric(id: &str, x: &[f64]) -> InvariantMetric {
        InvariantMetric::new(&Arc::new(catalog_space(id).unwrap()), x.to_vec()).unwrap()
    }

    #[test]
    fn standard_metrics() {
        let f3 = ricci_eigenvalues(&metric("f3", &[1.0; 3]));
        assert!(f3.rho.iter().all(|r| (2.0 * r - 5.0 / 6.0).abs() < 1e-15));
        assert_eq!(f3.residual, 0.0);
        let f5 = metric("f5", &[1.0; 10]);
        assert!((ricci_eigenvalues(&f5).two_rho_mean - 0.7).abs() < 1e-15);
        assert!((normalized_scalar_curvature(&f5) - 7.0).abs() < 1e-13);
        let f4 = metric("f4", &[1.0; 6]);
        assert!((normalized_scalar_curvature(&f4) - 4.5).abs() < 1e-13);
    }

    #[test]
    fn arvanitoyeorgos_f4() {
        let m = metric("f4", &[3.0, 3.0, 3.0, 5.0, 5.0, 5.0]);
        let data = ricci_eigenvalues(&m);
        assert!((data.two_rho_mean - 7.0 / 36.0).abs() < 1e-15);
        assert!(data.residual < 1e-14);
    }

    #[test]
    fn kahler_f5() {
        let m = metric("f5", &[1.0, 1.0, 2.0, 2.0, 2.0, 1.0, 3.0, 3.0, 1.0, 4.0]);
        let expected = 4.0 * 2f64.sqrt() * 3f64.powf(0.2);
        assert!((normalized_scalar_curvature(&m) - expected).abs() < 1e-12);
        assert!(einstein_residual(&m) < 1e-14);
    }

    #[test]
    fn scalar_is_weighted_ricci_trace() {
        for (id, x) in [
            ("g2-t2", vec![1.0, 0.3, 1.1, 0.9, 1.2, 1.7]),
            ("sp3-t3", vec![1.0, 0.4, 0.7, 1.3, 0.5, 0.9, 1.1, 0.6, 1.4]),
        ] {
            let m = metric(id, &x);
            let trace: f64 = ricci_eigenvalues(&m)
                .rho
                .iter()
                .zip(m.space().dims())
                .map(|(r, &d)| r * f64::from(d))
                .sum();
            assert!((trace - scalar_curvature(&m)).abs() < 1e-13);
        }
    }

    #[test]
    fn repeated_index_triples() {
        // [1 1 2] pairs summand 1 with itself
        let s = Arc::new(
            SpaceModel::new(
                "rep",
                vec![3, 2],
                &[(1, 1, 2, num_rational::Rational64::new(1, 2))],
            )
            .unwrap(),
        );
        let x = [1.3, 0.7];
        let m = InvariantMetric::new(&s, x.to_vec()).unwrap();
        let rho = ricci_eigenvalues(&m).rho;
        let v = 0.5;
        let rho1 = 0.5 / x[0]
            + 2.0 * v * (x[0] * x[0] - x[0] * x[0] - x[1] * x[1]) / (x[0] * x[0] * x[1]) / 12.0;
        let rho2 = 0.5 / x[1] + v * (x[1] * x[1] - 2.0 * x[0] * x[0]) / (x[0] * x[0] * x[1]) / 8.0;
        assert!((rho[0] - rho1).abs() < 1e-15, "{} {}", rho[0], rho1);
        assert!((rho[1] - rho2).abs() < 1e-15);
        let sc = 0.5 * (3.0 / x[0] + 2.0 / x[1]) - 0.25 * v * (x[1] / (x[0] * x[0]) + 2.0 / x[1]);
        assert!((scalar_curvature(&m) - sc).abs() < 1e-15);
        let trace = 3.0 * rho[0] + 2.0 * rho[1];
        assert!((trace - sc).abs() < 1e-14);
    }

    #[test]
    fn ricci_components() {
        let x = [3.0, 1.0, 4.0, 5.0, 6.0, 9.0];
        let m = metric("g2-t2", &x);
        let comps = ricci_tensor_components(&m);
        for (c, v) in comps.iter().zip(x) {
            assert!((c - v / 12.0).abs() < 1e-14);
        }
    }
}
