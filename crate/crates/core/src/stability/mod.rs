//! The stability matrix `[L_p]` of an invariant metric, its spectrum, the
//! resulting stability type and coindex, and scale-invariant fingerprints
//! for telling Einstein metrics apart up to homothety.
//!
//! `[L_p]` always annihilates the vector `(√d_k)`, the direction of
//! rescaling the metric. That one zero eigenvalue is set aside: `λ_p`,
//! `λ_p^max` and the coindex are read from the remaining `r − 1`
//! eigenvalues.

pub mod cluster;
pub mod eigen;

use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::curvature::ricci_eigenvalues;
use crate::model::{InvariantMetric, SpaceModel};

pub use cluster::{cluster_spectrum, Cluster};
pub use eigen::{sym_eigen, sym_eigenvalues, EigenError, EigenPair};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum StabilityError {
    #[error("metric is not Einstein (relative residual {residual:e} above {threshold:e})")]
    NotEinstein { residual: f64, threshold: f64 },
    #[error("a stability report needs at least two summands")]
    TooFewSummands,
    #[error(transparent)]
    Eigen(#[from] EigenError),
}

/// `[L_p]` in the orthonormal basis `{I_k / √d_k}`.
#[derive(Debug, Clone)]
pub struct StabilityMatrix {
    space: Arc<SpaceModel>,
    entries: DMatrix<f64>,
}

impl StabilityMatrix {
    pub fn space(&self) -> &Arc<SpaceModel> {
        &self.space
    }

    pub fn entries(&self) -> &DMatrix<f64> {
        &self.entries
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        self.entries
            .row_iter()
            .map(|row| row.iter().copied().collect())
            .collect()
    }
}

/// `[L_p]` for raw coordinates.
pub fn lp_of(space: &SpaceModel, x: &[f64]) -> DMatrix<f64> {
    let r = x.len();
    let d = space.dims_f64();
    let mut m = DMatrix::<f64>::zeros(r, r);
    for &([a, b, c], value) in space.fast_triples() {
        let mut perms = [
            [a, b, c],
            [a, c, b],
            [b, a, c],
            [b, c, a],
            [c, a, b],
            [c, b, a],
        ];
        perms.sort_unstable();
        let mut prev: Option<[usize; 3]> = None;
        for p in perms {
            if prev == Some(p) {
                continue;
            }
            prev = Some(p);
            let [i, j, k] = p;
            if i != k && j != k {
                m[(k, k)] += value * x[k] / (x[i] * x[j]) / d[k];
            }
            if j != k {
                m[(j, k)] += value * (x[i] * x[i] - x[j] * x[j] - x[k] * x[k])
                    / (x[i] * x[j] * x[k])
                    / (d[j] * d[k]).sqrt();
            }
        }
        // [i k k]: summand k appears twice
        if a == b && b != c {
            m[(a, a)] += value * x[c] / (x[a] * x[a]) / d[a];
        }
        if b == c && a != b {
            m[(b, b)] += value * x[a] / (x[b] * x[b]) / d[b];
        }
    }
    m
}

pub fn assemble_lp(metric: &InvariantMetric) -> StabilityMatrix {
    StabilityMatrix {
        space: Arc::clone(metric.space()),
        entries: lp_of(metric.space(), metric.coords()),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReportOptions {
    /// Relative tolerance for clustering eigenvalues and for every
    /// comparison against `2ρ`.
    pub rel_tol: f64,
    /// Largest Einstein residual accepted before reporting.
    pub einstein_tol: f64,
    /// Certification tolerance for the eigensolver.
    pub eigen_tol: f64,
}

impl ReportOptions {
    /// For metrics refined to near machine precision.
    pub fn refined() -> Self {
        Self {
            rel_tol: 1e-8,
            einstein_tol: 1e-9,
            eigen_tol: 1e-12,
        }
    }

    /// For solver output: at a degenerate critical point the residual is
    /// quadratic in the coordinate error, so coordinates are only located
    /// to about the square root of machine precision.
    pub fn located() -> Self {
        Self {
            rel_tol: 1e-6,
            einstein_tol: 1e-9,
            eigen_tol: 1e-12,
        }
    }

    /// For coordinates quoted to about four decimals.
    pub fn quoted() -> Self {
        Self {
            rel_tol: 1e-4,
            einstein_tol: 1e-2,
            eigen_tol: 1e-12,
        }
    }
}

impl Default for ReportOptions {
    fn default() -> Self {
        Self::refined()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilityFlags {
    pub stable: bool,
    pub unstable: bool,
    pub degenerate: bool,
    pub local_minimum: bool,
}

impl StabilityFlags {
    pub fn describe(&self) -> String {
        let mut parts = Vec::new();
        if self.local_minimum {
            parts.push("local min.");
        }
        parts.push(if self.degenerate { "deg." } else { "non-deg." });
        if self.stable {
            parts.push("stable");
        }
        if self.unstable {
            parts.push("unstable");
        }
        parts.join(", ")
    }
}

/// Scale-invariant summary of a spectrum.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Fingerprint {
    pub coindex: usize,
    pub degenerate: bool,
    /// Multiplicity of the zero eigenvalue over the full spectrum.
    pub zero_multiplicity: usize,
    /// Multiplicities of the clusters of the reduced spectrum, ascending.
    pub multiplicity_pattern: Vec<usize>,
    /// Cluster values of the reduced spectrum divided by `2ρ`.
    pub normalized: Vec<f64>,
    /// `λ_p^max / λ_p`, absent when `λ_p` vanishes.
    pub extremal_ratio: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralReport {
    /// Full spectrum of `[L_p]`, clustered.
    pub eigenvalues: Vec<Cluster>,
    pub two_rho: f64,
    pub residual: f64,
    pub lambda_p: f64,
    pub lambda_p_max: f64,
    pub coindex: usize,
    pub flags: StabilityFlags,
    pub fingerprint: Fingerprint,
}

impl SpectralReport {
    pub fn multiplicity_sum(&self) -> usize {
        self.eigenvalues.iter().map(|c| c.multiplicity).sum()
    }
}

/// Eigenvalues of `[L_p]` with the scaling direction removed, ascending.
pub fn reduced_spectrum(
    space: &SpaceModel,
    lp: &DMatrix<f64>,
    tol: f64,
) -> Result<(Vec<f64>, Vec<f64>), EigenError> {
    let pairs = sym_eigen(lp, tol)?;
    let scale =
        DVector::from_iterator(space.r(), space.dims().iter().map(|&d| f64::from(d).sqrt()))
            .normalize();
    let kernel = pairs
        .iter()
        .enumerate()
        .max_by(|(_, a), (_, b)| {
            a.vector
                .dot(&scale)
                .abs()
                .total_cmp(&b.vector.dot(&scale).abs())
        })
        .map(|(i, _)| i)
        .unwrap_or(0);
    let full: Vec<f64> = pairs.iter().map(|p| p.value).collect();
    let reduced = pairs
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != kernel)
        .map(|(_, p)| p.value)
        .collect();
    Ok((full, reduced))
}

pub fn stability_report(
    metric: &InvariantMetric,
    opts: &ReportOptions,
) -> Result<SpectralReport, StabilityError> {
    let space = metric.space();
    if space.r() < 2 {
        return Err(StabilityError::TooFewSummands);
    }
    let ricci = ricci_eigenvalues(metric);
    if ricci.residual.is_nan() || ricci.residual > opts.einstein_tol {
        return Err(StabilityError::NotEinstein {
            residual: ricci.residual,
            threshold: opts.einstein_tol,
        });
    }
    let two_rho = ricci.two_rho_mean;
    let lp = lp_of(space, metric.coords());
    let (full, reduced) = reduced_spectrum(space, &lp, opts.eigen_tol)?;

    // cluster on λ/2ρ so every decision below is unchanged by rescaling
    let tol = opts.rel_tol;
    let norm = |v: &[f64]| v.iter().map(|l| l / two_rho).collect::<Vec<f64>>();
    let full_clusters = cluster_spectrum(&norm(&full), tol);
    let reduced_clusters = cluster_spectrum(&norm(&reduced), tol);

    let lambda_p = reduced_clusters.first().map(|c| c.value).unwrap_or(0.0);
    let lambda_max = reduced_clusters.last().map(|c| c.value).unwrap_or(0.0);
    let coindex = reduced_clusters
        .iter()
        .filter(|c| c.value < 1.0 - tol)
        .map(|c| c.multiplicity)
        .sum();
    let degenerate = reduced_clusters
        .iter()
        .any(|c| (c.value - 1.0).abs() <= tol);
    let flags = StabilityFlags {
        stable: lambda_p > 1.0 + tol,
        unstable: lambda_p < 1.0 - tol,
        degenerate,
        local_minimum: lambda_max < 1.0 - tol,
    };
    let zero_multiplicity = full_clusters
        .iter()
        .filter(|c| c.value.abs() <= tol)
        .map(|c| c.multiplicity)
        .sum();
    let extremal_ratio = (lambda_p.abs() > tol).then(|| lambda_max / lambda_p);
    let fingerprint = Fingerprint {
        coindex,
        degenerate,
        zero_multiplicity,
        multiplicity_pattern: reduced_clusters.iter().map(|c| c.multiplicity).collect(),
        normalized: reduced_clusters.iter().map(|c| c.value).collect(),
        extremal_ratio,
    };
    Ok(SpectralReport {
        eigenvalues: full_clusters
            .iter()
            .map(|c| Cluster {
                value: if c.value.abs() <= tol {
                    0.0
                } else {
                    c.value * two_rho
                },
                multiplicity: c.multiplicity,
            })
            .collect(),
        two_rho,
        residual: ricci.residual,
        lambda_p: if lambda_p.abs() <= tol {
            0.0
        } else {
            lambda_p * two_rho
        },
        lambda_p_max: lambda_max * two_rho,
        coindex,
        flags,
        fingerprint,
    })
}

/// The scale-invariant part of a report.
pub fn homothety_fingerprint(report: &SpectralReport) -> &Fingerprint {
    &report.fingerprint
}

/// Why two reports cannot come from homothetic metrics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "reason", rename_all = "kebab-case")]
pub enum Distinction {
    Coindex {
        a: usize,
        b: usize,
    },
    DegenerateFlag {
        a: bool,
        b: bool,
    },
    ZeroEigenvalue {
        a: usize,
        b: usize,
    },
    MultiplicityPattern {
        a: Vec<usize>,
        b: Vec<usize>,
    },
    /// Extremal ratios `λ_p^max/λ_p` when both exist and differ, otherwise
    /// the first pair of differing normalized eigenvalues.
    EigenvalueRatio {
        a: f64,
        b: f64,
    },
}

impl Distinction {
    pub fn code(&self) -> &'static str {
        match self {
            Self::Coindex { .. } => "coindex",
            Self::DegenerateFlag { .. } => "degenerate-flag",
            Self::ZeroEigenvalue { .. } => "zero-eigenvalue",
            Self::MultiplicityPattern { .. } => "multiplicity-pattern",
            Self::EigenvalueRatio { .. } => "eigenvalue-ratio",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Verdict {
    Distinct(Distinction),
    Indistinguishable,
}

impl Verdict {
    pub fn is_distinct(&self) -> bool {
        matches!(self, Self::Distinct(_))
    }
}

pub const DISTINGUISH_TOL: f64 = 1e-6;

/// Compares two fingerprints, reporting the first scale-invariant datum
/// that differs by more than `tol` (relative).
pub fn distinguish_fingerprints(a: &Fingerprint, b: &Fingerprint, tol: f64) -> Verdict {
    let differs = |u: f64, v: f64| (u - v).abs() > tol * u.abs().max(v.abs()).max(1.0);
    if a.coindex != b.coindex {
        return Verdict::Distinct(Distinction::Coindex {
            a: a.coindex,
            b: b.coindex,
        });
    }
    if a.degenerate != b.degenerate {
        return Verdict::Distinct(Distinction::DegenerateFlag {
            a: a.degenerate,
            b: b.degenerate,
        });
    }
    if a.zero_multiplicity != b.zero_multiplicity {
        return Verdict::Distinct(Distinction::ZeroEigenvalue {
            a: a.zero_multiplicity,
            b: b.zero_multiplicity,
        });
    }
    if a.multiplicity_pattern != b.multiplicity_pattern {
        return Verdict::Distinct(Distinction::MultiplicityPattern {
            a: a.multiplicity_pattern.clone(),
            b: b.multiplicity_pattern.clone(),
        });
    }
    if let (Some(u), Some(v)) = (a.extremal_ratio, b.extremal_ratio) {
        if differs(u, v) {
            return Verdict::Distinct(Distinction::EigenvalueRatio { a: u, b: v });
        }
    }
    if let Some((&u, &v)) = a
        .normalized
        .iter()
        .zip(&b.normalized)
        .find(|(&u, &v)| differs(u, v))
    {
        return Verdict::Distinct(Distinction::EigenvalueRatio { a: u, b: v });
    }
    Verdict::Indistinguishable
}

pub fn distinguish(a: &SpectralReport, b: &SpectralReport) -> Verdict {
    distinguish_fingerprints(&a.fingerprint, &b.fingerprint, DISTINGUISH_TOL)
}
