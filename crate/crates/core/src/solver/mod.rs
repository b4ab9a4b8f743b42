//! Numerical search for Einstein metrics: multistart Newton in
//! log-coordinates, optional reduction to an ansatz, refinement of quoted
//! metrics, and deduplication up to scaling and automorphisms.

pub mod newton;
pub mod poly;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::curvature::{einstein_residual, residual_of};
use crate::model::{
    canonicalize_metric, detect_symmetries, InvariantMetric, ModelError, SearchOptions, SpaceModel,
    SymmetryGroup,
};
use crate::stability::{stability_report, ReportOptions, SpectralReport, StabilityError};

pub use newton::{NewtonSystem, Outcome};
pub use poly::{real_roots, Polynomial};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SolveError {
    #[error("invalid ansatz: {0}")]
    InvalidAnsatz(String),
    #[error("metric is outside the Newton basin (relative residual {residual:e})")]
    DivergedFromBasin { residual: f64 },
    #[error("invalid solver options: {0}")]
    InvalidOptions(String),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Stability(#[from] StabilityError),
}

/// Summands forced to share one coordinate, stored 0-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ansatz {
    classes: Vec<Vec<usize>>,
}

impl Ansatz {
    /// Every summand on its own.
    pub fn trivial(r: usize) -> Self {
        Self {
            classes: (0..r).map(|i| vec![i]).collect(),
        }
    }

    /// Classes of 1-based summand indices; they must partition `1..=r`.
    pub fn new(r: usize, classes: Vec<Vec<usize>>) -> Result<Self, SolveError> {
        let mut seen = vec![false; r];
        let mut zero_based = Vec::with_capacity(classes.len());
        for class in classes {
            if class.is_empty() {
                return Err(SolveError::InvalidAnsatz("empty class".into()));
            }
            let mut members = Vec::with_capacity(class.len());
            for i in class {
                if i == 0 || i > r {
                    return Err(SolveError::InvalidAnsatz(format!(
                        "index {i} outside 1..={r}"
                    )));
                }
                if std::mem::replace(&mut seen[i - 1], true) {
                    return Err(SolveError::InvalidAnsatz(format!(
                        "index {i} appears twice"
                    )));
                }
                members.push(i - 1);
            }
            zero_based.push(members);
        }
        if let Some(missing) = seen.iter().position(|s| !s) {
            return Err(SolveError::InvalidAnsatz(format!(
                "index {} is not covered",
                missing + 1
            )));
        }
        Ok(Self {
            classes: zero_based,
        })
    }

    /// Parses `"1,2,3|4,5,6"` for a space with `r` summands.
    pub fn parse(r: usize, text: &str) -> Result<Self, SolveError> {
        let classes = text
            .split('|')
            .map(|class| {
                class
                    .split(',')
                    .map(|i| {
                        usize::from_str(i.trim()).map_err(|_| {
                            SolveError::InvalidAnsatz(format!("`{}` is not an index", i.trim()))
                        })
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(r, classes)
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    fn class_of(&self) -> Vec<usize> {
        let r = self.classes.iter().map(Vec::len).sum();
        let mut out = vec![0; r];
        for (c, class) in self.classes.iter().enumerate() {
            for &i in class {
                out[i] = c;
            }
        }
        out
    }
}

impl fmt::Display for Ansatz {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text: Vec<String> = self
            .classes
            .iter()
            .map(|c| {
                c.iter()
                    .map(|i| (i + 1).to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect();
        write!(f, "{}", text.join("|"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolveOptions {
    /// Number of starts; `None` means `10·3^p` for `p` unknowns, capped.
    pub starts: Option<usize>,
    pub seed: u64,
    /// Starts are drawn from `[−w, w]` in each log-coordinate.
    pub box_half_width: f64,
    /// Certification threshold on the relative Einstein residual.
    pub tol: f64,
    /// Relative tolerance when comparing canonical forms.
    pub dedup_tol: f64,
    pub parallel: bool,
}

pub const MAX_STARTS: usize = 1_000_000;

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            starts: None,
            seed: 0,
            box_half_width: 6f64.ln(),
            tol: 1e-12,
            dedup_tol: 1e-6,
            parallel: true,
        }
    }
}

impl SolveOptions {
    pub fn with_starts(starts: usize) -> Self {
        Self {
            starts: Some(starts),
            ..Self::default()
        }
    }

    fn start_count(&self, unknowns: usize) -> usize {
        self.starts.unwrap_or_else(|| {
            let p = u32::try_from(unknowns).unwrap_or(u32::MAX).min(13);
            (10 * 3usize.pow(p)).min(MAX_STARTS)
        })
    }
}

/// One homothety class of Einstein metrics.
#[derive(Debug, Clone)]
pub struct Solution {
    /// Representative with first coordinate 1.
    pub metric: InvariantMetric,
    /// Volume-normalized, lexicographically minimal form over the group orbit.
    pub canonical: Vec<f64>,
    pub residual: f64,
    pub report: SpectralReport,
    /// How many starts converged into this class.
    pub hits: usize,
}

#[derive(Debug, Clone)]
pub struct SolutionSet {
    pub space: Arc<SpaceModel>,
    pub solutions: Vec<Solution>,
    pub group: SymmetryGroup,
    pub ansatz: Ansatz,
    pub starts: usize,
    pub converged: usize,
    /// Distinct converged metrics up to scaling only, before the group acts.
    pub raw_count: usize,
}

impl SolutionSet {
    pub fn len(&self) -> usize {
        self.solutions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.solutions.is_empty()
    }

    /// Index of the class containing `metric`, if any.
    pub fn find(&self, metric: &InvariantMetric, tol: f64) -> Option<usize> {
        let c = canonicalize_metric(metric, &self.group);
        self.solutions
            .iter()
            .position(|s| close(&s.canonical, c.coords(), tol))
    }

    pub fn summary(&self) -> SolutionSummary {
        SolutionSummary {
            space: self.space.name().to_string(),
            ansatz: self.ansatz.to_string(),
            starts: self.starts,
            converged: self.converged,
            raw_count: self.raw_count,
            group_order: self.group.order().to_string(),
            normalization: "first coordinate 1; canonical form volume 1, lexicographically minimal over automorphisms".into(),
            classes: self
                .solutions
                .iter()
                .map(|s| ClassSummary {
                    coords: s.metric.coords().to_vec(),
                    canonical: s.canonical.clone(),
                    residual: s.residual,
                    hits: s.hits,
                    report: s.report.clone(),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolutionSummary {
    pub space: String,
    pub ansatz: String,
    pub starts: usize,
    pub converged: usize,
    pub raw_count: usize,
    pub group_order: String,
    pub normalization: String,
    pub classes: Vec<ClassSummary>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassSummary {
    pub coords: Vec<f64>,
    pub canonical: Vec<f64>,
    pub residual: f64,
    pub hits: usize,
    pub report: SpectralReport,
}

fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
    a.len() == b.len()
        && a.iter()
            .zip(b)
            .all(|(u, v)| (u - v).abs() <= tol * u.abs().max(v.abs()))
}

/// Latin hypercube sample of `count` points in `[−w, w]^dim`.
fn latin_hypercube(count: usize, dim: usize, w: f64, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut columns: Vec<Vec<f64>> = Vec::with_capacity(dim);
    for _ in 0..dim {
        let mut slots: Vec<usize> = (0..count).collect();
        slots.shuffle(&mut rng);
        columns.push(
            slots
                .into_iter()
                .map(|s| {
                    let u: f64 = rng.gen();
                    -w + 2.0 * w * (s as f64 + u) / count as f64
                })
                .collect(),
        );
    }
    (0..count)
        .map(|i| columns.iter().map(|c| c[i]).collect())
        .collect()
}

fn run_starts(system: &NewtonSystem<'_>, starts: &[Vec<f64>], parallel: bool) -> Vec<Outcome> {
    #[cfg(feature = "parallel")]
    if parallel {
        use rayon::prelude::*;
        return starts.par_iter().map(|z| system.solve_from(z)).collect();
    }
    let _ = parallel;
    starts.iter().map(|z| system.solve_from(z)).collect()
}

pub fn solve_einstein(
    space: &Arc<SpaceModel>,
    opts: &SolveOptions,
) -> Result<SolutionSet, SolveError> {
    solve_with_ansatz(space, &Ansatz::trivial(space.r()), opts)
}

pub fn solve_with_ansatz(
    space: &Arc<SpaceModel>,
    ansatz: &Ansatz,
    opts: &SolveOptions,
) -> Result<SolutionSet, SolveError> {
    if ansatz.class_of().len() != space.r() {
        return Err(SolveError::InvalidAnsatz(format!(
            "ansatz covers {} summands, space has {}",
            ansatz.class_of().len(),
            space.r()
        )));
    }
    if !(opts.box_half_width.is_finite() && opts.box_half_width > 0.0) {
        return Err(SolveError::InvalidOptions(
            "box half-width must be positive".into(),
        ));
    }
    let count = opts.start_count(ansatz.len());
    if count == 0 {
        return Err(SolveError::InvalidOptions(
            "at least one start is required".into(),
        ));
    }
    let group = detect_symmetries(space, &SearchOptions::default())?;
    let mut system = NewtonSystem::new(space, ansatz.class_of());
    system.tol = 1e-10;
    let starts = latin_hypercube(count, ansatz.len(), opts.box_half_width, opts.seed);
    let outcomes = run_starts(&system, &starts, opts.parallel);

    let mut raw: Vec<Vec<f64>> = Vec::new();
    let mut classes: Vec<(Vec<f64>, Vec<f64>, usize)> = Vec::new();
    let mut converged = 0;
    for outcome in outcomes {
        let Outcome::Converged(x) = outcome else {
            continue;
        };
        converged += 1;
        let metric = InvariantMetric::new(space, x)?;
        let normalized = metric.volume_normalized().into_coords();
        if !raw.iter().any(|r| close(r, &normalized, opts.dedup_tol)) {
            raw.push(normalized);
        }
        let canonical = canonicalize_metric(&metric, &group).into_coords();
        match classes
            .iter_mut()
            .find(|(c, _, _)| close(c, &canonical, opts.dedup_tol))
        {
            Some(entry) => entry.2 += 1,
            None => classes.push((canonical, metric.into_coords(), 1)),
        }
    }

    let mut solutions = Vec::with_capacity(classes.len());
    for (canonical, _, hits) in classes {
        let first = canonical[0];
        let seed = InvariantMetric::new(space, canonical.iter().map(|v| v / first).collect())?;
        let metric = polish(&seed, ansatz, opts.tol)?;
        let residual = einstein_residual(&metric);
        let report = stability_report(&metric, &ReportOptions::located())?;
        let canonical = canonicalize_metric(&metric, &group).into_coords();
        solutions.push(Solution {
            metric,
            canonical,
            residual,
            report,
            hits,
        });
    }
    solutions.sort_by(|a, b| {
        a.canonical
            .partial_cmp(&b.canonical)
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    Ok(SolutionSet {
        space: Arc::clone(space),
        solutions,
        group,
        ansatz: ansatz.clone(),
        starts: count,
        converged,
        raw_count: raw.len(),
    })
}

// Newton restarted from a converged point, keeping the first coordinate.
fn polish(
    metric: &InvariantMetric,
    ansatz: &Ansatz,
    tol: f64,
) -> Result<InvariantMetric, SolveError> {
    let residual = einstein_residual(metric);
    if residual < tol {
        return Ok(metric.clone());
    }
    let class_of = ansatz.class_of();
    let space = metric.space();
    let mut system = NewtonSystem::new(space, class_of.clone());
    system.tol = tol;
    let mut z = vec![0.0; ansatz.len()];
    for (i, &c) in class_of.iter().enumerate() {
        z[c] = metric.coords()[i].ln();
    }
    // move into the volume gauge used by the system
    let shift = metric.log_volume_mean();
    for v in &mut z {
        *v -= shift;
    }
    match system.solve_from(&z) {
        Outcome::Converged(x) => {
            let factor = metric.coords()[0] / x[0];
            Ok(InvariantMetric::new(
                space,
                x.iter().map(|v| v * factor).collect(),
            )?)
        }
        _ => Err(SolveError::DivergedFromBasin { residual }),
    }
}

/// Basin limit for [`refine`].
pub const REFINE_BASIN: f64 = 1e-2;

/// Newton refinement of an approximately Einstein metric, keeping its first
/// coordinate fixed.
pub fn refine(metric: &InvariantMetric, tol: f64) -> Result<InvariantMetric, SolveError> {
    let residual = einstein_residual(metric);
    if residual.is_nan() || residual >= REFINE_BASIN {
        return Err(SolveError::DivergedFromBasin { residual });
    }
    let refined = polish(metric, &Ansatz::trivial(metric.space().r()), tol)?;
    if residual_of(refined.space(), refined.coords()) < tol {
        Ok(refined)
    } else {
        Err(SolveError::DivergedFromBasin { residual })
    }
}
