//! Homogeneous-space data: summand dimensions, structural constants and
//! invariant metrics expressed in coordinates relative to a bi-invariant
//! inner product.
//!
//! Summand indices are 1-based in every public constructor and accessor
//! that takes an index triple, and 0-based when indexing into slices.

pub mod catalog;
pub mod file;
pub mod symmetry;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_rational::Rational64;
use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

pub use symmetry::{
    canonicalize_metric, detect_symmetries, find_isomorphism, Permutation, SearchOptions,
    SymmetryGroup,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ModelError {
    #[error("a space needs at least one summand")]
    Empty,
    #[error("summand {index} has dimension 0")]
    ZeroDimension { index: usize },
    #[error("triple index {index} out of range 1..={r}")]
    IndexOutOfRange { index: usize, r: usize },
    #[error("structural constant [{i} {j} {k}] = {value} must be positive")]
    NonPositiveValue {
        i: usize,
        j: usize,
        k: usize,
        value: String,
    },
    #[error("conflicting values for [{i} {j} {k}]: {first} and {second}")]
    ConflictingTriple {
        i: usize,
        j: usize,
        k: usize,
        first: String,
        second: String,
    },
    #[error("unknown space `{0}`")]
    UnknownSpace(String),
    #[error("metric has {got} coordinates but `{space}` has {expected} summands")]
    LengthMismatch {
        space: String,
        expected: usize,
        got: usize,
    },
    #[error("metric coordinate x_{index} = {value} must be finite and strictly positive")]
    NonPositiveCoordinate { index: usize, value: f64 },
    #[error("symmetry search exceeded its budget of {0} nodes")]
    SearchBudgetExceeded(u64),
    #[error("invalid space file: {0}")]
    InvalidFile(String),
}

/// One structural constant `[ijk]`, stored once per unordered index multiset.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Triple {
    indices: [usize; 3],
    value: Rational64,
}

impl Triple {
    /// Sorted 1-based indices.
    pub fn indices(&self) -> [usize; 3] {
        self.indices
    }

    pub fn value(&self) -> Rational64 {
        self.value
    }

    pub(crate) fn zero_based(&self) -> [usize; 3] {
        [
            self.indices[0] - 1,
            self.indices[1] - 1,
            self.indices[2] - 1,
        ]
    }
}

/// A multiplicity-free homogeneous space described by its isotropy summand
/// dimensions and the nonzero structural constants between summands.
#[derive(Debug, Clone, PartialEq)]
pub struct SpaceModel {
    name: String,
    dims: Vec<u32>,
    triples: Vec<Triple>,
    // (zero-based sorted indices, value) mirrors `triples` for the float kernels
    fast: Vec<([usize; 3], f64)>,
}

impl SpaceModel {
    /// Validates and canonicalizes a space. Triples use 1-based indices in any
    /// order; repeated entries are accepted only when their values agree.
    pub fn new(
        name: impl Into<String>,
        dims: Vec<u32>,
        triples: &[(usize, usize, usize, Rational64)],
    ) -> Result<Self, ModelError> {
        let r = dims.len();
        if r == 0 {
            return Err(ModelError::Empty);
        }
        if let Some(pos) = dims.iter().position(|&d| d == 0) {
            return Err(ModelError::ZeroDimension { index: pos + 1 });
        }
        let mut map: BTreeMap<[usize; 3], Rational64> = BTreeMap::new();
        for &(i, j, k, value) in triples {
            for index in [i, j, k] {
                if index == 0 || index > r {
                    return Err(ModelError::IndexOutOfRange { index, r });
                }
            }
            let mut key = [i, j, k];
            key.sort_unstable();
            if !value.is_positive() {
                return Err(ModelError::NonPositiveValue {
                    i: key[0],
                    j: key[1],
                    k: key[2],
                    value: value.to_string(),
                });
            }
            match map.get(&key) {
                Some(&existing) if existing != value => {
                    return Err(ModelError::ConflictingTriple {
                        i: key[0],
                        j: key[1],
                        k: key[2],
                        first: existing.to_string(),
                        second: value.to_string(),
                    });
                }
                _ => {
                    map.insert(key, value);
                }
            }
        }
        let triples: Vec<Triple> = map
            .into_iter()
            .map(|(indices, value)| Triple { indices, value })
            .collect();
        let fast = triples
            .iter()
            .map(|t| (t.zero_based(), t.value.to_f64().unwrap_or(f64::NAN)))
            .collect();
        Ok(Self {
            name: name.into(),
            dims,
            triples,
            fast,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Number of irreducible summands.
    pub fn r(&self) -> usize {
        self.dims.len()
    }

    pub fn dims(&self) -> &[u32] {
        &self.dims
    }

    /// Total dimension `n = Σ d_i`.
    pub fn n(&self) -> u32 {
        self.dims.iter().sum()
    }

    pub fn triples(&self) -> &[Triple] {
        &self.triples
    }

    /// `[ijk]` for 1-based indices in any order; zero when absent.
    pub fn constant(&self, i: usize, j: usize, k: usize) -> Rational64 {
        let mut key = [i, j, k];
        key.sort_unstable();
        self.triples
            .binary_search_by(|t| t.indices.cmp(&key))
            .map(|pos| self.triples[pos].value)
            .unwrap_or_else(|_| Rational64::zero())
    }

    pub(crate) fn fast_triples(&self) -> &[([usize; 3], f64)] {
        &self.fast
    }

    pub(crate) fn dims_f64(&self) -> Vec<f64> {
        self.dims.iter().map(|&d| f64::from(d)).collect()
    }
}

impl fmt::Display for SpaceModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} (r = {}, n = {})", self.name, self.r(), self.n())?;
        writeln!(f, "dims: {:?}", self.dims)?;
        for t in &self.triples {
            let [i, j, k] = t.indices;
            writeln!(f, "[{i} {j} {k}] = {}", t.value)?;
        }
        Ok(())
    }
}

/// Positive coordinates `(x_1, …, x_r)` of an invariant metric on a space.
#[derive(Debug, Clone)]
pub struct InvariantMetric {
    space: Arc<SpaceModel>,
    x: Vec<f64>,
}

impl InvariantMetric {
    pub fn new(space: &Arc<SpaceModel>, x: Vec<f64>) -> Result<Self, ModelError> {
        if x.len() != space.r() {
            return Err(ModelError::LengthMismatch {
                space: space.name().to_string(),
                expected: space.r(),
                got: x.len(),
            });
        }
        if let Some(pos) = x.iter().position(|v| !(v.is_finite() && *v > 0.0)) {
            return Err(ModelError::NonPositiveCoordinate {
                index: pos + 1,
                value: x[pos],
            });
        }
        Ok(Self {
            space: Arc::clone(space),
            x,
        })
    }

    pub fn space(&self) -> &Arc<SpaceModel> {
        &self.space
    }

    pub fn coords(&self) -> &[f64] {
        &self.x
    }

    pub fn into_coords(self) -> Vec<f64> {
        self.x
    }

    /// The homothetic metric `c·x`.
    pub fn scaled(&self, c: f64) -> Result<Self, ModelError> {
        Self::new(&self.space, self.x.iter().map(|v| v * c).collect())
    }

    /// The metric `σ·x`, whose coordinate on summand `σ(i)` is `x_i`.
    pub fn permuted(&self, sigma: &Permutation) -> Self {
        Self {
            space: Arc::clone(&self.space),
            x: sigma.act(&self.x),
        }
    }

    /// Rescales so that `(Π x_i^{d_i})^{1/n} = 1`.
    pub fn volume_normalized(&self) -> Self {
        let log_mean = self.log_volume_mean();
        Self {
            space: Arc::clone(&self.space),
            x: self.x.iter().map(|v| v / log_mean.exp()).collect(),
        }
    }

    /// `(1/n) Σ d_i ln x_i`.
    pub fn log_volume_mean(&self) -> f64 {
        let n = f64::from(self.space.n());
        self.space
            .dims()
            .iter()
            .zip(&self.x)
            .map(|(&d, v)| f64::from(d) * v.ln())
            .sum::<f64>()
            / n
    }
}

impl fmt::Display for InvariantMetric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.x.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// Parses `"p/q"` or `"p"` into a rational.
pub fn parse_rational(s: &str) -> Result<Rational64, ModelError> {
    s.trim()
        .parse::<Rational64>()
        .map_err(|e| ModelError::InvalidFile(format!("bad rational `{s}`: {e}")))
}
