//! Full flag manifolds F(n) = SU(n)/T: models under the lexicographic pair
//! order, classic Einstein families, the explicit F(5) metrics and the
//! reduced curvature formulas.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::curvature::exact::to_f64;
use crate::curvature::{residual_of, rho_of, scalar_of, CurveSpec, Parametrization};
use crate::model::{InvariantMetric, SpaceModel};
use crate::solver::poly::{real_root_intervals, Polynomial};
use crate::solver::Ansatz;

/// Largest `n` served by [`build_fn`].
pub const MAX_N: usize = 12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FlagError {
    #[error("F(n) is supported for 3 ≤ n ≤ {MAX_N}, got n = {0}")]
    UnsupportedN(usize),
    #[error("the {family} family is not defined on F({n})")]
    FamilyUnavailable { n: usize, family: Family },
    #[error("construction of {0} failed")]
    ConstructionFailed(String),
}

/// The pairs `(i, j)`, `1 ≤ i < j ≤ n`, in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairIndex {
    n: usize,
    pairs: Vec<(usize, usize)>,
    lookup: HashMap<(usize, usize), usize>,
}

impl PairIndex {
    pub fn new(n: usize) -> Self {
        let pairs: Vec<(usize, usize)> = (1..=n)
            .flat_map(|i| (i + 1..=n).map(move |j| (i, j)))
            .collect();
        let lookup = pairs.iter().enumerate().map(|(q, &p)| (p, q)).collect();
        Self { n, pairs, lookup }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    /// Zero-based summand index of the unordered pair `{i, j}`.
    pub fn index(&self, i: usize, j: usize) -> Option<usize> {
        self.lookup.get(&(i.min(j), i.max(j))).copied()
    }

    pub fn pair(&self, index: usize) -> Option<(usize, usize)> {
        self.pairs.get(index).copied()
    }
}

/// The F(n) model: one summand per pair, one constant `1/n` per 3-subset.
pub fn build_fn(n: usize) -> Result<SpaceModel, FlagError> {
    if !(3..=MAX_N).contains(&n) {
        return Err(FlagError::UnsupportedN(n));
    }
    Ok(build_fn_unchecked(n))
}

fn build_fn_unchecked(n: usize) -> SpaceModel {
    let index = PairIndex::new(n);
    let value = Rational64::new(1, n as i64);
    let mut triples = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            for k in j + 1..=n {
                let at = |a, b| index.index(a, b).unwrap() + 1;
                triples.push((at(i, j), at(j, k), at(i, k), value));
            }
        }
    }
    SpaceModel::new(format!("f{n}"), vec![2; index.len()], &triples)
        .expect("F(n) model is well formed")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Standard,
    Arvanitoyeorgos,
    Senda,
    Kahler,
}

impl Family {
    pub const ALL: [Family; 4] = [
        Family::Standard,
        Family::Arvanitoyeorgos,
        Family::Senda,
        Family::Kahler,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Standard => "standard",
            Family::Arvanitoyeorgos => "arvanitoyeorgos",
            Family::Senda => "senda",
            Family::Kahler => "kahler",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Family::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| {
                format!("unknown family `{s}` (standard, arvanitoyeorgos, senda, kahler)")
            })
    }
}

fn same_block(i: usize, j: usize, split: usize) -> bool {
    (i <= split) == (j <= split)
}

/// Integer coordinates of a classic family, in lexicographic pair order.
pub fn classic_coords(n: usize, family: Family) -> Result<Vec<i64>, FlagError> {
    if !(3..=MAX_N).contains(&n) {
        return Err(FlagError::UnsupportedN(n));
    }
    let index = PairIndex::new(n);
    let ni = n as i64;
    let coords = match family {
        Family::Standard => vec![1; index.len()],
        Family::Arvanitoyeorgos => index
            .pairs()
            .iter()
            .map(|&(i, _)| if i == 1 { ni - 1 } else { ni + 1 })
            .collect(),
        Family::Senda => {
            if !n.is_multiple_of(2) || n < 6 {
                return Err(FlagError::FamilyUnavailable { n, family });
            }
            let m = n / 2;
            let mi = m as i64;
            index
                .pairs()
                .iter()
                .map(|&(i, j)| {
                    if same_block(i, j, m) {
                        mi + 2
                    } else {
                        3 * mi - 2
                    }
                })
                .collect()
        }
        Family::Kahler => index.pairs().iter().map(|&(i, j)| (j - i) as i64).collect(),
    };
    Ok(coords)
}

pub fn classic_metric(n: usize, family: Family) -> Result<InvariantMetric, FlagError> {
    let coords = classic_coords(n, family)?;
    let space = Arc::new(build_fn(n)?);
    Ok(metric(&space, coords.iter().map(|&v| v as f64).collect()))
}

fn metric(space: &Arc<SpaceModel>, x: Vec<f64>) -> InvariantMetric {
    InvariantMetric::new(space, x).expect("coordinates are positive")
}

/// Ansatz `x_{1k} = A`, `x_{ij} = B` otherwise.
pub fn arvanitoyeorgos_ansatz(n: usize) -> Ansatz {
    two_class_ansatz(n, |i, _| i == 1)
}

/// Ansatz with one class inside `{1..m}`, one inside `{m+1..2m}`, one across.
pub fn senda_ansatz(m: usize) -> Ansatz {
    let index = PairIndex::new(2 * m);
    let mut classes = vec![Vec::new(); 3];
    for (q, &(i, j)) in index.pairs().iter().enumerate() {
        let c = if j <= m {
            0
        } else if i > m {
            1
        } else {
            2
        };
        classes[c].push(q + 1);
    }
    Ansatz::new(index.len(), classes).expect("partition of all pairs")
}

fn two_class_ansatz(n: usize, first: impl Fn(usize, usize) -> bool) -> Ansatz {
    let index = PairIndex::new(n);
    let (a, b): (Vec<usize>, Vec<usize>) = (1..=index.len()).partition(|&q| {
        let (i, j) = index.pair(q - 1).unwrap();
        first(i, j)
    });
    Ansatz::new(index.len(), vec![a, b]).expect("partition of all pairs")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NegreirosKind {
    /// `n = 2m`, fully specified coordinates.
    Even,
    /// `n = 2m + 1`, two free values.
    Odd,
}

#[derive(Debug, Clone)]
pub enum NegreirosCandidate {
    Metric(InvariantMetric),
    Family { n: usize, ansatz: Ansatz },
}

/// The claimed Einstein families on F(2m) and F(2m+1): `m + 5` within the
/// two blocks and `3m − 5` across for even `n`, a two-class ansatz for odd.
pub fn negreiros_candidates(kind: NegreirosKind, m: usize) -> NegreirosCandidate {
    match kind {
        NegreirosKind::Even => {
            let n = 2 * m;
            let space = Arc::new(build_fn_unchecked(n));
            let index = PairIndex::new(n);
            let (within, across) = (m as f64 + 5.0, 3.0 * m as f64 - 5.0);
            let x = index
                .pairs()
                .iter()
                .map(|&(i, j)| if same_block(i, j, m) { within } else { across })
                .collect();
            NegreirosCandidate::Metric(metric(&space, x))
        }
        NegreirosKind::Odd => {
            let n = 2 * m + 1;
            NegreirosCandidate::Family {
                n,
                ansatz: two_class_ansatz(n, |i, j| same_block(i, j, m + 1)),
            }
        }
    }
}

/// Ricci eigenvalues from the F(n)-specific formula
/// `ρ_ij = 1/(2x_ij) + 1/(4n) Σ_k (x_ij/(x_ik x_jk) − x_ik/(x_ij x_jk) − x_jk/(x_ij x_ik))`.
pub fn reduced_rho(n: usize, x: &[f64]) -> Vec<f64> {
    let index = PairIndex::new(n);
    let at = |a: usize, b: usize| x[index.index(a, b).unwrap()];
    let scale = 1.0 / (4.0 * n as f64);
    index
        .pairs()
        .iter()
        .map(|&(i, j)| {
            let xij = at(i, j);
            let sum: f64 = (1..=n)
                .filter(|&k| k != i && k != j)
                .map(|k| {
                    let (xik, xjk) = (at(i, k), at(j, k));
                    xij / (xik * xjk) - xik / (xij * xjk) - xjk / (xij * xik)
                })
                .sum();
            0.5 / xij + scale * sum
        })
        .collect()
}

/// Scalar curvature from the F(n)-specific formula
/// `Sc = Σ 1/x_ij − 1/(2n) Σ_{i<j<k} (x_ij/(x_ik x_jk) + x_ik/(x_ij x_jk) + x_jk/(x_ij x_ik))`.
pub fn reduced_scalar(n: usize, x: &[f64]) -> f64 {
    let index = PairIndex::new(n);
    let at = |a: usize, b: usize| x[index.index(a, b).unwrap()];
    let mut cubic = 0.0;
    for i in 1..=n {
        for j in i + 1..=n {
            for k in j + 1..=n {
                let (a, b, c) = (at(i, j), at(i, k), at(j, k));
                cubic += a / (b * c) + b / (a * c) + c / (a * b);
            }
        }
    }
    x.iter().map(|v| 1.0 / v).sum::<f64>() - cubic / (2.0 * n as f64)
}

/// Largest deviation between the generic and the F(n)-reduced ρ and Sc.
pub fn fn_formula_crosscheck(n: usize, metric: &InvariantMetric) -> f64 {
    let x = metric.coords();
    let space = metric.space();
    let generic = rho_of(space, x);
    let reduced = reduced_rho(n, x);
    let rho_dev = generic
        .iter()
        .zip(&reduced)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    rho_dev.max((scalar_of(space, x) - reduced_scalar(n, x)).abs())
}

/// The Kähler–Einstein metric in the coordinates listed for F(5), equal to
/// the prescribed-Ricci curve at `t = 0`.
pub const F5_KAHLER: [i64; 10] = [1, 1, 2, 2, 2, 1, 3, 3, 1, 4];

/// `t ↦ (1−t, 1+t, 2−t, 2+t, 2, 1, 3, 3, 1, 4)` on F(5), along which the
/// Ricci tensor stays equal to that of the Kähler metric.
pub fn prescribed_ricci_curve() -> CurveSpec {
    let space = Arc::new(build_fn_unchecked(5));
    let base = F5_KAHLER.iter().map(|&v| v as f64).collect();
    let mut direction = vec![0.0; 10];
    direction[..4].copy_from_slice(&[-1.0, 1.0, -1.0, 1.0]);
    CurveSpec::affine(&space, base, direction)
}

/// The curve `(X, X, Y, Y, 1/(XY), 1/(XY))`, `X = 3/2 − Y/2`, on F(4),
/// parametrized by `Y`; it passes through the Kähler class at `Y = 1`.
pub fn saddle_curve() -> CurveSpec {
    CurveSpec {
        space: Arc::new(build_fn_unchecked(4)),
        parametrization: Parametrization::F4Saddle,
    }
}

fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

// Σ c_k t^k with rational c_k given as (numerator, denominator), ascending.
fn eval(coeffs: &[(i64, i64)], t: &BigRational) -> BigRational {
    coeffs
        .iter()
        .rev()
        .fold(rational(0, 1), |acc, &(p, q)| acc * t + rational(p, q))
}

const ROOT_BITS: u32 = 140;

fn roots(
    p: &[i64],
    lo: f64,
    hi: f64,
    expected: usize,
    what: &str,
) -> Result<Vec<BigRational>, FlagError> {
    let poly = Polynomial::from_descending(p)
        .map_err(|_| FlagError::ConstructionFailed(what.to_string()))?;
    let found: Vec<BigRational> = real_root_intervals(&poly, lo, hi, ROOT_BITS)
        .iter()
        .map(|iv| iv.midpoint())
        .collect();
    if found.len() == expected {
        Ok(found)
    } else {
        Err(FlagError::ConstructionFailed(format!(
            "{what}: expected {expected} roots, found {}",
            found.len()
        )))
    }
}

/// Defining polynomial of the coordinate `C` of g_1, g_2 (two positive roots).
pub const F5_QUARTIC: [i64; 5] = [27, -270, 1008, -1700, 1129];
/// Defining polynomial of the coordinate `K` of g_3 (one positive root).
pub const F5_CUBIC: [i64; 4] = [14, -277, 1819, -3967];
/// Defining polynomial of `c` for g_4, g_5 (two real roots).
pub const F5_SEXTIC: [i64; 7] = [17500, -113750, 316325, -490500, 447800, -225550, 48503];

const QUARTIC_X: [(i64, i64); 4] = [(2258, 27), (-2110, 27), (250, 9), (-10, 3)];
const QUARTIC_Y: [(i64, i64); 4] = [(-4516, 27), (4760, 27), (-536, 9), (20, 3)];
const CUBIC_W: [(i64, i64); 3] = [(-3967, 5), (237, 1), (-87, 5)];
const CUBIC_Z: [(i64, i64); 3] = [(3967, 10), (-227, 2), (41, 5)];
const SEXTIC_M: [(i64, i64); 6] = [
    (-109792137, 8334310),
    (357123741, 6667448),
    (-68439950, 833431),
    (446084445, 6667448),
    (-98032375, 3333724),
    (8971375, 1666862),
];
const SEXTIC_N: [(i64, i64); 6] = [
    (268587215, 13334896),
    (-930186785, 13334896),
    (1387293825, 13334896),
    (-1110422865, 13334896),
    (239341375, 6667448),
    (-21499625, 3333724),
];
const SEXTIC_L: [(i64, i64); 6] = [
    (-183414881, 13334896),
    (627815565, 13334896),
    (-876763875, 13334896),
    (654761925, 13334896),
    (-129829875, 6667448),
    (10670625, 3333724),
];

/// Largest relative Einstein residual accepted for a constructed metric.
pub const CONSTRUCTION_TOL: f64 = 1e-12;

/// The five F(5) metrics given by polynomial roots, in lexicographic pair
/// order: g_1 (2C ≈ 6.9152), g_2 (2C ≈ 5.8586), g_3, g_4, g_5.
pub fn f5_new_metrics() -> Result<Vec<(String, InvariantMetric)>, FlagError> {
    let space = Arc::new(build_fn_unchecked(5));
    let mut exact: Vec<(String, Vec<BigRational>)> = Vec::new();

    let quartic = roots(&F5_QUARTIC, 0.0, f64::INFINITY, 2, "quartic")?;
    for (name, c) in ["g1", "g2"].into_iter().zip(quartic.iter().rev()) {
        let two_c = c * rational(2, 1);
        let x = eval(&QUARTIC_X, c);
        let y = eval(&QUARTIC_Y, c);
        let coords = [&two_c, &two_c, &two_c, &two_c, &x, &y, &x, &x, &y, &x]
            .map(Clone::clone)
            .to_vec();
        exact.push((name.to_string(), coords));
    }

    let cubic = roots(&F5_CUBIC, 0.0, f64::INFINITY, 1, "cubic")?;
    let k = &cubic[0];
    let mut g3 = vec![eval(&CUBIC_W, k)];
    g3.extend(std::iter::repeat_n(k.clone(), 6));
    g3.extend(std::iter::repeat_n(eval(&CUBIC_Z, k), 3));
    exact.push(("g3".to_string(), g3));

    let sextic = roots(&F5_SEXTIC, f64::NEG_INFINITY, f64::INFINITY, 2, "sextic")?;
    for (name, c) in ["g4", "g5"].into_iter().zip(&sextic) {
        let m = eval(&SEXTIC_M, c);
        let n = eval(&SEXTIC_N, c);
        let l = eval(&SEXTIC_L, c);
        let h = c * rational(1, 2);
        let coords = [&m, &m, &h, &n, &m, &h, &n, &h, &n, &l]
            .map(Clone::clone)
            .to_vec();
        exact.push((name.to_string(), coords));
    }

    exact
        .into_iter()
        .map(|(name, coords)| {
            let x: Vec<f64> = coords.iter().map(to_f64).collect();
            if x.iter().any(|v| !(v.is_finite() && *v > 0.0))
                || residual_of(&space, &x) >= CONSTRUCTION_TOL
            {
                return Err(FlagError::ConstructionFailed(name));
            }
            Ok((name, metric(&space, x)))
        })
        .collect()
}

/// The seven F(5) Einstein metrics in table order: standard, Arvanitoyeorgos
/// `(4,4,4,4,6,…,6)`, Kähler, g_1 … g_4.
pub fn f5_seven_metrics() -> Result<Vec<(String, InvariantMetric)>, FlagError> {
    let space = Arc::new(build_fn_unchecked(5));
    let ints = |v: &[i64]| metric(&space, v.iter().map(|&c| c as f64).collect());
    let mut out = vec![
        (
            "gs".to_string(),
            ints(&classic_coords(5, Family::Standard)?),
        ),
        (
            "gA".to_string(),
            ints(&classic_coords(5, Family::Arvanitoyeorgos)?),
        ),
        ("gK".to_string(), ints(&F5_KAHLER)),
    ];
    out.extend(
        f5_new_metrics()?
            .into_iter()
            .filter(|(name, _)| name != "g5"),
    );
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curvature::exact;
    use crate::curvature::{einstein_residual, normalized_scalar_curvature, ricci_eigenvalues};
    use crate::model::{canonicalize_metric, detect_symmetries, SearchOptions};
    use num_traits::Zero;

    #[test]
    fn pair_order() {
        let p = PairIndex::new(5);
        assert_eq!(p.len(), 10);
        assert_eq!(p.pair(0), Some((1, 2)));
        assert_eq!(p.pair(4), Some((2, 3)));
        assert_eq!(p.pair(9), Some((4, 5)));
        assert_eq!(p.index(3, 1), Some(1));
        assert_eq!(p.index(2, 2), None);
    }

    #[test]
    fn model_shape() {
        for n in 3..=8 {
            let s = build_fn(n).unwrap();
            assert_eq!(s.r(), n * (n - 1) / 2);
            assert_eq!(s.triples().len(), n * (n - 1) * (n - 2) / 6);
            for k in 1..=s.r() {
                let hits = s
                    .triples()
                    .iter()
                    .filter(|t| t.indices().contains(&k))
                    .count();
                assert_eq!(hits, n - 2);
            }
            assert!(s
                .triples()
                .iter()
                .all(|t| t.value() == Rational64::new(1, n as i64)));
        }
        assert_eq!(build_fn(2), Err(FlagError::UnsupportedN(2)));
        assert_eq!(build_fn(13), Err(FlagError::UnsupportedN(13)));
    }

    #[test]
    fn classic_families_are_exactly_einstein() {
        for n in 3..=6 {
            let space = build_fn(n).unwrap();
            for family in Family::ALL {
                let Ok(x) = classic_coords(n, family) else {
                    assert!(family == Family::Senda && n != 6);
                    continue;
                };
                let r = exact::residual(&space, &exact::coords(&x));
                assert!(r.is_zero(), "{family} on F({n})");
            }
        }
        assert_eq!(
            classic_coords(4, Family::Kahler).unwrap(),
            vec![1, 2, 3, 1, 2, 1]
        );
        assert!(matches!(
            classic_metric(5, Family::Senda),
            Err(FlagError::FamilyUnavailable { n: 5, .. })
        ));
    }

    #[test]
    fn kahler_listing_is_in_the_lex_class() {
        let space = Arc::new(build_fn(5).unwrap());
        let group = detect_symmetries(&space, &SearchOptions::default()).unwrap();
        let listed = metric(&space, F5_KAHLER.iter().map(|&v| v as f64).collect());
        let lex = classic_metric(5, Family::Kahler).unwrap();
        let (a, b) = (
            canonicalize_metric(&listed, &group),
            canonicalize_metric(&lex, &group),
        );
        for (u, v) in a.coords().iter().zip(b.coords()) {
            assert!((u - v).abs() < 1e-12);
        }
    }

    #[test]
    fn new_metrics_certify() {
        let metrics = f5_new_metrics().unwrap();
        assert_eq!(metrics.len(), 5);
        for (name, m) in &metrics {
            assert!(einstein_residual(m) < 1e-12, "{name}");
        }
        // normalizations: g1..g3 with 2ρ = 1/10, g4 and g5 with 2ρ = 1
        let two_rho: Vec<f64> = metrics
            .iter()
            .map(|(_, m)| crate::curvature::ricci_eigenvalues(m).two_rho_mean)
            .collect();
        for (i, want) in [0.1, 0.1, 0.1, 1.0, 1.0].iter().enumerate() {
            assert!((two_rho[i] - want).abs() < 1e-12, "{two_rho:?}");
        }
        let g1 = metrics[0].1.coords();
        assert!(
            (g1[0] - 6.9152).abs() < 1e-4
                && (g1[4] - 7.7224).abs() < 1e-4
                && (g1[5] - 5.8870).abs() < 1e-4
        );
        let g3 = metrics[2].1.coords();
        assert!(
            (g3[0] - 5.8091).abs() < 1e-4
                && (g3[1] - 7.4806).abs() < 1e-4
                && (g3[9] - 6.5187).abs() < 1e-4
        );
        let space = metrics[0].1.space().clone();
        let group = detect_symmetries(&space, &SearchOptions::default()).unwrap();
        let c4 = canonicalize_metric(&metrics[3].1, &group);
        let c5 = canonicalize_metric(&metrics[4].1, &group);
        for (u, v) in c4.coords().iter().zip(c5.coords()) {
            assert!((u - v).abs() < 1e-10);
        }
    }

    #[test]
    fn seven_metrics_scalar_range() {
        let seven = f5_seven_metrics().unwrap();
        assert_eq!(seven.len(), 7);
        let scn: Vec<f64> = seven
            .iter()
            .map(|(_, m)| normalized_scalar_curvature(m))
            .collect();
        let (lo, hi) = scn
            .iter()
            .fold((f64::MAX, f64::MIN), |(a, b), &v| (a.min(v), b.max(v)));
        assert!(hi - lo < 0.05);
        assert!((ricci_eigenvalues(&seven[1].1).two_rho_mean - 11.0 / 80.0).abs() < 1e-15);
    }

    #[test]
    fn reduced_formulas_agree() {
        let s = classic_metric(4, Family::Standard).unwrap();
        assert_eq!(fn_formula_crosscheck(4, &s), 0.0);
        let senda = classic_metric(6, Family::Senda).unwrap();
        assert!(fn_formula_crosscheck(6, &senda) < 1e-14);
    }

    #[test]
    fn negreiros_even_is_not_einstein() {
        for m in [6, 7] {
            let NegreirosCandidate::Metric(g) = negreiros_candidates(NegreirosKind::Even, m) else {
                panic!("even kind yields a metric");
            };
            assert_eq!(g.space().r(), m * (2 * m - 1));
            assert!(einstein_residual(&g) > 1e-3);
        }
        match negreiros_candidates(NegreirosKind::Odd, 6) {
            NegreirosCandidate::Family { n, ansatz } => {
                assert_eq!(n, 13);
                assert_eq!(ansatz.len(), 2);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn ansatz_shapes() {
        let a = arvanitoyeorgos_ansatz(4);
        assert_eq!(a.to_string(), "1,2,3|4,5,6");
        let s = senda_ansatz(3);
        assert_eq!(
            s.classes().iter().map(Vec::len).collect::<Vec<_>>(),
            vec![3, 3, 9]
        );
    }

    #[test]
    fn prescribed_ricci_curve_fixes_ricci() {
        let curve = prescribed_ricci_curve();
        let at0 = curve.point(0.0).unwrap();
        let rho0 = rho_of(&curve.space, &at0);
        for (r, x) in rho0.iter().zip(&at0) {
            assert!((r * x - x / 5.0).abs() < 1e-14);
        }
    }
}
