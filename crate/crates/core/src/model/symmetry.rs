//! Automorphisms of a space: permutations of summand indices preserving
//! dimensions and every structural constant.
//!
//! The search combines colour refinement with backtracking and assembles
//! the full group as a stabilizer chain over the base `0, 1, …, r−1`.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use num_bigint::BigUint;
use num_rational::Rational64;
use num_traits::{One, ToPrimitive};

use super::{InvariantMetric, ModelError, SpaceModel};

/// A permutation of `{0, …, r−1}` stored as its image list.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(r: usize) -> Self {
        Self((0..r).collect())
    }

    /// Builds from 0-based images; `None` unless they form a bijection.
    pub fn from_images(images: Vec<usize>) -> Option<Self> {
        let r = images.len();
        let mut seen = vec![false; r];
        for &p in &images {
            if p >= r || std::mem::replace(&mut seen[p], true) {
                return None;
            }
        }
        Some(Self(images))
    }

    /// Builds from 1-based images, e.g. `[2, 1, 3]` for the swap of 1 and 2.
    pub fn from_one_based(images: &[usize]) -> Option<Self> {
        if images.contains(&0) {
            return None;
        }
        Self::from_images(images.iter().map(|p| p - 1).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &p)| i == p)
    }

    /// `self ∘ other`, i.e. apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        Self(other.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.0.len()];
        for (i, &p) in self.0.iter().enumerate() {
            inv[p] = i;
        }
        Self(inv)
    }

    /// Moves the value at slot `i` to slot `σ(i)`.
    pub fn act<T: Clone>(&self, x: &[T]) -> Vec<T> {
        let mut out = x.to_vec();
        for (i, &p) in self.0.iter().enumerate() {
            out[p] = x[i].clone();
        }
        out
    }

    /// Whether the permutation is an automorphism of `space`.
    pub fn preserves(&self, space: &SpaceModel) -> bool {
        if self.len() != space.r() {
            return false;
        }
        let dims = space.dims();
        if (0..dims.len()).any(|i| dims[self.0[i]] != dims[i]) {
            return false;
        }
        space.triples().iter().all(|t| {
            let [i, j, k] = t.zero_based();
            space.constant(self.0[i] + 1, self.0[j] + 1, self.0[k] + 1) == t.value()
        })
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", p + 1)?;
        }
        write!(f, "]")
    }
}

/// Limits on the backtracking search.
#[derive(Debug, Clone, Copy)]
pub struct SearchOptions {
    pub node_limit: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            node_limit: 5_000_000,
        }
    }
}

/// An automorphism group presented by a stabilizer chain.
#[derive(Debug, Clone)]
pub struct SymmetryGroup {
    r: usize,
    generators: Vec<Permutation>,
    // level i: permutations fixing 0..i-1, one per point of the orbit of i
    transversals: Vec<Vec<Permutation>>,
    order: BigUint,
}

impl SymmetryGroup {
    pub fn trivial(r: usize) -> Self {
        Self {
            r,
            generators: Vec::new(),
            transversals: (0..r).map(|_| vec![Permutation::identity(r)]).collect(),
            order: BigUint::one(),
        }
    }

    /// Closes an explicit generating set. Every generator must have length `r`.
    pub fn from_generators(r: usize, generators: Vec<Permutation>) -> Self {
        let mut group = Self::trivial(r);
        group.generators = generators
            .into_iter()
            .filter(|g| !g.is_identity())
            .collect();
        group.rebuild_chain();
        group
    }

    pub fn degree(&self) -> usize {
        self.r
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn order(&self) -> &BigUint {
        &self.order
    }

    pub fn order_u64(&self) -> Option<u64> {
        self.order.to_u64()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        if p.len() != self.r {
            return false;
        }
        let mut g = p.clone();
        for (level, transversal) in self.transversals.iter().enumerate() {
            let point = g.apply(level);
            match transversal.iter().find(|u| u.apply(level) == point) {
                Some(u) => g = u.inverse().compose(&g),
                None => return false,
            }
        }
        g.is_identity()
    }

    /// Every element, for small groups.
    pub fn elements(&self) -> Vec<Permutation> {
        let mut out = vec![Permutation::identity(self.r)];
        for transversal in self.transversals.iter().rev() {
            let mut next = Vec::with_capacity(out.len() * transversal.len());
            for u in transversal {
                for g in &out {
                    next.push(u.compose(g));
                }
            }
            out = next;
        }
        out
    }

    fn rebuild_chain(&mut self) {
        self.transversals = (0..self.r)
            .map(|level| {
                let gens: Vec<&Permutation> = self
                    .generators
                    .iter()
                    .filter(|g| (0..level).all(|i| g.apply(i) == i))
                    .collect();
                schreier_transversal(self.r, level, &gens)
            })
            .collect();
        self.order = self
            .transversals
            .iter()
            .map(|t| BigUint::from(t.len()))
            .product();
    }
}

fn schreier_transversal(r: usize, point: usize, gens: &[&Permutation]) -> Vec<Permutation> {
    let mut reps: Vec<Permutation> = vec![Permutation::identity(r)];
    let mut seen: HashSet<usize> = HashSet::from([point]);
    let mut cursor = 0;
    while cursor < reps.len() {
        let u = reps[cursor].clone();
        cursor += 1;
        for g in gens {
            let w = g.compose(&u);
            if seen.insert(w.apply(point)) {
                reps.push(w);
            }
        }
    }
    reps.sort_by_key(|u| u.apply(point));
    reps
}

// Per-index view of the triples used by refinement and the search.
struct Incidence {
    // for each index a, one (partner, partner, value) row per triple through a
    rows: Vec<Vec<(usize, usize, Rational64)>>,
    lookup: HashMap<[usize; 3], Rational64>,
}

impl Incidence {
    fn new(space: &SpaceModel) -> Self {
        let mut rows = vec![Vec::new(); space.r()];
        let mut lookup = HashMap::new();
        for t in space.triples() {
            let idx = t.zero_based();
            lookup.insert(idx, t.value());
            let mut positions: Vec<usize> = idx.to_vec();
            positions.dedup();
            for &a in &positions {
                let mut rest = idx.to_vec();
                let pos = rest.iter().position(|&v| v == a).unwrap();
                rest.remove(pos);
                rows[a].push((rest[0], rest[1], t.value()));
            }
        }
        Self { rows, lookup }
    }

    fn get(&self, mut key: [usize; 3]) -> Option<Rational64> {
        key.sort_unstable();
        self.lookup.get(&key).copied()
    }
}

/// Stable colour refinement over the disjoint union of the given spaces.
/// Equal colours are a necessary condition for indices to correspond.
fn refine_colors(spaces: &[(&SpaceModel, &Incidence)]) -> Vec<Vec<usize>> {
    let raw: Vec<Vec<(u32, Vec<Rational64>)>> = spaces
        .iter()
        .map(|(s, inc)| {
            (0..s.r())
                .map(|a| {
                    let mut vals: Vec<Rational64> = inc.rows[a].iter().map(|row| row.2).collect();
                    vals.sort();
                    (s.dims()[a], vals)
                })
                .collect()
        })
        .collect();
    let incs: Vec<&Incidence> = spaces.iter().map(|s| s.1).collect();
    refine_from(&incs, relabel(&raw))
}

// dense ids for keys, shared across all spaces
fn relabel<K: Ord + Clone>(raw: &[Vec<K>]) -> Vec<Vec<usize>> {
    let mut keys: BTreeMap<K, usize> = BTreeMap::new();
    for key in raw.iter().flatten() {
        keys.entry(key.clone()).or_insert(0);
    }
    for (id, v) in keys.values_mut().enumerate() {
        *v = id;
    }
    raw.iter()
        .map(|row| row.iter().map(|k| keys[k]).collect())
        .collect()
}

fn refine_from(incs: &[&Incidence], mut colors: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    type Signature = (usize, Vec<(Rational64, usize, usize)>);
    let mut classes = count_classes(&colors);
    loop {
        let raw: Vec<Vec<Signature>> = incs
            .iter()
            .zip(&colors)
            .map(|(inc, col)| {
                inc.rows
                    .iter()
                    .enumerate()
                    .map(|(a, rows)| {
                        let mut sig: Vec<(Rational64, usize, usize)> = rows
                            .iter()
                            .map(|&(b, c, v)| {
                                let (p, q) = (col[b].min(col[c]), col[b].max(col[c]));
                                (v, p, q)
                            })
                            .collect();
                        sig.sort();
                        (col[a], sig)
                    })
                    .collect()
            })
            .collect();
        colors = relabel(&raw);
        let next = count_classes(&colors);
        if next == classes {
            return colors;
        }
        classes = next;
    }
}

fn count_classes(colors: &[Vec<usize>]) -> usize {
    colors.iter().flatten().collect::<HashSet<_>>().len()
}

struct Search<'a> {
    src: &'a Incidence,
    dst: &'a Incidence,
    src_color: &'a [usize],
    dst_color: &'a [usize],
    r: usize,
    forward: Vec<Option<usize>>,
    backward: Vec<Option<usize>>,
    nodes: u64,
    limit: u64,
}

impl<'a> Search<'a> {
    fn new(
        src: &'a Incidence,
        dst: &'a Incidence,
        src_color: &'a [usize],
        dst_color: &'a [usize],
        limit: u64,
    ) -> Self {
        let r = src_color.len();
        Self {
            src,
            dst,
            src_color,
            dst_color,
            r,
            forward: vec![None; r],
            backward: vec![None; r],
            nodes: 0,
            limit,
        }
    }

    fn consistent(&self, a: usize, b: usize) -> bool {
        if self.src_color[a] != self.dst_color[b] {
            return false;
        }
        let img = |v: usize| if v == a { Some(b) } else { self.forward[v] };
        for &(p, q, value) in &self.src.rows[a] {
            if let (Some(pi), Some(qi)) = (img(p), img(q)) {
                if self.dst.get([b, pi, qi]) != Some(value) {
                    return false;
                }
            }
        }
        let pre = |v: usize| if v == b { Some(a) } else { self.backward[v] };
        for &(p, q, value) in &self.dst.rows[b] {
            if let (Some(pi), Some(qi)) = (pre(p), pre(q)) {
                if self.src.get([a, pi, qi]) != Some(value) {
                    return false;
                }
            }
        }
        true
    }

    fn assign(&mut self, a: usize, b: usize) {
        self.forward[a] = Some(b);
        self.backward[b] = Some(a);
    }

    fn unassign(&mut self, a: usize, b: usize) {
        self.forward[a] = None;
        self.backward[b] = None;
    }

    // colours after individualizing the mapped pairs, or None when the two
    // sides can no longer correspond
    fn refined(&self) -> Option<(Vec<usize>, Vec<usize>)> {
        let src: Vec<(usize, Option<usize>)> = (0..self.r)
            .map(|a| (self.src_color[a], self.forward[a]))
            .collect();
        let dst: Vec<(usize, Option<usize>)> = (0..self.r)
            .map(|b| (self.dst_color[b], self.backward[b].map(|_| b)))
            .collect();
        let mut colors = refine_from(&[self.src, self.dst], relabel(&[src, dst]));
        let dst = colors.pop().unwrap();
        let src = colors.pop().unwrap();
        let histogram = |c: &[usize]| {
            let mut h: BTreeMap<usize, usize> = BTreeMap::new();
            for &v in c {
                *h.entry(v).or_insert(0) += 1;
            }
            h
        };
        (histogram(&src) == histogram(&dst)).then_some((src, dst))
    }

    fn run(&mut self) -> Result<Option<Vec<usize>>, ModelError> {
        self.nodes += 1;
        if self.nodes > self.limit {
            return Err(ModelError::SearchBudgetExceeded(self.limit));
        }
        let Some((src, dst)) = self.refined() else {
            return Ok(None);
        };
        // unmapped source index in the smallest colour class
        let class_size = |c: usize| src.iter().filter(|&&v| v == c).count();
        let Some(a) = (0..self.r)
            .filter(|&a| self.forward[a].is_none())
            .min_by_key(|&a| (class_size(src[a]), a))
        else {
            return Ok(Some(self.forward.iter().map(|v| v.unwrap()).collect()));
        };
        let candidates: Vec<usize> = (0..self.r).filter(|&b| dst[b] == src[a]).collect();
        for b in candidates {
            if self.backward[b].is_none() && self.consistent(a, b) {
                self.assign(a, b);
                if let Some(found) = self.run()? {
                    return Ok(Some(found));
                }
                self.unassign(a, b);
            }
        }
        Ok(None)
    }
}

/// The full automorphism group of `space`.
pub fn detect_symmetries(
    space: &SpaceModel,
    opts: &SearchOptions,
) -> Result<SymmetryGroup, ModelError> {
    let r = space.r();
    let inc = Incidence::new(space);
    let colors = refine_colors(&[(space, &inc)]).remove(0);
    let mut group = SymmetryGroup::trivial(r);
    let mut nodes = 0u64;
    for level in (0..r).rev() {
        // targets proven unreachable stay unreachable as the orbit grows
        let mut unreachable: HashSet<usize> = HashSet::new();
        'grow: loop {
            let gens: Vec<&Permutation> = group.generators.iter().collect();
            let orbit: HashSet<usize> = schreier_transversal(r, level, &gens)
                .iter()
                .map(|u| u.apply(level))
                .collect();
            for j in level + 1..r {
                if colors[j] != colors[level] || orbit.contains(&j) || unreachable.contains(&j) {
                    continue;
                }
                let mut search = Search::new(
                    &inc,
                    &inc,
                    &colors,
                    &colors,
                    opts.node_limit.saturating_sub(nodes),
                );
                for fixed in 0..level {
                    search.assign(fixed, fixed);
                }
                let found = if search.consistent(level, j) {
                    search.assign(level, j);
                    let outcome = search.run();
                    nodes += search.nodes;
                    outcome.map_err(|_| ModelError::SearchBudgetExceeded(opts.node_limit))?
                } else {
                    None
                };
                match found {
                    Some(images) => {
                        group.generators.push(Permutation(images));
                        continue 'grow;
                    }
                    None => {
                        unreachable.insert(j);
                    }
                }
            }
            break;
        }
    }
    group.rebuild_chain();
    Ok(group)
}

/// A relabelling `σ` with `[σ(i)σ(j)σ(k)]_b = [ijk]_a` and matching dimensions.
pub fn find_isomorphism(
    a: &SpaceModel,
    b: &SpaceModel,
    opts: &SearchOptions,
) -> Result<Option<Permutation>, ModelError> {
    if a.r() != b.r() || a.triples().len() != b.triples().len() {
        return Ok(None);
    }
    let inc_a = Incidence::new(a);
    let inc_b = Incidence::new(b);
    let colors = refine_colors(&[(a, &inc_a), (b, &inc_b)]);
    let mut ca = colors[0].clone();
    let mut cb = colors[1].clone();
    ca.sort_unstable();
    cb.sort_unstable();
    if ca != cb {
        return Ok(None);
    }
    let mut search = Search::new(&inc_a, &inc_b, &colors[0], &colors[1], opts.node_limit);
    Ok(search.run()?.map(Permutation))
}

/// Scale-normalizes `metric` and returns the lexicographically smallest
/// coordinate vector in its orbit under `group`.
pub fn canonicalize_metric(metric: &InvariantMetric, group: &SymmetryGroup) -> InvariantMetric {
    const TIE: f64 = 1e-10;
    let normalized = metric.volume_normalized();
    let x = normalized.coords();
    let r = x.len();
    // each state is x∘P for a prefix product P of transversal elements
    let mut states: Vec<Vec<f64>> = vec![x.to_vec()];
    for level in 0..r {
        let transversal = &group.transversals[level];
        let mut best = f64::INFINITY;
        let mut candidates: Vec<(f64, Vec<f64>)> = Vec::new();
        for state in &states {
            for u in transversal {
                let value = state[u.apply(level)];
                if value <= best * (1.0 + TIE) {
                    best = best.min(value);
                    candidates.push((value, (0..r).map(|i| state[u.apply(i)]).collect()));
                }
            }
        }
        let mut seen: HashSet<Vec<u64>> = HashSet::new();
        states = candidates
            .into_iter()
            .filter(|(value, _)| *value <= best * (1.0 + TIE))
            .filter_map(|(_, s)| {
                seen.insert(s.iter().map(|v| v.to_bits()).collect())
                    .then_some(s)
            })
            .collect();
    }
    let best = states
        .into_iter()
        .min_by(|p, q| p.partial_cmp(q).unwrap_or(std::cmp::Ordering::Equal))
        .expect("at least one state survives");
    InvariantMetric {
        space: normalized.space.clone(),
        x: best,
    }
}
