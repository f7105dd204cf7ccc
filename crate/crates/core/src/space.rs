//! Finite quasi-discrete closure spaces.
//!
//! A space is a point set `0..n` with a binary relation `R`. The closure of a
//! set `A` is `A` together with every `R`-successor of a member of `A`; all
//! other operators (interior, boundaries, connectedness) derive from it.
//! The relation is stored twice, as forward and backward adjacency in
//! compressed-row form, with each row sorted ascending and free of
//! duplicates. Self-loops are never stored: `C_R` and `C_{R ∪ Id}` coincide.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use crate::error::SpaceError;
use crate::pointset::PointSet;

/// Largest set for which [`QuasiDiscreteSpace::is_separation_connected`]
/// performs its exhaustive bipartition search.
pub const SEPARATION_SEARCH_LIMIT: usize = 20;

/// Which adjacency list to read.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// `pre(x) = { y | (y, x) ∈ R }`
    Pre,
    /// `post(x) = { y | (x, y) ∈ R }`
    Post,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundaryKind {
    /// `C(A) \ I(A)`
    Full,
    /// `A \ I(A)`
    Inner,
    /// `C(A) \ A`
    Outer,
}

/// How points are presented to users.
#[derive(Clone, Debug, PartialEq)]
pub enum PointLabels {
    /// Points are shown by index.
    Index,
    /// One display name per point.
    Names(Vec<String>),
    /// A `width × height` raster; point `r * width + c` is `(c, r)`, row 0 on top.
    Grid { width: usize, height: usize },
    /// A raster followed by a layer of Euclidean positions
    /// (point `width * height + i` sits at `positions[i]`).
    Layered {
        width: usize,
        height: usize,
        positions: Vec<(f64, f64)>,
    },
    /// Points of a subspace; `parent[i]` is the index of point `i` in the
    /// space it was cut from.
    Subspace { parent: Vec<usize> },
}

impl PointLabels {
    /// Index of the raster point at `(column, row)`, when the labelling has a raster.
    pub fn grid_point(&self, column: usize, row: usize) -> Option<usize> {
        match *self {
            PointLabels::Grid { width, height } | PointLabels::Layered { width, height, .. }
                if column < width && row < height =>
            {
                Some(row * width + column)
            }
            _ => None,
        }
    }
}

/// A finite set of points with a relation inducing a closure operator.
#[derive(Clone, PartialEq)]
pub struct QuasiDiscreteSpace {
    point_count: usize,
    forward_offsets: Vec<usize>,
    forward: Vec<u32>,
    backward_offsets: Vec<usize>,
    backward: Vec<u32>,
    labels: PointLabels,
}

impl fmt::Debug for QuasiDiscreteSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("QuasiDiscreteSpace")
            .field("point_count", &self.point_count)
            .field("edge_count", &self.edge_count())
            .finish()
    }
}

fn compress(point_count: usize, sorted_edges: &[(u32, u32)]) -> (Vec<usize>, Vec<u32>) {
    let mut offsets = vec![0usize; point_count + 1];
    for &(from, _) in sorted_edges {
        offsets[from as usize + 1] += 1;
    }
    for i in 0..point_count {
        offsets[i + 1] += offsets[i];
    }
    let targets = sorted_edges.iter().map(|&(_, to)| to).collect();
    (offsets, targets)
}

impl QuasiDiscreteSpace {
    /// Builds a space on `point_count` points from directed pairs. Duplicate
    /// pairs collapse and self-loops are dropped.
    pub fn from_edges<I>(point_count: usize, edges: I) -> Result<Self, SpaceError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if point_count > u32::MAX as usize {
            return Err(SpaceError::TooLarge {
                size: point_count,
                limit: u32::MAX as usize,
            });
        }
        let mut pairs = Vec::new();
        for (from, to) in edges {
            for p in [from, to] {
                if p >= point_count {
                    return Err(SpaceError::PointOutOfRange {
                        point: p,
                        point_count,
                    });
                }
            }
            if from != to {
                pairs.push((from as u32, to as u32));
            }
        }
        Ok(Self::from_pairs(point_count, pairs))
    }

    pub(crate) fn from_pairs(point_count: usize, mut pairs: Vec<(u32, u32)>) -> Self {
        pairs.sort_unstable();
        pairs.dedup();
        let (forward_offsets, forward) = compress(point_count, &pairs);
        let mut transposed: Vec<(u32, u32)> = pairs.iter().map(|&(a, b)| (b, a)).collect();
        transposed.sort_unstable();
        let (backward_offsets, backward) = compress(point_count, &transposed);
        QuasiDiscreteSpace {
            point_count,
            forward_offsets,
            forward,
            backward_offsets,
            backward,
            labels: PointLabels::Index,
        }
    }

    /// A space with no points.
    pub fn empty() -> Self {
        Self::from_pairs(0, Vec::new())
    }

    pub fn with_labels(mut self, labels: PointLabels) -> Self {
        self.labels = labels;
        self
    }

    pub fn labels(&self) -> &PointLabels {
        &self.labels
    }

    /// Display form of a point.
    pub fn label(&self, x: usize) -> String {
        match &self.labels {
            PointLabels::Names(names) => names[x].clone(),
            PointLabels::Grid { width, .. } => format!("({},{})", x % width, x / width),
            PointLabels::Layered {
                width,
                height,
                positions,
            } => {
                let pixels = width * height;
                if x < pixels {
                    format!("({},{})", x % width, x / width)
                } else {
                    let (px, py) = positions[x - pixels];
                    format!("coord({px},{py})")
                }
            }
            PointLabels::Subspace { parent } => parent[x].to_string(),
            PointLabels::Index => x.to_string(),
        }
    }

    #[inline]
    pub fn point_count(&self) -> usize {
        self.point_count
    }

    /// Number of stored directed pairs.
    #[inline]
    pub fn edge_count(&self) -> usize {
        self.forward.len()
    }

    /// Successors of `x`, ascending. Panics on an out-of-range point.
    #[inline]
    pub fn post(&self, x: usize) -> &[u32] {
        &self.forward[self.forward_offsets[x]..self.forward_offsets[x + 1]]
    }

    /// Predecessors of `x`, ascending. Panics on an out-of-range point.
    #[inline]
    pub fn pre(&self, x: usize) -> &[u32] {
        &self.backward[self.backward_offsets[x]..self.backward_offsets[x + 1]]
    }

    /// All stored pairs `(x, y)`, ordered by `x` then `y`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.point_count).flat_map(move |x| self.post(x).iter().map(move |&y| (x, y as usize)))
    }

    pub fn has_edge(&self, x: usize, y: usize) -> bool {
        x < self.point_count && self.post(x).binary_search(&(y as u32)).is_ok()
    }

    pub fn is_symmetric(&self) -> bool {
        self.forward_offsets == self.backward_offsets && self.forward == self.backward
    }

    pub(crate) fn check_set(&self, a: &PointSet) -> Result<(), SpaceError> {
        if a.universe() != self.point_count {
            return Err(SpaceError::InvalidSet {
                universe: a.universe(),
                point_count: self.point_count,
            });
        }
        Ok(())
    }

    fn check_point(&self, x: usize) -> Result<(), SpaceError> {
        if x >= self.point_count {
            return Err(SpaceError::PointOutOfRange {
                point: x,
                point_count: self.point_count,
            });
        }
        Ok(())
    }

    /// `C_R(A) = A ∪ { x | ∃a ∈ A . (a, x) ∈ R }`.
    pub fn closure(&self, a: &PointSet) -> Result<PointSet, SpaceError> {
        self.check_set(a)?;
        Ok(self.closure_unchecked(a))
    }

    pub(crate) fn closure_unchecked(&self, a: &PointSet) -> PointSet {
        let mut out = a.clone();
        for x in a {
            for &y in self.post(x) {
                out.insert(y as usize);
            }
        }
        out
    }

    /// `I(A) = { x ∈ A | pre(x) ⊆ A }`, the complement of the closure of the complement.
    pub fn interior(&self, a: &PointSet) -> Result<PointSet, SpaceError> {
        self.check_set(a)?;
        Ok(self.interior_unchecked(a))
    }

    pub(crate) fn interior_unchecked(&self, a: &PointSet) -> PointSet {
        let mut out = a.clone();
        for x in a {
            if self.pre(x).iter().any(|&y| !a.contains(y as usize)) {
                out.remove(x);
            }
        }
        out
    }

    pub fn boundary(&self, a: &PointSet, kind: BoundaryKind) -> Result<PointSet, SpaceError> {
        self.check_set(a)?;
        Ok(match kind {
            BoundaryKind::Full => self.closure_unchecked(a).difference(&self.interior_unchecked(a)),
            BoundaryKind::Inner => a.difference(&self.interior_unchecked(a)),
            BoundaryKind::Outer => self.outer_boundary_unchecked(a),
        })
    }

    pub(crate) fn outer_boundary_unchecked(&self, a: &PointSet) -> PointSet {
        let mut out = PointSet::empty(self.point_count);
        for x in a {
            for &y in self.post(x) {
                if !a.contains(y as usize) {
                    out.insert(y as usize);
                }
            }
        }
        out
    }

    pub fn adjacent(&self, x: usize, direction: Direction) -> Result<PointSet, SpaceError> {
        self.check_point(x)?;
        let list = match direction {
            Direction::Pre => self.pre(x),
            Direction::Post => self.post(x),
        };
        let mut out = PointSet::empty(self.point_count);
        for &y in list {
            out.insert(y as usize);
        }
        Ok(out)
    }

    /// `{x} ∪ pre(x)`: the least set having `x` in its interior.
    pub fn minimal_neighbourhood(&self, x: usize) -> Result<PointSet, SpaceError> {
        let mut n = self.adjacent(x, Direction::Pre)?;
        n.insert(x);
        Ok(n)
    }

    /// The space induced on `y`, reindexed densely in ascending order. The
    /// returned labels are [`PointLabels::Subspace`], mapping back to this space.
    pub fn subspace(&self, y: &PointSet) -> Result<QuasiDiscreteSpace, SpaceError> {
        self.check_set(y)?;
        let parent = y.to_vec();
        let mut local = vec![u32::MAX; self.point_count];
        for (i, &p) in parent.iter().enumerate() {
            local[p] = i as u32;
        }
        let mut pairs = Vec::new();
        for (i, &p) in parent.iter().enumerate() {
            for &q in self.post(p) {
                let j = local[q as usize];
                if j != u32::MAX {
                    pairs.push((i as u32, j));
                }
            }
        }
        Ok(Self::from_pairs(parent.len(), pairs).with_labels(PointLabels::Subspace { parent }))
    }

    /// Disjoint union: points of `first` keep their indices, points of
    /// `second` are shifted by `first.point_count()`. No pairs cross.
    pub fn coproduct(first: &QuasiDiscreteSpace, second: &QuasiDiscreteSpace) -> QuasiDiscreteSpace {
        let offset = first.point_count as u32;
        let pairs = first
            .edges()
            .map(|(x, y)| (x as u32, y as u32))
            .chain(second.edges().map(|(x, y)| (x as u32 + offset, y as u32 + offset)))
            .collect();
        let space = Self::from_pairs(first.point_count + second.point_count, pairs);
        let labels = match (&first.labels, &second.labels) {
            (PointLabels::Names(a), PointLabels::Names(b)) => {
                PointLabels::Names(a.iter().chain(b).cloned().collect())
            }
            _ => PointLabels::Index,
        };
        space.with_labels(labels)
    }

    fn reach_within(&self, start: usize, within: &PointSet, direction: Direction) -> PointSet {
        let mut seen = PointSet::empty(self.point_count);
        let mut queue = VecDeque::from([start]);
        seen.insert(start);
        while let Some(x) = queue.pop_front() {
            let next = match direction {
                Direction::Post => self.post(x),
                Direction::Pre => self.pre(x),
            };
            for &y in next {
                let y = y as usize;
                if within.contains(y) && seen.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        seen
    }

    /// Every ordered pair of `a` is joined by a path inside `a`, i.e. the
    /// subgraph induced by `a` is strongly connected.
    pub fn is_path_connected(&self, a: &PointSet) -> Result<bool, SpaceError> {
        self.check_set(a)?;
        let Some(start) = a.first() else {
            return Ok(true);
        };
        Ok(self.reach_within(start, a, Direction::Post).len() == a.len()
            && self.reach_within(start, a, Direction::Pre).len() == a.len())
    }

    /// No split of `a` into two non-empty sets `A1`, `A2` with
    /// `C(A1) ∩ A2 = ∅ = A1 ∩ C(A2)`.
    ///
    /// Sets larger than [`SEPARATION_SEARCH_LIMIT`] are refused, except the
    /// whole space of a symmetric relation, which reduces to a graph search.
    pub fn is_separation_connected(&self, a: &PointSet) -> Result<bool, SpaceError> {
        self.check_set(a)?;
        if a.len() <= 1 {
            return Ok(true);
        }
        if a.is_full() && self.is_symmetric() {
            return Ok(self.reach_within(0, a, Direction::Post).is_full());
        }
        if a.len() > SEPARATION_SEARCH_LIMIT {
            return Err(SpaceError::TooLarge {
                size: a.len(),
                limit: SEPARATION_SEARCH_LIMIT,
            });
        }
        let members = a.to_vec();
        let k = members.len();
        let successors: Vec<u32> = members
            .iter()
            .map(|&p| {
                self.post(p).iter().fold(0u32, |mask, &q| {
                    match members.binary_search(&(q as usize)) {
                        Ok(j) => mask | 1 << j,
                        Err(_) => mask,
                    }
                })
            })
            .collect();
        let close = |mask: u32| {
            (0..k)
                .filter(|i| mask & (1 << i) != 0)
                .fold(mask, |acc, i| acc | successors[i])
        };
        let all = (1u32 << k) - 1;
        // Member 0 always goes to the first block, so each split is seen once.
        for rest in 0..(1u32 << (k - 1)) {
            let first = rest << 1 | 1;
            let second = all & !first;
            if second == 0 {
                continue;
            }
            if close(first) & second == 0 && close(second) & first == 0 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Whether `C_R` is idempotent, i.e. the reflexive closure of `R` is transitive.
    pub fn is_topological(&self) -> bool {
        (0..self.point_count).all(|x| {
            self.post(x).iter().all(|&y| {
                self.post(y as usize)
                    .iter()
                    .all(|&z| z as usize == x || self.has_edge(x, z as usize))
            })
        })
    }
}

/// The 4-adjacency grid of a `width × height` raster, indexed row-major
/// from the top-left corner.
pub fn build_grid_4adj(width: usize, height: usize) -> Result<QuasiDiscreteSpace, SpaceError> {
    if width == 0 || height == 0 {
        return Err(SpaceError::ZeroDimension { width, height });
    }
    let n = width
        .checked_mul(height)
        .filter(|&n| n <= u32::MAX as usize)
        .ok_or(SpaceError::TooLarge {
            size: usize::MAX,
            limit: u32::MAX as usize,
        })?;
    // Neighbour lists are emitted already sorted: up, left, right, down.
    let mut offsets = Vec::with_capacity(n + 1);
    let mut targets = Vec::with_capacity(4 * n);
    offsets.push(0);
    for r in 0..height {
        for c in 0..width {
            let i = r * width + c;
            if r > 0 {
                targets.push((i - width) as u32);
            }
            if c > 0 {
                targets.push((i - 1) as u32);
            }
            if c + 1 < width {
                targets.push((i + 1) as u32);
            }
            if r + 1 < height {
                targets.push((i + width) as u32);
            }
            offsets.push(targets.len());
        }
    }
    Ok(QuasiDiscreteSpace {
        point_count: n,
        backward_offsets: offsets.clone(),
        backward: targets.clone(),
        forward_offsets: offsets,
        forward: targets,
        labels: PointLabels::Grid { width, height },
    })
}

/// Links distinct points whose Euclidean distance is at most `delta`.
/// Distances are compared squared, without tolerance.
pub fn build_delta_graph(
    coords: &[(f64, f64)],
    delta: f64,
) -> Result<QuasiDiscreteSpace, SpaceError> {
    Ok(QuasiDiscreteSpace::from_pairs(coords.len(), delta_pairs(coords, delta)?))
}

pub(crate) fn delta_pairs(coords: &[(f64, f64)], delta: f64) -> Result<Vec<(u32, u32)>, SpaceError> {
    if !delta.is_finite() || delta < 0.0 {
        return Err(SpaceError::InvalidDelta(delta));
    }
    if coords.len() > u32::MAX as usize {
        return Err(SpaceError::TooLarge {
            size: coords.len(),
            limit: u32::MAX as usize,
        });
    }
    let delta_sq = delta * delta;
    let within = |a: (f64, f64), b: (f64, f64)| {
        let dx = a.0 - b.0;
        let dy = a.1 - b.1;
        dx * dx + dy * dy <= delta_sq
    };
    // Bucket points on a grid of cell size `delta` (exact positions when
    // `delta` is zero) and compare only nearby buckets. A ±2 cell window
    // absorbs rounding in the cell computation.
    let cell_of = |(x, y): (f64, f64)| -> (i64, i64) {
        if delta > 0.0 {
            ((x / delta).floor() as i64, (y / delta).floor() as i64)
        } else {
            (x.to_bits() as i64, y.to_bits() as i64)
        }
    };
    let mut buckets: HashMap<(i64, i64), Vec<u32>> = HashMap::new();
    for (i, &p) in coords.iter().enumerate() {
        buckets.entry(cell_of(p)).or_default().push(i as u32);
    }
    let reach: i64 = if delta > 0.0 { 2 } else { 0 };
    let mut pairs = Vec::new();
    for (i, &p) in coords.iter().enumerate() {
        let (cx, cy) = cell_of(p);
        for dx in -reach..=reach {
            for dy in -reach..=reach {
                let key = (cx.saturating_add(dx), cy.saturating_add(dy));
                let Some(bucket) = buckets.get(&key) else {
                    continue;
                };
                for &j in bucket {
                    if j as usize != i && within(p, coords[j as usize]) {
                        pairs.push((i as u32, j));
                    }
                }
            }
        }
    }
    Ok(pairs)
}
