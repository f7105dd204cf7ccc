//! Brute-force reference semantics for small models.
//!
//! Everything here works directly from the definitions on bitmask sets and
//! shares no evaluation code with the checkers: surrounded points are found
//! by enumerating candidate witness regions, propagation by searching
//! walks, and groups by enumerating path-connected supersets.

use std::collections::{HashMap, VecDeque};

use crate::error::OracleError;
use crate::logic::{CollectiveFormula, IndividualFormula};
use crate::model::ClosureModel;
use crate::pointset::PointSet;

/// Largest model the oracle accepts.
pub const ORACLE_LIMIT: usize = 12;

type Mask = u32;

/// A finite sequence of points, each step staying put or following an edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Walk(pub Vec<usize>);

impl Walk {
    /// Number of steps.
    pub fn len(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_valid(&self, model: &ClosureModel) -> bool {
        !self.0.is_empty()
            && self.0.iter().all(|&x| x < model.point_count())
            && self
                .0
                .windows(2)
                .all(|w| w[0] == w[1] || model.space().has_edge(w[0], w[1]))
    }
}

/// Reference evaluator over one model.
#[derive(Clone, Debug)]
pub struct Oracle {
    n: usize,
    /// `post[x]`: successors of `x` as a mask.
    post: Vec<Mask>,
    atoms: HashMap<String, Mask>,
}

fn bit(x: usize) -> Mask {
    1 << x
}

fn members(m: Mask) -> impl Iterator<Item = usize> {
    (0..ORACLE_LIMIT).filter(move |&x| m & bit(x) != 0)
}

/// All submasks of `m`, including `m` and `0`.
fn submasks(m: Mask) -> impl Iterator<Item = Mask> {
    let mut next = Some(m);
    std::iter::from_fn(move || {
        let cur = next?;
        next = (cur != 0).then(|| (cur - 1) & m);
        Some(cur)
    })
}

impl Oracle {
    pub fn new(model: &ClosureModel) -> Result<Self, OracleError> {
        Self::build(model, false)
    }

    /// Like [`Oracle::new`] but with every point related to itself.
    pub fn with_self_loops(model: &ClosureModel) -> Result<Self, OracleError> {
        Self::build(model, true)
    }

    fn build(model: &ClosureModel, reflexive: bool) -> Result<Self, OracleError> {
        let n = model.point_count();
        if n > ORACLE_LIMIT {
            return Err(OracleError::ModelTooLarge {
                points: n,
                limit: ORACLE_LIMIT,
            });
        }
        let mut post = vec![0; n];
        for (x, y) in model.space().edges() {
            post[x] |= bit(y);
        }
        if reflexive {
            for (x, p) in post.iter_mut().enumerate() {
                *p |= bit(x);
            }
        }
        let atoms = model
            .propositions()
            .map(|(name, set)| (name.to_string(), set.iter().fold(0, |m, x| m | bit(x))))
            .collect();
        Ok(Oracle { n, post, atoms })
    }

    fn all(&self) -> Mask {
        (1u64 << self.n).wrapping_sub(1) as Mask
    }

    fn to_mask(&self, set: &PointSet) -> Result<Mask, OracleError> {
        if set.universe() != self.n {
            return Err(OracleError::InvalidSet(self.n));
        }
        Ok(set.iter().fold(0, |m, x| m | bit(x)))
    }

    fn to_set(&self, m: Mask) -> PointSet {
        PointSet::from_fn(self.n, |x| m & bit(x) != 0)
    }

    /// `A ∪ {y | (a, y) ∈ R, a ∈ A}`.
    fn closure(&self, a: Mask) -> Mask {
        members(a).fold(a, |acc, x| acc | self.post[x])
    }

    /// Whether `x` satisfies `formula`.
    pub fn holds(&self, formula: &IndividualFormula, x: usize) -> bool {
        x < self.n && self.sat_mask(formula) & bit(x) != 0
    }

    /// All points satisfying `formula`.
    pub fn sat(&self, formula: &IndividualFormula) -> PointSet {
        self.to_set(self.sat_mask(formula))
    }

    fn sat_mask(&self, formula: &IndividualFormula) -> Mask {
        match formula {
            IndividualFormula::Top => self.all(),
            IndividualFormula::Atom(a) => self.atoms.get(a).copied().unwrap_or(0),
            IndividualFormula::Not(f) => self.all() & !self.sat_mask(f),
            IndividualFormula::And(f, g) => self.sat_mask(f) & self.sat_mask(g),
            IndividualFormula::Near(f) => self.closure(self.sat_mask(f)),
            IndividualFormula::Surrounded(f, g) => self.surrounded(self.sat_mask(f), self.sat_mask(g)),
            IndividualFormula::Propagation(f, g) => {
                let (v, q) = (self.sat_mask(f), self.sat_mask(g));
                members(q)
                    .filter(|&x| self.propagation_witness_mask(v, q, x, self.n).is_some())
                    .fold(0, |m, x| m | bit(x))
            }
        }
    }

    /// `x` is surrounded iff some region `A ∋ x` of `v`-points has its whole
    /// closure boundary inside `q`.
    fn surrounded(&self, v: Mask, q: Mask) -> Mask {
        submasks(v)
            .filter(|&a| {
                let outer = self.closure(a) & !a;
                outer & !q == 0
            })
            .fold(0, |acc, a| acc | a)
    }

    /// A shortest walk `y → … → x` with `y ∈ v`, every strictly
    /// intermediate point in `q`, and at most `max_len` steps. The endpoint
    /// `x` itself is not constrained.
    fn propagation_witness_mask(&self, v: Mask, q: Mask, x: usize, max_len: usize) -> Option<Walk> {
        // Breadth-first over (point, distance); a point may be extended when
        // it can start a walk (in `v`) or sit inside one (in `q`).
        let mut parent: Vec<Option<usize>> = vec![None; self.n];
        let mut dist: Vec<Option<usize>> = vec![None; self.n];
        let mut queue = VecDeque::new();
        for y in members(v) {
            dist[y] = Some(0);
            queue.push_back(y);
        }
        while let Some(z) = queue.pop_front() {
            let d = dist[z].expect("queued points have a distance");
            if d >= max_len || (v & bit(z) == 0 && q & bit(z) == 0) {
                continue;
            }
            for w in members(self.post[z]) {
                if dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    parent[w] = Some(z);
                    queue.push_back(w);
                }
            }
        }
        dist[x]?;
        let mut walk = vec![x];
        while let Some(p) = parent[*walk.last().expect("non-empty")] {
            walk.push(p);
        }
        walk.reverse();
        Some(Walk(walk))
    }

    /// Whether `x ∈ q` is reached from `v` by a walk of at most `max_len`
    /// steps whose intermediate points lie in `q`.
    pub fn propagates_within(&self, v: &PointSet, q: &PointSet, x: usize, max_len: usize) -> Result<bool, OracleError> {
        let (v, q) = (self.to_mask(v)?, self.to_mask(q)?);
        Ok(x < self.n && q & bit(x) != 0 && self.propagation_witness_mask(v, q, x, max_len).is_some())
    }

    /// A witness walk for `x` satisfying `φ1 P φ2`, if any.
    pub fn propagation_witness(&self, phi1: &IndividualFormula, phi2: &IndividualFormula, x: usize) -> Option<Walk> {
        let (v, q) = (self.sat_mask(phi1), self.sat_mask(phi2));
        if x >= self.n || q & bit(x) == 0 {
            return None;
        }
        self.propagation_witness_mask(v, q, x, self.n)
    }

    /// Whether every point of `b` reaches every other within `b`.
    fn path_connected(&self, b: Mask) -> bool {
        members(b).all(|x| {
            let mut seen = bit(x);
            let mut stack = vec![x];
            while let Some(y) = stack.pop() {
                for z in members(self.post[y] & b & !seen) {
                    seen |= bit(z);
                    stack.push(z);
                }
            }
            seen & b == b
        })
    }

    /// Whether the point set `a` satisfies `formula`.
    pub fn holds_collective(&self, a: &PointSet, formula: &CollectiveFormula) -> Result<bool, OracleError> {
        Ok(self.collective(self.to_mask(a)?, formula))
    }

    fn collective(&self, a: Mask, formula: &CollectiveFormula) -> bool {
        match formula {
            CollectiveFormula::Top => true,
            CollectiveFormula::Not(f) => !self.collective(a, f),
            CollectiveFormula::And(f, g) => self.collective(a, f) && self.collective(a, g),
            CollectiveFormula::Share(filter, f) => self.collective(a & self.sat_mask(filter), f),
            CollectiveFormula::Group(f) => {
                let region = self.sat_mask(f);
                a & !region == 0 && submasks(region & !a).any(|extra| self.path_connected(a | extra))
            }
        }
    }
}

/// Whether point `x` satisfies `formula`, by brute force.
pub fn oracle_sat_individual(model: &ClosureModel, formula: &IndividualFormula, x: usize) -> Result<bool, OracleError> {
    Ok(Oracle::new(model)?.holds(formula, x))
}

/// Whether the point set `a` satisfies `formula`, by brute force.
pub fn oracle_sat_collective(model: &ClosureModel, a: &PointSet, formula: &CollectiveFormula) -> Result<bool, OracleError> {
    Oracle::new(model)?.holds_collective(a, formula)
}
