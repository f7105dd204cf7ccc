//! Global model checking of individual formulas.
//!
//! [`Checker`] evaluates every distinct subformula once: formulas are
//! hash-consed into an arena whose children always precede their parents,
//! so evaluation is a single ascending sweep. Results persist across calls
//! on the same checker.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::CheckError;
use crate::logic::IndividualFormula;
use crate::model::ClosureModel;
use crate::pointset::PointSet;
use crate::space::QuasiDiscreteSpace;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Node {
    Top,
    Atom(String),
    Not(usize),
    And(usize, usize),
    Near(usize),
    Surrounded(usize, usize),
    Propagation(usize, usize),
}

/// Work counters of one worklist run.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WorklistStats {
    /// Points placed on the frontier, summed over all iterations.
    pub frontier_pushes: usize,
    /// Adjacency entries inspected.
    pub edge_visits: usize,
    /// Frontier sets in order, ending with the empty one (only when tracing).
    pub frontiers: Vec<PointSet>,
}

/// Memoizing evaluator of individual formulas on one model.
pub struct Checker<'m> {
    model: &'m ClosureModel,
    nodes: Vec<Node>,
    ids: HashMap<Node, usize>,
    results: Vec<PointSet>,
}

impl<'m> Checker<'m> {
    pub fn new(model: &'m ClosureModel) -> Self {
        Checker {
            model,
            nodes: Vec::new(),
            ids: HashMap::new(),
            results: Vec::new(),
        }
    }

    pub fn model(&self) -> &'m ClosureModel {
        self.model
    }

    /// Number of distinct subformulas seen so far.
    pub fn distinct_subformulas(&self) -> usize {
        self.nodes.len()
    }

    /// The points satisfying `formula`.
    pub fn sat(&mut self, formula: &IndividualFormula) -> PointSet {
        let root = self.intern(formula, &mut HashMap::new());
        for id in self.results.len()..self.nodes.len() {
            let value = self.evaluate(id);
            self.results.push(value);
        }
        self.results[root].clone()
    }

    fn intern(&mut self, f: &IndividualFormula, seen: &mut HashMap<*const IndividualFormula, usize>) -> usize {
        // Pointer keys are only trusted within one call, while `f` is borrowed.
        let key = f as *const IndividualFormula;
        if let Some(&id) = seen.get(&key) {
            return id;
        }
        let mut child = |g: &Arc<IndividualFormula>, this: &mut Self| this.intern(g, seen);
        let node = match f {
            IndividualFormula::Top => Node::Top,
            IndividualFormula::Atom(a) => Node::Atom(a.clone()),
            IndividualFormula::Not(g) => Node::Not(child(g, self)),
            IndividualFormula::Near(g) => Node::Near(child(g, self)),
            IndividualFormula::And(a, b) => {
                let a = child(a, self);
                Node::And(a, child(b, self))
            }
            IndividualFormula::Surrounded(a, b) => {
                let a = child(a, self);
                Node::Surrounded(a, child(b, self))
            }
            IndividualFormula::Propagation(a, b) => {
                let a = child(a, self);
                Node::Propagation(a, child(b, self))
            }
        };
        let id = match self.ids.get(&node) {
            Some(&id) => id,
            None => {
                let id = self.nodes.len();
                self.nodes.push(node.clone());
                self.ids.insert(node, id);
                id
            }
        };
        seen.insert(key, id);
        id
    }

    fn evaluate(&self, id: usize) -> PointSet {
        let space = self.model.space();
        let r = &self.results;
        match &self.nodes[id] {
            Node::Top => self.model.all_points(),
            Node::Atom(a) => self.model.atom(a),
            Node::Not(g) => r[*g].complement(),
            Node::And(a, b) => r[*a].intersection(&r[*b]),
            Node::Near(g) => space.closure_unchecked(&r[*g]),
            Node::Surrounded(a, b) => surrounded(space, &r[*a], &r[*b], None).0,
            Node::Propagation(a, b) => propagation(space, &r[*a], &r[*b], None).0,
        }
    }
}

/// The points of `model` satisfying `formula`.
pub fn sat(model: &ClosureModel, formula: &IndividualFormula) -> PointSet {
    Checker::new(model).sat(formula)
}

fn validate(model: &ClosureModel, sets: [&PointSet; 2]) -> Result<(), CheckError> {
    for s in sets {
        model.space().check_set(s)?;
    }
    Ok(())
}

/// Points of `v` from which every path leaving `v` first meets `q`:
/// the satisfying set of `φ1 S φ2` when `v`, `q` satisfy `φ1`, `φ2`.
pub fn check_surrounded(model: &ClosureModel, v: &PointSet, q: &PointSet) -> Result<PointSet, CheckError> {
    validate(model, [v, q])?;
    Ok(surrounded(model.space(), v, q, None).0)
}

/// [`check_surrounded`] recording every frontier and the work done.
pub fn check_surrounded_traced(
    model: &ClosureModel,
    v: &PointSet,
    q: &PointSet,
) -> Result<(PointSet, WorklistStats), CheckError> {
    validate(model, [v, q])?;
    let mut frontiers = Vec::new();
    let (result, mut stats) = surrounded(model.space(), v, q, Some(&mut frontiers));
    stats.frontiers = frontiers;
    Ok((result, stats))
}

/// Points of `q` reachable from `v` through points of `q`: the satisfying
/// set of `φ1 P φ2` when `v`, `q` satisfy `φ1`, `φ2`.
pub fn check_propagation(model: &ClosureModel, v: &PointSet, q: &PointSet) -> Result<PointSet, CheckError> {
    validate(model, [v, q])?;
    Ok(propagation(model.space(), v, q, None).0)
}

/// [`check_propagation`] recording every frontier and the work done.
pub fn check_propagation_traced(
    model: &ClosureModel,
    v: &PointSet,
    q: &PointSet,
) -> Result<(PointSet, WorklistStats), CheckError> {
    validate(model, [v, q])?;
    let mut frontiers = Vec::new();
    let (result, mut stats) = propagation(model.space(), v, q, Some(&mut frontiers));
    stats.frontiers = frontiers;
    Ok((result, stats))
}

fn record(kind: &str, frontier: &[u32], universe: usize, trace: &mut Option<&mut Vec<PointSet>>) {
    if let Some(t) = trace.as_deref_mut() {
        let mut set = PointSet::empty(universe);
        for &x in frontier {
            set.insert(x as usize);
        }
        t.push(set);
    }
    if log::log_enabled!(log::Level::Debug) {
        if frontier.len() <= 32 {
            log::debug!("{kind}: T = {frontier:?}");
        } else {
            log::debug!("{kind}: |T| = {}", frontier.len());
        }
    }
}

/// Backward elimination: repeatedly strip from `v` the points with an
/// edge into the current frontier of "bad" points.
fn surrounded(
    space: &QuasiDiscreteSpace,
    v: &PointSet,
    q: &PointSet,
    mut trace: Option<&mut Vec<PointSet>>,
) -> (PointSet, WorklistStats) {
    let mut stats = WorklistStats::default();
    let mut v = v.clone();
    let mut frontier: Vec<u32> = space
        .outer_boundary_unchecked(&v.union(q))
        .iter()
        .map(|x| x as u32)
        .collect();
    stats.frontier_pushes += frontier.len();
    record("surrounded", &frontier, space.point_count(), &mut trace);
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &x in &frontier {
            for &y in space.pre(x as usize) {
                stats.edge_visits += 1;
                // A point leaves `v` once, so it joins a frontier at most once.
                if v.remove(y as usize) && !q.contains(y as usize) {
                    next.push(y);
                }
            }
        }
        next.sort_unstable();
        stats.frontier_pushes += next.len();
        record("surrounded", &next, space.point_count(), &mut trace);
        frontier = next;
    }
    (v, stats)
}

/// Forward flood from the closure of `v` through points of `q`.
fn propagation(
    space: &QuasiDiscreteSpace,
    v: &PointSet,
    q: &PointSet,
    mut trace: Option<&mut Vec<PointSet>>,
) -> (PointSet, WorklistStats) {
    let mut stats = WorklistStats::default();
    let mut reached = space.closure_unchecked(v);
    reached.intersect_with(q);
    let mut remaining = q.difference(&reached);
    let mut frontier: Vec<u32> = reached.iter().map(|x| x as u32).collect();
    stats.frontier_pushes += frontier.len();
    record("propagation", &frontier, space.point_count(), &mut trace);
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &x in &frontier {
            for &y in space.post(x as usize) {
                stats.edge_visits += 1;
                if remaining.remove(y as usize) {
                    reached.insert(y as usize);
                    next.push(y);
                }
            }
        }
        next.sort_unstable();
        stats.frontier_pushes += next.len();
        record("propagation", &next, space.point_count(), &mut trace);
        frontier = next;
    }
    (reached, stats)
}
