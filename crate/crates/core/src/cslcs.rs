//! Local model checking of collective formulas.
//!
//! `G φ` holds on a set `A` when `A` fits inside one path-connected set of
//! `φ`-points, i.e. inside a single strongly connected component of the
//! subgraph induced by `Sat(φ)`. [`check_group`] finds that component with
//! an iterative Tarjan search started from a point of `A`.

use crate::error::CheckError;
use crate::logic::CollectiveFormula;
use crate::model::ClosureModel;
use crate::pointset::PointSet;
use crate::slcs::Checker;
use crate::space::QuasiDiscreteSpace;

/// Result of one group search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupOutcome {
    pub holds: bool,
    /// The strongly connected component that decided the answer, when
    /// recorded.
    pub component: Option<PointSet>,
    /// Points pushed on the Tarjan stack.
    pub pushes: usize,
    /// Edges inside `B` traversed.
    pub edge_visits: usize,
}

/// Evaluator of collective formulas; individual subformulas are memoized.
pub struct CollectiveChecker<'m> {
    individual: Checker<'m>,
}

impl<'m> CollectiveChecker<'m> {
    pub fn new(model: &'m ClosureModel) -> Self {
        CollectiveChecker {
            individual: Checker::new(model),
        }
    }

    /// Whether `points` satisfies `formula`.
    pub fn check(&mut self, points: &PointSet, formula: &CollectiveFormula) -> Result<bool, CheckError> {
        self.individual.model().space().check_set(points)?;
        Ok(self.eval(points, formula))
    }

    /// Global satisfaction: the formula evaluated at the whole space.
    pub fn check_global(&mut self, formula: &CollectiveFormula) -> bool {
        let all = self.individual.model().all_points();
        self.eval(&all, formula)
    }

    fn eval(&mut self, a: &PointSet, formula: &CollectiveFormula) -> bool {
        match formula {
            CollectiveFormula::Top => true,
            CollectiveFormula::Not(f) => !self.eval(a, f),
            CollectiveFormula::And(f, g) => self.eval(a, f) && self.eval(a, g),
            CollectiveFormula::Share(filter, f) => {
                let filtered = a.intersection(&self.individual.sat(filter));
                self.eval(&filtered, f)
            }
            CollectiveFormula::Group(f) => {
                if a.is_empty() {
                    return true;
                }
                let b = self.individual.sat(f);
                if !a.is_subset(&b) {
                    return false;
                }
                let start = a.first().expect("non-empty");
                group_search(self.individual.model().space(), a, &b, start, false).holds
            }
        }
    }
}

/// Whether `points` satisfies `formula` in `model`.
pub fn sat_collective(
    model: &ClosureModel,
    points: &PointSet,
    formula: &CollectiveFormula,
) -> Result<bool, CheckError> {
    CollectiveChecker::new(model).check(points, formula)
}

/// Whether `a` lies within one strongly connected component of the
/// subgraph induced by `b`. Requires `∅ ≠ a ⊆ b`.
pub fn check_group(model: &ClosureModel, a: &PointSet, b: &PointSet) -> Result<bool, CheckError> {
    let start = a.first().ok_or(CheckError::Precondition("the set must be non-empty"))?;
    Ok(check_group_from(model, a, b, start)?.holds)
}

/// [`check_group`] started from a chosen point of `a`, recording the
/// deciding component and work counters.
pub fn check_group_from(
    model: &ClosureModel,
    a: &PointSet,
    b: &PointSet,
    start: usize,
) -> Result<GroupOutcome, CheckError> {
    let space = model.space();
    space.check_set(a)?;
    space.check_set(b)?;
    if !a.is_subset(b) {
        return Err(CheckError::Precondition("the set must be contained in the search region"));
    }
    if start >= a.universe() || !a.contains(start) {
        return Err(CheckError::Precondition("the start point must belong to the set"));
    }
    Ok(group_search(space, a, b, start, true))
}

const UNVISITED: u32 = u32::MAX;

struct Tarjan {
    index: Vec<u32>,
    low: Vec<u32>,
    on_stack: PointSet,
    stack: Vec<u32>,
    // Explicit DFS frames: (point, position in its successor list).
    frames: Vec<(u32, usize)>,
    clock: u32,
    pushes: usize,
}

impl Tarjan {
    fn visit(&mut self, x: u32) {
        self.index[x as usize] = self.clock;
        self.low[x as usize] = self.clock;
        self.clock += 1;
        self.stack.push(x);
        self.on_stack.insert(x as usize);
        self.frames.push((x, 0));
        self.pushes += 1;
    }
}

fn group_search(
    space: &QuasiDiscreteSpace,
    a: &PointSet,
    b: &PointSet,
    start: usize,
    record: bool,
) -> GroupOutcome {
    let n = space.point_count();
    let mut t = Tarjan {
        index: vec![UNVISITED; n],
        low: vec![0; n],
        on_stack: PointSet::empty(n),
        stack: Vec::new(),
        frames: Vec::new(),
        clock: 0,
        pushes: 0,
    };
    let mut edge_visits = 0;
    t.visit(start as u32);

    while let Some(&mut (x, ref mut next)) = t.frames.last_mut() {
        let x = x as usize;
        if let Some(&y) = space.post(x).get(*next) {
            *next += 1;
            if !b.contains(y as usize) {
                continue;
            }
            edge_visits += 1;
            if t.index[y as usize] == UNVISITED {
                t.visit(y);
            } else if t.on_stack.contains(y as usize) {
                // Points of finished components are skipped: they cannot
                // share a component with `x`.
                t.low[x] = t.low[x].min(t.index[y as usize]);
            }
            continue;
        }
        t.frames.pop();
        if let Some(&(parent, _)) = t.frames.last() {
            t.low[parent as usize] = t.low[parent as usize].min(t.low[x]);
        }
        if t.low[x] != t.index[x] {
            continue;
        }
        // `x` roots a component: pop it, counting members of `a`.
        let mut hits = 0;
        let mut component = record.then(|| PointSet::empty(n));
        loop {
            let y = t.stack.pop().expect("component root is on the stack") as usize;
            t.on_stack.remove(y);
            if a.contains(y) {
                hits += 1;
            }
            if let Some(c) = component.as_mut() {
                c.insert(y);
            }
            if y == x {
                break;
            }
        }
        if hits > 0 {
            return GroupOutcome {
                holds: hits == a.len(),
                component,
                pushes: t.pushes,
                edge_visits,
            };
        }
    }
    unreachable!("the component of the start point contains a member of the set")
}
