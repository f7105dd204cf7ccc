//! Core abstract syntax of individual and collective formulas.
//!
//! Only the primitive connectives live here; derived operators are expanded
//! by [`super::desugar`]. Individual subterms are reference counted so that
//! macro expansion and desugaring share repeated subformulas instead of
//! copying them, which keeps the formula a DAG of linear size.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

/// Individual (point) formula.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum IndividualFormula {
    Top,
    Atom(String),
    Not(Arc<IndividualFormula>),
    And(Arc<IndividualFormula>, Arc<IndividualFormula>),
    Near(Arc<IndividualFormula>),
    Surrounded(Arc<IndividualFormula>, Arc<IndividualFormula>),
    Propagation(Arc<IndividualFormula>, Arc<IndividualFormula>),
}

/// Collective (point-set) formula.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CollectiveFormula {
    Top,
    Not(Box<CollectiveFormula>),
    And(Box<CollectiveFormula>, Box<CollectiveFormula>),
    Share(Arc<IndividualFormula>, Box<CollectiveFormula>),
    Group(Arc<IndividualFormula>),
}

type Ind = Arc<IndividualFormula>;

impl IndividualFormula {
    pub fn top() -> Ind {
        Arc::new(IndividualFormula::Top)
    }

    pub fn bottom() -> Ind {
        Self::not(Self::top())
    }

    pub fn atom(name: impl Into<String>) -> Ind {
        Arc::new(IndividualFormula::Atom(name.into()))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Ind) -> Ind {
        Arc::new(IndividualFormula::Not(f))
    }

    pub fn and(a: Ind, b: Ind) -> Ind {
        Arc::new(IndividualFormula::And(a, b))
    }

    pub fn near(f: Ind) -> Ind {
        Arc::new(IndividualFormula::Near(f))
    }

    pub fn surrounded(a: Ind, b: Ind) -> Ind {
        Arc::new(IndividualFormula::Surrounded(a, b))
    }

    pub fn propagation(a: Ind, b: Ind) -> Ind {
        Arc::new(IndividualFormula::Propagation(a, b))
    }

    /// Inductive size: constants and atoms count 1, each connective adds 1.
    /// Shared subterms are counted once per occurrence, as in the tree.
    pub fn size(&self) -> u64 {
        fn go(f: &IndividualFormula, memo: &mut HashMap<*const IndividualFormula, u64>) -> u64 {
            let key = f as *const _;
            if let Some(&s) = memo.get(&key) {
                return s;
            }
            let s = match f {
                IndividualFormula::Top | IndividualFormula::Atom(_) => 1,
                IndividualFormula::Not(g) | IndividualFormula::Near(g) => 1u64.saturating_add(go(g, memo)),
                IndividualFormula::And(a, b)
                | IndividualFormula::Surrounded(a, b)
                | IndividualFormula::Propagation(a, b) => {
                    1u64.saturating_add(go(a, memo)).saturating_add(go(b, memo))
                }
            };
            memo.insert(key, s);
            s
        }
        go(self, &mut HashMap::new())
    }

    /// Atomic propositions occurring in the formula.
    pub fn atoms(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    pub(crate) fn collect_atoms(&self, out: &mut BTreeSet<String>) {
        let mut stack = vec![self];
        while let Some(f) = stack.pop() {
            match f {
                IndividualFormula::Top => {}
                IndividualFormula::Atom(a) => {
                    out.insert(a.clone());
                }
                IndividualFormula::Not(g) | IndividualFormula::Near(g) => stack.push(g),
                IndividualFormula::And(a, b)
                | IndividualFormula::Surrounded(a, b)
                | IndividualFormula::Propagation(a, b) => {
                    stack.push(a);
                    stack.push(b);
                }
            }
        }
    }
}

impl CollectiveFormula {
    pub fn top() -> Self {
        CollectiveFormula::Top
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: CollectiveFormula) -> Self {
        CollectiveFormula::Not(Box::new(f))
    }

    pub fn and(a: CollectiveFormula, b: CollectiveFormula) -> Self {
        CollectiveFormula::And(Box::new(a), Box::new(b))
    }

    pub fn share(filter: Ind, f: CollectiveFormula) -> Self {
        CollectiveFormula::Share(filter, Box::new(f))
    }

    pub fn group(f: Ind) -> Self {
        CollectiveFormula::Group(f)
    }

    pub fn size(&self) -> u64 {
        match self {
            CollectiveFormula::Top => 1,
            CollectiveFormula::Not(f) => 1u64.saturating_add(f.size()),
            CollectiveFormula::Group(f) => 1u64.saturating_add(f.size()),
            CollectiveFormula::And(a, b) => 1u64.saturating_add(a.size()).saturating_add(b.size()),
            CollectiveFormula::Share(f, g) => 1u64.saturating_add(f.size()).saturating_add(g.size()),
        }
    }

    pub fn atoms(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        let mut stack = vec![self];
        while let Some(f) = stack.pop() {
            match f {
                CollectiveFormula::Top => {}
                CollectiveFormula::Not(g) => stack.push(g),
                CollectiveFormula::And(a, b) => {
                    stack.push(a);
                    stack.push(b);
                }
                CollectiveFormula::Share(i, g) => {
                    i.collect_atoms(&mut out);
                    stack.push(g);
                }
                CollectiveFormula::Group(i) => i.collect_atoms(&mut out),
            }
        }
        out
    }
}

// Printing emits the core syntax accepted by the parser; binary nodes are
// always parenthesised so the output parses back to the same tree.

impl fmt::Display for IndividualFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IndividualFormula::Top => f.write_str("TT"),
            IndividualFormula::Atom(a) => f.write_str(a),
            IndividualFormula::Not(g) => write!(f, "!{g}"),
            IndividualFormula::Near(g) => write!(f, "N {g}"),
            IndividualFormula::And(a, b) => write!(f, "({a} & {b})"),
            IndividualFormula::Surrounded(a, b) => write!(f, "({a} S {b})"),
            IndividualFormula::Propagation(a, b) => write!(f, "({a} P {b})"),
        }
    }
}

impl fmt::Display for CollectiveFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CollectiveFormula::Top => f.write_str("TT"),
            CollectiveFormula::Not(g) => write!(f, "!{g}"),
            CollectiveFormula::And(a, b) => write!(f, "({a} & {b})"),
            CollectiveFormula::Share(i, g) => write!(f, "({i} -< {g})"),
            CollectiveFormula::Group(i) => write!(f, "G {i}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    type F = IndividualFormula;

    #[test]
    fn sizes() {
        assert_eq!(F::Top.size(), 1);
        assert_eq!(F::surrounded(F::atom("a"), F::atom("b")).size(), 3);
        assert_eq!(F::near(F::near(F::atom("a"))).size(), 3);
        let shared = F::atom("x");
        assert_eq!(F::and(shared.clone(), shared).size(), 3);
        assert_eq!(CollectiveFormula::group(F::atom("a")).size(), 2);
        assert_eq!(
            CollectiveFormula::share(F::atom("a"), CollectiveFormula::top()).size(),
            3
        );
    }

    #[test]
    fn display_core_syntax() {
        let f = F::not(F::and(F::atom("a"), F::near(F::bottom())));
        assert_eq!(f.to_string(), "!(a & N !TT)");
        let c = CollectiveFormula::share(F::atom("b"), CollectiveFormula::group(f));
        assert_eq!(c.to_string(), "(b -< G !(a & N !TT))");
    }
}
