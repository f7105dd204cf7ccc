//! Surface syntax and its expansion into core connectives.

use std::collections::HashMap;
use std::sync::Arc;

use super::ast::{CollectiveFormula, IndividualFormula};

type Ind = Arc<IndividualFormula>;
type F = IndividualFormula;

/// Individual formula as written, with every derived operator.
#[derive(Clone, Debug, PartialEq)]
pub enum SurfaceIndividual {
    Top,
    Bottom,
    /// A proposition, a color literal, or a macro name.
    Atom(String),
    Not(Box<SurfaceIndividual>),
    And(Box<SurfaceIndividual>, Box<SurfaceIndividual>),
    Or(Box<SurfaceIndividual>, Box<SurfaceIndividual>),
    Near(Box<SurfaceIndividual>),
    Interior(Box<SurfaceIndividual>),
    Boundary(Box<SurfaceIndividual>),
    InnerBoundary(Box<SurfaceIndividual>),
    ClosureBoundary(Box<SurfaceIndividual>),
    Everywhere(Box<SurfaceIndividual>),
    Somewhere(Box<SurfaceIndividual>),
    Surrounded(Box<SurfaceIndividual>, Box<SurfaceIndividual>),
    Propagation(Box<SurfaceIndividual>, Box<SurfaceIndividual>),
    Reach(Box<SurfaceIndividual>, Box<SurfaceIndividual>),
    Touch(Box<SurfaceIndividual>, Box<SurfaceIndividual>),
    Apart(Box<SurfaceIndividual>, Box<SurfaceIndividual>),
}

/// Collective formula as written.
#[derive(Clone, Debug, PartialEq)]
pub enum SurfaceCollective {
    Top,
    Bottom,
    Not(Box<SurfaceCollective>),
    And(Box<SurfaceCollective>, Box<SurfaceCollective>),
    Or(Box<SurfaceCollective>, Box<SurfaceCollective>),
    Share(SurfaceIndividual, Box<SurfaceCollective>),
    Group(SurfaceIndividual),
    Forall(SurfaceIndividual),
    Exists(SurfaceIndividual),
    Empty,
    CollectivelySurrounded(SurfaceIndividual, SurfaceIndividual),
    Partitioned(SurfaceIndividual, SurfaceIndividual),
}

/// Already-expanded macro bodies, substituted for matching atom names.
pub type Macros = HashMap<String, Ind>;

fn or(a: Ind, b: Ind) -> Ind {
    F::not(F::and(F::not(a), F::not(b)))
}

fn interior(f: Ind) -> Ind {
    F::not(F::near(F::not(f)))
}

/// `a U b = !((!b) S (!a))`
fn reach(a: Ind, b: Ind) -> Ind {
    F::not(F::surrounded(F::not(b), F::not(a)))
}

fn everywhere(f: Ind) -> Ind {
    F::surrounded(f, F::bottom())
}

pub fn desugar_individual(term: &SurfaceIndividual, macros: &Macros) -> Ind {
    use SurfaceIndividual as S;
    let go = |t: &S| desugar_individual(t, macros);
    match term {
        S::Top => F::top(),
        S::Bottom => F::bottom(),
        S::Atom(name) => match macros.get(name) {
            Some(body) => body.clone(),
            None => F::atom(name.clone()),
        },
        S::Not(a) => F::not(go(a)),
        S::And(a, b) => F::and(go(a), go(b)),
        S::Or(a, b) => or(go(a), go(b)),
        S::Near(a) => F::near(go(a)),
        S::Interior(a) => interior(go(a)),
        S::Boundary(a) => {
            let a = go(a);
            F::and(F::near(a.clone()), F::not(interior(a)))
        }
        S::InnerBoundary(a) => {
            let a = go(a);
            F::and(a.clone(), F::not(interior(a)))
        }
        S::ClosureBoundary(a) => {
            let a = go(a);
            F::and(F::near(a.clone()), F::not(a))
        }
        S::Everywhere(a) => everywhere(go(a)),
        S::Somewhere(a) => F::not(everywhere(F::not(go(a)))),
        S::Surrounded(a, b) => F::surrounded(go(a), go(b)),
        S::Propagation(a, b) => F::propagation(go(a), go(b)),
        S::Reach(a, b) => reach(go(a), go(b)),
        S::Touch(a, b) => {
            let (a, b) = (go(a), go(b));
            F::and(a.clone(), reach(or(a, b.clone()), b))
        }
        S::Apart(a, b) => F::not(F::propagation(go(a), F::not(go(b)))),
    }
}

fn forall(f: Ind) -> CollectiveFormula {
    CollectiveFormula::share(F::not(f), CollectiveFormula::group(F::bottom()))
}

/// `a CS b = G(!b & (a S b))`
fn collectively_surrounded(a: Ind, b: Ind) -> CollectiveFormula {
    CollectiveFormula::group(F::and(F::not(b.clone()), F::surrounded(a, b)))
}

pub fn desugar_collective(term: &SurfaceCollective, macros: &Macros) -> CollectiveFormula {
    use SurfaceCollective as S;
    type C = CollectiveFormula;
    let ind = |t: &SurfaceIndividual| desugar_individual(t, macros);
    let go = |t: &S| desugar_collective(t, macros);
    match term {
        S::Top => C::top(),
        S::Bottom => C::not(C::top()),
        S::Not(a) => C::not(go(a)),
        S::And(a, b) => C::and(go(a), go(b)),
        S::Or(a, b) => C::not(C::and(C::not(go(a)), C::not(go(b)))),
        S::Share(f, a) => C::share(ind(f), go(a)),
        S::Group(f) => C::group(ind(f)),
        S::Forall(f) => forall(ind(f)),
        S::Exists(f) => C::not(forall(F::not(ind(f)))),
        S::Empty => forall(F::bottom()),
        S::CollectivelySurrounded(a, b) => collectively_surrounded(ind(a), ind(b)),
        S::Partitioned(a, b) => {
            let (a, b) = (ind(a), ind(b));
            let exclusive = F::and(or(a.clone(), b.clone()), F::not(F::and(a.clone(), b.clone())));
            C::and(
                forall(exclusive),
                C::and(
                    C::share(a.clone(), collectively_surrounded(a.clone(), b.clone())),
                    C::share(b.clone(), collectively_surrounded(b, a)),
                ),
            )
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use SurfaceIndividual as S;

    fn atom(n: &str) -> Box<S> {
        Box::new(S::Atom(n.into()))
    }

    fn core(t: &S) -> Ind {
        desugar_individual(t, &Macros::new())
    }

    #[test]
    fn everywhere_is_surrounded_by_falsum() {
        assert_eq!(
            core(&S::Everywhere(atom("a"))),
            F::surrounded(F::atom("a"), F::not(F::top()))
        );
    }

    #[test]
    fn reach_and_touch() {
        let u = core(&S::Reach(atom("a"), atom("b")));
        assert_eq!(
            u,
            F::not(F::surrounded(F::not(F::atom("b")), F::not(F::atom("a"))))
        );
        let t = core(&S::Touch(atom("a"), atom("b")));
        let expected = F::and(
            F::atom("a"),
            reach(or(F::atom("a"), F::atom("b")), F::atom("b")),
        );
        assert_eq!(t, expected);
    }

    #[test]
    fn boundaries() {
        let a = F::atom("a");
        let int_a = F::not(F::near(F::not(a.clone())));
        assert_eq!(core(&S::Interior(atom("a"))), int_a);
        assert_eq!(
            core(&S::Boundary(atom("a"))),
            F::and(F::near(a.clone()), F::not(int_a.clone()))
        );
        assert_eq!(
            core(&S::InnerBoundary(atom("a"))),
            F::and(a.clone(), F::not(int_a))
        );
        assert_eq!(
            core(&S::ClosureBoundary(atom("a"))),
            F::and(F::near(a.clone()), F::not(a))
        );
    }

    #[test]
    fn apart_and_somewhere() {
        assert_eq!(
            core(&S::Apart(atom("a"), atom("b"))),
            F::not(F::propagation(F::atom("a"), F::not(F::atom("b"))))
        );
        assert_eq!(
            core(&S::Somewhere(atom("a"))),
            F::not(F::surrounded(F::not(F::atom("a")), F::bottom()))
        );
    }

    #[test]
    fn collective_derived_forms() {
        let m = Macros::new();
        let cs = desugar_collective(
            &SurfaceCollective::CollectivelySurrounded(S::Atom("a".into()), S::Atom("b".into())),
            &m,
        );
        assert_eq!(
            cs,
            CollectiveFormula::group(F::and(
                F::not(F::atom("b")),
                F::surrounded(F::atom("a"), F::atom("b"))
            ))
        );
        let empty = desugar_collective(&SurfaceCollective::Empty, &m);
        assert_eq!(
            empty,
            CollectiveFormula::share(F::not(F::bottom()), CollectiveFormula::group(F::bottom()))
        );
    }

    #[test]
    fn macros_are_shared_not_copied() {
        let mut m = Macros::new();
        let body = F::near(F::atom("x"));
        m.insert("m".into(), body.clone());
        let f = desugar_individual(&S::And(atom("m"), atom("m")), &m);
        let IndividualFormula::And(l, r) = &*f else {
            panic!("expected conjunction")
        };
        assert!(Arc::ptr_eq(l, &body) && Arc::ptr_eq(r, &body));
    }
}
