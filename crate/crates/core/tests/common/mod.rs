#![allow(dead_code)]

pub mod synth;

use std::collections::VecDeque;
use std::path::PathBuf;
use std::sync::Arc;

use rand::rngs::StdRng;
use rand::Rng;
use spatialmc::io::{image_model, load_graph_model, load_pixmap, Rgb};
use spatialmc::{
    build_grid_4adj, ClosureModel, CollectiveFormula, IndividualFormula, PointSet, QuasiDiscreteSpace,
};

pub type Ind = Arc<IndividualFormula>;
pub type F = IndividualFormula;
pub type C = CollectiveFormula;

pub const ATOMS: [&str; 3] = ["a", "b", "c"];

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

pub fn paper_graph() -> ClosureModel {
    load_graph_model(fixture("paper-graph-10.graph")).unwrap()
}

pub fn partition(left: bool) -> ClosureModel {
    let name = if left { "partition-6-left.graph" } else { "partition-6-right.graph" };
    load_graph_model(fixture(name)).unwrap()
}

pub fn set(n: usize, points: impl IntoIterator<Item = usize>) -> PointSet {
    PointSet::from_points(n, points).unwrap()
}

pub fn rgb(hex: &str) -> Rgb {
    Rgb::from_hex(hex).unwrap()
}

/// Loads a fixture raster with a `name → #rrggbb` palette.
pub fn image(name: &str, palette: &[(&str, &str)]) -> ClosureModel {
    let palette: Vec<_> = palette.iter().map(|(p, c)| (p.to_string(), rgb(c))).collect();
    image_model(load_pixmap(fixture(name)).unwrap(), &palette, &[]).unwrap().model
}

pub fn two_holes() -> ClosureModel {
    image(
        "two-holes-11.ppm",
        &[("white", "#ffffff"), ("black", "#000000"), ("gray", "#808080")],
    )
}

pub const MAZE_PALETTE: [(&str, &str); 3] = [("white", "#ffffff"), ("blue", "#0000ff"), ("green", "#00ff00")];

/// Index of 0-based `(column, row)` in a raster of the given width.
pub fn px(width: usize, column: usize, row: usize) -> usize {
    row * width + column
}

/// The 9×5 grid of the quasi-discrete space illustration, addressed by
/// 1-based `(i, j)` with `(1, 1)` at the bottom left.
pub fn fig6_index(i: usize, j: usize) -> usize {
    px(9, i - 1, 5 - j)
}

pub fn fig6_grid() -> ClosureModel {
    let pts = |cells: &[(usize, usize)]| cells.iter().map(|&(i, j)| fig6_index(i, j)).collect::<Vec<_>>();
    let m = ClosureModel::new(build_grid_4adj(9, 5).unwrap())
        .with_points("yellow", pts(&[(1, 1), (2, 1), (1, 2), (2, 2)]))
        .and_then(|m| m.with_points("red", pts(&[(3, 1), (3, 2), (1, 3), (2, 3)])))
        .and_then(|m| {
            m.with_points(
                "blue",
                pts(&[(6, 2), (7, 2), (5, 3), (8, 3), (5, 4), (8, 4), (6, 5), (7, 5)]),
            )
        })
        .and_then(|m| m.with_points("green", pts(&[(6, 3), (7, 3), (6, 4), (7, 4)])))
        .unwrap();
    let coloured = m.propositions().fold(PointSet::empty(45), |acc, (_, s)| acc.union(s));
    m.with_proposition("white", coloured.complement()).unwrap()
}

// ---------------------------------------------------------------- random

pub fn random_pairs(rng: &mut StdRng, n: usize, density: f64) -> Vec<(usize, usize)> {
    let mut pairs = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if x != y && rng.random_bool(density) {
                pairs.push((x, y));
            }
        }
    }
    pairs
}

pub fn random_space(rng: &mut StdRng, n: usize, density: f64) -> QuasiDiscreteSpace {
    QuasiDiscreteSpace::from_edges(n, random_pairs(rng, n, density)).unwrap()
}

pub fn random_set(rng: &mut StdRng, n: usize) -> PointSet {
    let p = rng.random_range(0.0..=1.0);
    PointSet::from_fn(n, |_| rng.random_bool(p))
}

/// A directed model on `1..=max_points` points with atoms `a`, `b`, `c`.
pub fn random_model(rng: &mut StdRng, max_points: usize, density: f64) -> ClosureModel {
    let n = rng.random_range(1..=max_points);
    let mut model = ClosureModel::new(random_space(rng, n, density));
    for atom in ATOMS {
        let s = random_set(rng, n);
        model.set_proposition(atom, s).unwrap();
    }
    model
}

/// A core individual formula of depth at most `depth` over every constructor.
pub fn random_formula(rng: &mut StdRng, depth: usize) -> Ind {
    if depth == 0 || rng.random_bool(0.2) {
        return match rng.random_range(0..8) {
            0 => F::top(),
            1 => F::bottom(),
            _ => F::atom(ATOMS[rng.random_range(0..ATOMS.len())]),
        };
    }
    let d = depth - 1;
    match rng.random_range(0..6) {
        0 => F::not(random_formula(rng, d)),
        1 => F::and(random_formula(rng, d), random_formula(rng, d)),
        2 => F::near(random_formula(rng, d)),
        3 => F::surrounded(random_formula(rng, d), random_formula(rng, d)),
        4 => F::propagation(random_formula(rng, d), random_formula(rng, d)),
        _ => F::not(F::and(random_formula(rng, d), F::not(random_formula(rng, d)))),
    }
}

pub fn random_collective(rng: &mut StdRng, depth: usize, individual_depth: usize) -> C {
    if depth == 0 || rng.random_bool(0.2) {
        return if rng.random_bool(0.15) {
            C::top()
        } else {
            C::group(random_formula(rng, individual_depth))
        };
    }
    let d = depth - 1;
    match rng.random_range(0..5) {
        0 => C::not(random_collective(rng, d, individual_depth)),
        1 => C::and(
            random_collective(rng, d, individual_depth),
            random_collective(rng, d, individual_depth),
        ),
        2 | 3 => C::share(
            random_formula(rng, individual_depth),
            random_collective(rng, d, individual_depth),
        ),
        _ => C::group(random_formula(rng, individual_depth)),
    }
}

// ------------------------------------------------------------ references

/// Points reachable from `from` in zero or more steps, every step landing
/// in `allowed`.
pub fn reach_within(space: &QuasiDiscreteSpace, from: &PointSet, allowed: &PointSet) -> PointSet {
    let mut seen = from.clone();
    let mut queue: VecDeque<usize> = from.iter().collect();
    while let Some(x) = queue.pop_front() {
        for &y in space.post(x) {
            let y = y as usize;
            if allowed.contains(y) && seen.insert(y) {
                queue.push_back(y);
            }
        }
    }
    seen
}

/// Points reachable from `x` in zero or more steps.
pub fn reachable_from(space: &QuasiDiscreteSpace, x: usize) -> PointSet {
    let n = space.point_count();
    reach_within(space, &set(n, [x]), &PointSet::full(n))
}

/// Labels the strongly connected components of the subgraph induced by `b`
/// by mutual reachability; points outside `b` get `None`.
pub fn scc_labels(space: &QuasiDiscreteSpace, b: &PointSet) -> Vec<Option<usize>> {
    let n = space.point_count();
    let reach: Vec<PointSet> = (0..n)
        .map(|x| {
            if b.contains(x) {
                reach_within(space, &set(n, [x]), b)
            } else {
                PointSet::empty(n)
            }
        })
        .collect();
    let mut labels = vec![None; n];
    for x in b.iter() {
        if labels[x].is_some() {
            continue;
        }
        for y in reach[x].iter() {
            if reach[y].contains(x) {
                labels[y] = Some(x);
            }
        }
    }
    labels
}
