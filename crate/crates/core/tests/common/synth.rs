//! Synthetic models for scaling tests and benchmarks.

use std::sync::Arc;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use spatialmc::{build_grid_4adj, ClosureModel, IndividualFormula, PointSet, SpecProgram};

/// A `width × height` 4-adjacency grid with each pixel independently
/// `black` (probability `black_density`) or `white`.
pub fn random_grid(width: usize, height: usize, black_density: f64, seed: u64) -> ClosureModel {
    let mut rng = StdRng::seed_from_u64(seed);
    let n = width * height;
    let black = PointSet::from_fn(n, |_| rng.random_bool(black_density));
    let white = black.complement();
    ClosureModel::new(build_grid_4adj(width, height).expect("positive dimensions"))
        .with_proposition("black", black)
        .and_then(|m| m.with_proposition("white", white))
        .expect("sets match the grid")
}

/// A square building plan: rooms of `room` pixels separated by one-pixel
/// walls with doors (some locked), a first-aid patch in some rooms, hazard
/// discs, and an exit strip on the east side.
///
/// Propositions: `white`, `black`, `red`, `green`, `danger`.
pub fn evacuation_raster(side: usize, room: usize, seed: u64) -> ClosureModel {
    let mut rng = StdRng::seed_from_u64(seed);
    let n = side * side;
    let idx = |c: usize, r: usize| r * side + c;
    let pitch = room + 1;
    let mut black = PointSet::empty(n);
    let mut red = PointSet::empty(n);
    let mut green = PointSet::empty(n);
    let mut danger = PointSet::empty(n);

    let is_wall = |v: usize| v.is_multiple_of(pitch) || v == side - 1;
    for r in 0..side {
        for c in 0..side {
            if is_wall(c) || is_wall(r) {
                black.insert(idx(c, r));
            }
        }
    }
    // Doors in the middle of each inner wall segment; about one in six stays shut.
    let rooms = (side - 1).div_ceil(pitch);
    for i in 0..rooms {
        for j in 0..rooms {
            let (c0, r0) = (i * pitch, j * pitch);
            let mid = room / 2 + 1;
            if c0 + pitch < side - 1 && r0 + mid < side - 1 && !rng.random_bool(1.0 / 6.0) {
                black.remove(idx(c0 + pitch, r0 + mid));
            }
            if r0 + pitch < side - 1 && c0 + mid < side - 1 && !rng.random_bool(1.0 / 6.0) {
                black.remove(idx(c0 + mid, r0 + pitch));
            }
            if rng.random_bool(0.25) {
                for dr in 2..4.min(room) {
                    for dc in 2..4.min(room) {
                        if c0 + dc < side - 1 && r0 + dr < side - 1 {
                            red.insert(idx(c0 + dc, r0 + dr));
                        }
                    }
                }
            }
        }
    }
    // Exit: the middle third of the east wall opens onto a green strip.
    for r in side / 3..2 * side / 3 {
        let x = idx(side - 1, r);
        black.remove(x);
        green.insert(x);
    }
    let discs = (side / 64).max(1);
    for _ in 0..discs {
        let (cx, cy) = (rng.random_range(0..side) as i64, rng.random_range(0..side) as i64);
        let radius = (room as i64 / 2).max(1);
        for r in (cy - radius).max(0)..(cy + radius + 1).min(side as i64) {
            for c in (cx - radius).max(0)..(cx + radius + 1).min(side as i64) {
                if (r - cy).pow(2) + (c - cx).pow(2) <= radius * radius {
                    danger.insert(idx(c as usize, r as usize));
                }
            }
        }
    }
    let mut white = black.union(&green).union(&red);
    white.complement_in_place();

    let mut model = ClosureModel::new(build_grid_4adj(side, side).expect("positive dimensions"));
    for (name, set) in [("white", white), ("black", black), ("red", red), ("green", green), ("danger", danger)] {
        model.set_proposition(name, set).expect("sets match the grid");
    }
    model
}

/// Query macros for the building plans, ending with `phi5`: safe points
/// from which a safe route leads to a first-aid point that can itself
/// safely reach the exit.
pub const EVACUATION_MACROS: &str = "
let obstacle = black | danger;
let safe = (white | red) & !obstacle;
let phi4 = (red & safe) & (safe T green);
let phi5 = safe T phi4;
";

pub fn phi5() -> Arc<IndividualFormula> {
    let program = SpecProgram::parse(EVACUATION_MACROS).expect("macros parse");
    program.macros["phi5"].clone()
}
