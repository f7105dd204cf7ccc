//! Fixture generators shared by the benchmarks.

#[path = "../../core/tests/common/synth.rs"]
pub mod synth;

pub use synth::*;
