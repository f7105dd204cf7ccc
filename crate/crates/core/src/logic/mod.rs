//! Formula syntax: core trees, surface syntax, parser and query files.

pub mod ast;
pub mod desugar;
pub mod parser;
pub mod program;

pub use ast::{CollectiveFormula, IndividualFormula};
pub use desugar::{desugar_collective, desugar_individual, Macros, SurfaceCollective, SurfaceIndividual};
pub use parser::{
    parse_collective, parse_collective_surface, parse_collective_with, parse_individual,
    parse_individual_surface, parse_individual_with,
};
pub use program::{AskCommand, AskPoints, Declaration, PaintCommand, SpecProgram};
