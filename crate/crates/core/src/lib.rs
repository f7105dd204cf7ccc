//! Spatial model checking on finite quasi-discrete closure spaces.
//!
//! A [`ClosureModel`] pairs a [`QuasiDiscreteSpace`] (points and a relation
//! inducing a closure operator) with a valuation of atomic propositions.
//! Individual formulas are checked globally with [`sat`], returning every
//! satisfying point; collective formulas are checked on a given point set
//! with [`sat_collective`].
//!
//! ```
//! use spatialmc::{parse_individual, sat, ClosureModel, QuasiDiscreteSpace};
//!
//! let space = QuasiDiscreteSpace::from_edges(3, [(0, 1), (1, 0), (1, 2), (2, 1)]).unwrap();
//! let model = ClosureModel::new(space)
//!     .with_points("inner", [0])
//!     .unwrap()
//!     .with_points("wall", [1])
//!     .unwrap();
//! let f = parse_individual("inner S wall").unwrap();
//! assert_eq!(sat(&model, &f).to_vec(), vec![0]);
//! ```

pub mod cslcs;
pub mod error;
pub mod io;
pub mod logic;
pub mod model;
pub mod oracle;
pub mod pointset;
pub mod slcs;
pub mod space;

pub use cslcs::{check_group, check_group_from, sat_collective, CollectiveChecker, GroupOutcome};
pub use error::{CheckError, ModelIoError, OracleError, ParseError, SpaceError};
pub use logic::{parse_collective, parse_individual, CollectiveFormula, IndividualFormula, SpecProgram};
pub use model::ClosureModel;
pub use oracle::{oracle_sat_collective, oracle_sat_individual, Oracle, Walk, ORACLE_LIMIT};
pub use pointset::PointSet;
pub use slcs::{
    check_propagation, check_propagation_traced, check_surrounded, check_surrounded_traced, sat, Checker,
    WorklistStats,
};
pub use space::{
    build_delta_graph, build_grid_4adj, BoundaryKind, Direction, PointLabels, QuasiDiscreteSpace,
    SEPARATION_SEARCH_LIMIT,
};
