//! Rainbow matchings in edge-colored graphs.
//!
//! Graph types and the instance format live in [`graph`] and [`io`]; the
//! constructive machinery is split over [`structure`], [`weights`] and
//! [`solvers`]; [`generators`] and [`experiment`] produce and run instances.

pub mod experiment;
pub mod generators;
pub mod graph;
pub mod io;
pub mod solvers;
pub mod structure;
pub mod weights;

pub use generators::{Family, GenError, GenSpec};
pub use graph::{
    check_rainbow_matching, is_rainbow_matching, Color, ColorDegreeProfile, Edge, EdgeColoredGraph, GraphError,
    Matching, MatchingViolation, Vertex,
};
pub use io::{load_edge_list, load_instance, save_instance};
pub use solvers::{pipeline_solve, solve_with, Algorithm, SolveError, SolveResult, SolveTrace, DEFAULT_BUDGET};
pub use structure::{Case, CaseLabel, StructureError};
pub use weights::Weight;
