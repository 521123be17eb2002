//! Structural preprocessing for the constructive search: star decomposition,
//! reduction to a critical graph, the stable orientation, and the `C`/`L`
//! partition with its case classification.

mod decomposition;
mod orient;
mod partition;
mod reduce;

use thiserror::Error;

pub use decomposition::{star_decomposition, EdgeRole, Star, StarDecomposition};
pub use orient::{lex_improves, orient, Move, Orientation};
pub use partition::{
    above_threshold, classify_case, maximal_stars, partition, threshold_n, Case, CaseLabel, MonoStar,
    VertexPartition,
};
pub use reduce::{is_critical, reduce_to_critical, Deletion, DeletionRule};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StructureError {
    #[error("minimum color degree {min} is below k = {k}")]
    ColorDegreeTooSmall { min: usize, k: usize },
    #[error("{violations} edge(s) break the star-forest property")]
    NotStarForest { violations: usize },
    #[error("decomposition does not belong to this graph")]
    DecompositionMismatch,
}
