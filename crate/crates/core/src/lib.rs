//! Exact construction, duality and refutation of monotone simultaneous
//! embeddings of paths.
//!
//! A set of paths on a shared labeled vertex set is a list of permutations.
//! A *monotone simultaneous embedding* places the vertices as points in `R^d`
//! and picks one direction per path so that every path is strictly monotone
//! along its direction. Its dual, a *parallel simultaneous embedding*, is one
//! non-vertical hyperplane per vertex and one vertical line per path such that
//! each line meets the hyperplanes bottom to top in the order of its path.
//!
//! The modules follow that structure:
//!
//! * [`exactgeom`] – points, hyperplanes, the duality map, hull membership,
//!   Radon partitions and central projections;
//! * [`lpsolve`] – exact linear feasibility with Farkas certificates;
//! * [`instances`] – permutations, restriction/reversal algebra, instance files;
//! * [`embeddings`] – both embedding kinds, their verifiers, the two duality
//!   transforms and the rank constructions for `k <= d` paths;
//! * [`counterexamples`] – generators for the non-embeddable families;
//! * [`certify`] – refutation certificates for those families;
//! * [`search`] – one-sided randomized search for embeddings;
//! * [`render`] – SVG drawings of planar embeddings.
//!
//! All geometry is generic over [`ExactField`]; the aliases below fix the
//! scalar to arbitrary-precision rationals.

pub mod certify;
pub mod counterexamples;
pub mod embeddings;
pub mod exactgeom;
pub mod instances;
pub mod json;
mod linalg;
pub mod lpsolve;
pub mod render;
pub mod scalar;
pub mod search;

pub use instances::{Instance, Label, Permutation};
pub use scalar::ExactField;

pub type Scalar = num_rational::BigRational;
pub type Point = exactgeom::Point<Scalar>;
pub type Direction = exactgeom::Direction<Scalar>;
pub type Hyperplane = exactgeom::Hyperplane<Scalar>;
pub type VerticalLine = exactgeom::VerticalLine<Scalar>;
pub type LinearSystem = lpsolve::LinearSystem<Scalar>;
pub type FeasibilityResult = lpsolve::FeasibilityResult<Scalar>;
pub type MonotoneEmbedding = embeddings::MonotoneEmbedding<Scalar>;
pub type ParallelEmbedding = embeddings::ParallelEmbedding<Scalar>;
pub type PlacementWitness = certify::PlacementWitness<Scalar>;
pub type SearchReport = search::SearchReport<Scalar>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("label {0} appears twice")]
    RepeatedLabel(Label),
    #[error("blocks overlap on label {0}")]
    OverlappingBlocks(Label),
    #[error("label {0} is not present")]
    UnknownLabel(Label),
    #[error("direction is the zero vector")]
    ZeroDirection,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("insufficient points for Radon: have {have}, need {need}")]
    InsufficientRadonPoints { have: usize, need: usize },
    #[error("degenerate projection: {0}")]
    DegenerateProjection(String),
    #[error("degenerate: coincident intersection of labels {0} and {1}")]
    CoincidentIntersection(Label, Label),
    #[error("vertical dual direction for permutation {0}; apply tilt_directions first")]
    VerticalDirection(usize),
    #[error("{k} permutations exceed dimension {d}; use the search module")]
    TooManyPermutations { k: usize, d: usize },
    #[error("dimension must be at least 2, got {0}")]
    DimensionTooSmall(usize),
    #[error("degenerate placement: {0}")]
    DegeneratePlacement(String),
    #[error("duplicate permutations {0} and {1}")]
    DuplicatePermutations(usize, usize),
    #[error("missing group metadata")]
    MissingGroups,
    #[error("render supports d=2 only (got d={0})")]
    RenderDimension(usize),
}
