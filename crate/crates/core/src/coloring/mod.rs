//! Positive coloring algorithms.
//!
//! * [`strips`]: hitting `k`-cliques for axis-parallel strips, turned into a
//!   coloring through a proper edge coloring of a bipartite multigraph;
//! * [`shallow`]: greedy 2-shallow hitting sets for quadrants and their
//!   hit-count certificates;
//! * [`pipeline`]: single-family peeling and the two-family pipeline with
//!   its preset instantiations;
//! * [`squares`]: the horizontal stretch turning bottomless and topless
//!   rectangles into squares.

use thiserror::Error;

use crate::hypergraph::HypergraphError;
use crate::ranges::{RangeError, RangeFamily};

pub mod pipeline;
pub mod shallow;
pub mod squares;
pub mod strips;

pub use pipeline::{
    base_color_exact, peel_pipeline, peel_single, preset_case, BaseColorer, Peel, PipelineConfig,
    PipelineRun, Threshold, PRESET_NAMES,
};
pub use shallow::{
    quadrant_hitting_profile, quadrant_shallow_hitting_set, HitCountCertificate, ShallowHittingSet,
    StaircaseViolation, HIT_BOUNDS,
};
pub use squares::{stretch_to_squares, SquareWitness, StretchedSquares};
pub use strips::{
    color_strips, edge_color_bipartite, strip_cliques, BipartiteMultigraph, MultiEdge, StripCliques,
};

#[derive(Debug, Error)]
pub enum ColoringError {
    #[error("number of colors must be at least 1")]
    ZeroColors,
    #[error("vertex {vertex} has degree {degree} > {k}")]
    DegreeExceeded {
        vertex: usize,
        degree: usize,
        k: usize,
    },
    #[error("no shallow hitting-set provider for family {0} with t = {1}")]
    NoProvider(RangeFamily, usize),
    #[error("invalid pipeline configuration: {0}")]
    InvalidConfig(String),
    #[error("unknown preset `{0}`")]
    UnknownPreset(String),
    #[error(
        "cited bound falsified on instance (k = {k}, m = {m}, families = {families:?}): {instance}"
    )]
    CitedBoundFalsified {
        k: usize,
        m: usize,
        families: Vec<RangeFamily>,
        /// point-set JSON of the offending instance
        instance: String,
    },
    #[error("exact base colorer exhausted its budget after {nodes} nodes")]
    BudgetExhausted { nodes: u64 },
    #[error(transparent)]
    Range(#[from] RangeError),
    #[error(transparent)]
    Hypergraph(#[from] HypergraphError),
}
