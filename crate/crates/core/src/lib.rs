//! Range-capturing hypergraphs on planar point sets.
//!
//! A family of ranges (quadrants, strips, bottomless rectangles, ...) and a
//! finite point set `V` define the hypergraph whose edges are the subsets
//! `V ∩ R`. This crate enumerates the `m`-element edges exactly, colors them
//! polychromatically with the known positive algorithms, builds point sets
//! whose hypergraphs admit no polychromatic 2-coloring, and checks all of it
//! with exhaustive oracles.
//!
//! Coordinates are exact rationals throughout.

pub mod coloring;
pub mod constructions;
pub mod geometry;
pub mod hypergraph;
pub mod io;
pub mod ranges;

pub use geometry::{Point, PointSet, Rational};
pub use hypergraph::{Coloring, Hypergraph};
pub use ranges::{Range, RangeFamily};
