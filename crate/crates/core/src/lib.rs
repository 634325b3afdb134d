//! Exact toolkit for planar point-line incidence arrangements.
//!
//! * [`geom`]: rational points, canonical integer lines, exact predicates.
//! * [`arrangement`]: arrangements, the incidence engine, extremal grids, duality.
//! * [`clique`]: line-intersection graphs and complete-tuple enumeration.
//! * [`partition`]: balanced median partitions and line crossing numbers.
//! * [`pipeline`]: the end-to-end search for `k` points in general position that are
//!   pairwise joined by arrangement lines.
//! * [`document`]: JSON interchange and report payloads.
//! * [`svg`]: static diagnostics.

pub mod arrangement;
pub mod clique;
pub mod document;
pub mod geom;
pub mod partition;
pub mod pipeline;
pub mod svg;

pub use arrangement::{grid_construction, Arrangement, ArrangementError};
pub use geom::{Line, Point, Scalar};
