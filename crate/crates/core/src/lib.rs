//! k-angulations of planar point sets in general position.
//!
//! A k-angulation is a 2-connected plane straight-line graph on the points
//! whose bounded faces are all simple k-gons. [`kangulate`] decides whether
//! one exists (exactly when `n >= 2k^2`) and builds it; [`verify_kangulation`]
//! checks any candidate independently; [`oracle`] searches small sets
//! exhaustively.

pub mod construct;
pub mod generate;
pub mod geom;
pub mod io;
pub mod oracle;
pub mod partition;
pub mod plane_graph;
pub mod verify;

pub use construct::CaseLabel;
pub use geom::{GeomError, Orientation, Point, PointSet};
pub use partition::{
    kangulate, kangulate_with, required_j, ConstructionTrace, KangulateError, KangulateOptions, KangulateOutcome,
    Kangulation,
};
pub use plane_graph::PlaneGraph;
pub use verify::{feasibility, verify_kangulation, Feasibility, VerificationReport};
