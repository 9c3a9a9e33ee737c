//! Tagged triangulations of the plain polygon, the once-punctured polygon and
//! their folded versions: compatibility, flips, quivers, quadrilaterals and the
//! comparison with X-variables.

pub mod arcs;
pub mod bijection;
pub mod io;
pub mod quads;
pub mod triangulation;

pub use arcs::{
    all_arcs, compatible, group_image, lift_to_double_cover, orbit_of, LiftedChord, MarkedPolygon, Tag, TaggedArc,
    Winding,
};
pub use bijection::{verify_bijection, BijectionReport};
pub use io::{flip_graph_dot, quads_csv, triangulation_from_json, triangulation_to_json, TriangulationJson};
pub use quads::{
    alpha, c_q1_count, classify_half_disk, closed_form_quad_count, half_disk_census, HalfDiskClass, HalfDiskReport,
    QuadrilateralWithDiagonal,
};
pub use triangulation::{FlipGraph, Surface, SurfaceQuiver, Triangulation, DEFAULT_TRIANGULATION_LIMIT};

use crate::seedcore::SeedError;

#[derive(Debug, thiserror::Error)]
pub enum SurfaceError {
    #[error("invalid marked polygon {0}")]
    Polygon(String),
    #[error("type {0} has no polygon model")]
    NotClassical(String),
    #[error("{0} is not an arc of {1}")]
    NotAnArc(String, String),
    #[error("not a triangulation: {0}")]
    NotTriangulation(String),
    #[error("position {k} out of range for {rank} arcs")]
    Direction { k: usize, rank: usize },
    #[error("flipping {arc} has {candidates} candidate replacements")]
    FlipNotUnique { arc: String, candidates: usize },
    #[error("more than {limit} triangulations")]
    TooLarge { limit: usize },
    #[error("corrupt triangulation file: {0}")]
    Corrupt(String),
    #[error(transparent)]
    Seed(#[from] SeedError),
}
