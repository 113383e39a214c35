//! Polygons, regions with at most one hole, and their arrangements.

pub mod arrangement;
mod polygon;

use core::fmt;

pub use arrangement::{
    build_subdivision, complement_components, enclosed_regions, min_separation_positive, ComplementComponent, EdgeTag, Face,
    FrameSide, HalfEdge, QuotientInfo, Subdivision,
};
pub use polygon::{
    canonical_ring, collinear_overlap, interiors_intersect, locate_in_ring, merge_collinear, on_segment,
    on_segment_open, orient, segments_cross_properly, segments_touch, shared_boundary, signed_area2, Bbox,
    Location, Polygon, Region, Segment,
};
pub(crate) use polygon::shared_boundary_unchecked;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GeomError {
    TooFewVertices,
    RepeatedVertex { index: usize },
    CollinearVertices { index: usize },
    NotCounterClockwise,
    SelfIntersection { edge_a: usize, edge_b: usize },
    HoleNotInside,
    InteriorsOverlap,
    ZeroPeriod,
    EmptyConfiguration,
}

impl fmt::Display for GeomError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeomError::TooFewVertices => write!(f, "polygon needs at least three vertices"),
            GeomError::RepeatedVertex { index } => write!(f, "vertex {index} repeats an earlier vertex"),
            GeomError::CollinearVertices { index } => write!(f, "vertex {index} is collinear with its neighbours"),
            GeomError::NotCounterClockwise => write!(f, "outer boundary is not counterclockwise"),
            GeomError::SelfIntersection { edge_a, edge_b } => write!(f, "edges {edge_a} and {edge_b} intersect"),
            GeomError::HoleNotInside => write!(f, "hole is not strictly inside the outer boundary"),
            GeomError::InteriorsOverlap => write!(f, "interiors overlap"),
            GeomError::ZeroPeriod => write!(f, "period vector is zero"),
            GeomError::EmptyConfiguration => write!(f, "configuration has no units"),
        }
    }
}
