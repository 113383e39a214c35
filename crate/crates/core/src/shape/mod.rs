//! Decorated shapes: a base polygon whose edges may carry bump or dent
//! profiles, realized into a single exact region.

mod corpus;

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::exact::{Isometry, Point, Scalar};
use crate::geom::{GeomError, Location, Polygon, Region};

pub use corpus::{corpus, corpus_names, CorpusParams};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ShapeError {
    UnknownShape(String),
    InvalidParam { name: String, reason: String },
    BadProfile { id: String, reason: String },
    UnknownProfile { edge: usize, id: String },
    DecorationCount { edges: usize, decorations: usize },
    /// A decorated edge whose realization is not simple or whose dent leaves the base.
    Edge { edge: usize, reason: String },
    Geom(GeomError),
}

impl fmt::Display for ShapeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ShapeError::UnknownShape(n) => write!(f, "unknown corpus shape `{n}`"),
            ShapeError::InvalidParam { name, reason } => write!(f, "parameter `{name}`: {reason}"),
            ShapeError::BadProfile { id, reason } => write!(f, "profile `{id}`: {reason}"),
            ShapeError::UnknownProfile { edge, id } => write!(f, "edge {edge}: unknown profile `{id}`"),
            ShapeError::DecorationCount { edges, decorations } => {
                write!(f, "base has {edges} edges but {decorations} decorations were given")
            }
            ShapeError::Edge { edge, reason } => write!(f, "edge {edge}: {reason}"),
            ShapeError::Geom(e) => write!(f, "{e}"),
        }
    }
}

impl From<GeomError> for ShapeError {
    fn from(e: GeomError) -> Self {
        ShapeError::Geom(e)
    }
}

/// A bump drawn in edge-local coordinates: the edge runs from (0,0) to (1,0)
/// and outward is +y.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EdgeProfile {
    pub id: String,
    pub footprint: (Scalar, Scalar),
    /// Full polyline from `(s0, 0)` to `(s1, 0)`.
    pub apex: Vec<Point>,
}

impl EdgeProfile {
    pub fn new(id: &str, apex: Vec<Point>) -> Result<EdgeProfile, ShapeError> {
        let bad = |reason: &str| ShapeError::BadProfile { id: id.into(), reason: reason.into() };
        if apex.len() < 3 {
            return Err(bad("polyline needs at least one point off the edge"));
        }
        let (first, last) = (&apex[0], &apex[apex.len() - 1]);
        if !first.y.is_zero() || !last.y.is_zero() {
            return Err(bad("polyline must start and end on the edge"));
        }
        let (s0, s1) = (first.x.clone(), last.x.clone());
        if s0.is_negative() || s0 >= s1 || s1 > Scalar::ONE {
            return Err(bad("footprint must satisfy 0 <= s0 < s1 <= 1"));
        }
        if apex[1..apex.len() - 1].iter().any(|p| !p.y.is_positive()) {
            return Err(bad("interior points must lie strictly outward"));
        }
        let mut ring = apex.clone();
        ring.reverse();
        Polygon::new(ring).map_err(|e| bad(&format!("footprint region is not a simple polygon ({e})")))?;
        Ok(EdgeProfile { id: id.into(), footprint: (s0, s1), apex })
    }

    /// Isosceles triangle on `[s0, s1]` with apex height `h`.
    pub fn triangle(id: &str, s0: Scalar, s1: Scalar, h: Scalar) -> Result<EdgeProfile, ShapeError> {
        let mid = (&s0 + &s1).half();
        EdgeProfile::new(id, alloc::vec![Point::new(s0, Scalar::ZERO), Point::new(mid, h), Point::new(s1, Scalar::ZERO)])
    }

    /// The shared default: triangle on `[3/8, 5/8]`, height 1/8.
    pub fn default_triangle() -> EdgeProfile {
        EdgeProfile::triangle("tri", Scalar::ratio(3, 8), Scalar::ratio(5, 8), Scalar::ratio(1, 8)).expect("valid")
    }

    /// Area of the footprint region for a unit edge.
    pub fn area(&self) -> Scalar {
        -crate::geom::signed_area2(&self.apex).half()
    }

    /// Mirror image under `s -> 1 - s`.
    pub fn mirrored(&self) -> EdgeProfile {
        let apex: Vec<Point> = self.apex.iter().rev().map(|p| Point::new(Scalar::ONE - &p.x, p.y.clone())).collect();
        let id = match self.id.strip_suffix('~') {
            Some(s) => String::from(s),
            None => format!("{}~", self.id),
        };
        EdgeProfile { id, footprint: (apex[0].x.clone(), apex[apex.len() - 1].x.clone()), apex }
    }

    pub fn is_symmetric(&self) -> bool {
        let m = self.mirrored();
        m.apex == self.apex
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Out,
    In,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Decoration {
    None,
    Profile { id: String, side: Side },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecoratedShape {
    pub name: String,
    pub base: Polygon,
    pub hole: Option<Polygon>,
    pub profiles: BTreeMap<String, EdgeProfile>,
    /// One entry per base edge; edge `i` runs from vertex `i` to vertex `i + 1`.
    pub decorations: Vec<Decoration>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealizedShape {
    pub name: String,
    pub region: Region,
    pub source: Option<DecoratedShape>,
}

impl RealizedShape {
    pub fn from_region(name: &str, region: Region) -> RealizedShape {
        RealizedShape { name: name.into(), region, source: None }
    }

    pub fn polygon(&self) -> &Polygon {
        self.region.outer()
    }

    pub fn area(&self) -> Scalar {
        self.region.area()
    }
}

fn edge_point(a: &Point, b: &Point, local: &Point, side: Side) -> Point {
    let e = b - a;
    let n = Point::new(e.y.clone(), -&e.x);
    let y = match side {
        Side::Out => local.y.clone(),
        Side::In => -&local.y,
    };
    &(a + &e.scale(&local.x)) + &n.scale(&y)
}

impl DecoratedShape {
    pub fn plain(name: &str, base: Polygon) -> DecoratedShape {
        let n = base.len();
        DecoratedShape {
            name: name.into(),
            base,
            hole: None,
            profiles: BTreeMap::new(),
            decorations: alloc::vec![Decoration::None; n],
        }
    }

    pub fn with_profile(mut self, p: EdgeProfile) -> DecoratedShape {
        self.profiles.insert(p.id.clone(), p);
        self
    }

    pub fn decorate(mut self, edge: usize, id: &str, side: Side) -> DecoratedShape {
        self.decorations[edge] = Decoration::Profile { id: id.into(), side };
        self
    }

    /// Sum of signed profile areas, scaled to their edges.
    pub fn decoration_area(&self) -> Result<Scalar, ShapeError> {
        let vs = self.base.vertices();
        let mut acc = Scalar::ZERO;
        for (i, d) in self.decorations.iter().enumerate() {
            if let Decoration::Profile { id, side } = d {
                let p = self.profiles.get(id).ok_or_else(|| ShapeError::UnknownProfile { edge: i, id: id.clone() })?;
                let l2 = (&vs[(i + 1) % vs.len()] - &vs[i]).norm2();
                let a = p.area() * l2;
                acc = match side {
                    Side::Out => acc + a,
                    Side::In => acc - a,
                };
            }
        }
        Ok(acc)
    }

    /// Replaces every decorated edge by its profile polyline (mirrored inward
    /// for dents) and validates the result.
    pub fn realize(&self) -> Result<RealizedShape, ShapeError> {
        let vs = self.base.vertices();
        let n = vs.len();
        if self.decorations.len() != n {
            return Err(ShapeError::DecorationCount { edges: n, decorations: self.decorations.len() });
        }
        let mut pts: Vec<Point> = Vec::new();
        // base edge that produced each realized edge (the edge leaving pts[k])
        let mut origin: Vec<usize> = Vec::new();
        for i in 0..n {
            let (a, b) = (&vs[i], &vs[(i + 1) % n]);
            pts.push(a.clone());
            origin.push(i);
            let Decoration::Profile { id, side } = &self.decorations[i] else { continue };
            let prof = self.profiles.get(id).ok_or_else(|| ShapeError::UnknownProfile { edge: i, id: id.clone() })?;
            let m = prof.apex.len();
            for (k, local) in prof.apex.iter().enumerate() {
                if (k == 0 && local.x.is_zero()) || (k == m - 1 && local.x == Scalar::ONE) {
                    continue;
                }
                let q = edge_point(a, b, local, *side);
                if *side == Side::In && k > 0 && k < m - 1 && self.base.locate(&q) != Location::Inside {
                    return Err(ShapeError::Edge { edge: i, reason: "dent leaves the base polygon".into() });
                }
                pts.push(q);
                origin.push(i);
            }
        }
        let outer = Polygon::new(pts).map_err(|e| match e {
            GeomError::SelfIntersection { edge_a, edge_b } => {
                let (ea, eb) = (origin[edge_a], origin[edge_b]);
                let decorated = |j: usize| !matches!(self.decorations[j], Decoration::None);
                let edge = if decorated(eb) && !decorated(ea) { eb } else { ea };
                ShapeError::Edge { edge, reason: format!("realization intersects edge {}", if edge == ea { eb } else { ea }) }
            }
            GeomError::RepeatedVertex { index } | GeomError::CollinearVertices { index } => {
                ShapeError::Edge { edge: origin[index], reason: format!("realization is degenerate ({e})") }
            }
            other => ShapeError::Geom(other),
        })?;
        let region = Region::new(outer, self.hole.clone())?;
        Ok(RealizedShape { name: self.name.clone(), region, source: Some(self.clone()) })
    }

    /// Image under `g`. Reflections reverse the edge order and mirror profiles.
    pub fn transformed(&self, g: &Isometry) -> DecoratedShape {
        let base = self.base.transformed(g);
        let hole = self.hole.as_ref().map(|h| h.transformed(g));
        if !g.reflect {
            return DecoratedShape { base, hole, ..self.clone() };
        }
        let n = self.decorations.len();
        let mut profiles = self.profiles.clone();
        let mut decorations = Vec::with_capacity(n);
        for j in 0..n {
            // new edge j runs backwards along old edge n - 2 - j
            let old = (2 * n - 2 - j) % n;
            decorations.push(match &self.decorations[old] {
                Decoration::None => Decoration::None,
                Decoration::Profile { id, side } => {
                    let p = &self.profiles[id];
                    if p.is_symmetric() {
                        Decoration::Profile { id: id.clone(), side: *side }
                    } else {
                        let m = p.mirrored();
                        let mid = m.id.clone();
                        profiles.insert(mid.clone(), m);
                        Decoration::Profile { id: mid, side: *side }
                    }
                }
            });
        }
        DecoratedShape { name: self.name.clone(), base, hole, profiles, decorations }
    }
}
