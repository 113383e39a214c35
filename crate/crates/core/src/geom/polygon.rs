use alloc::vec::Vec;

use crate::exact::{Isometry, Point, Scalar, Vector};

use super::GeomError;

/// `sign(cross(b − a, c − a))`: `1` left turn, `-1` right turn, `0` collinear.
pub fn orient(a: &Point, b: &Point, c: &Point) -> i8 {
    (b - a).cross(&(c - a)).signum()
}

/// Is `p` on the closed segment `[a, b]`?
pub fn on_segment(a: &Point, b: &Point, p: &Point) -> bool {
    orient(a, b, p) == 0 && (p - a).dot(&(p - b)).signum() <= 0
}

/// Is `p` strictly between `a` and `b` on the segment?
pub fn on_segment_open(a: &Point, b: &Point, p: &Point) -> bool {
    p != a && p != b && on_segment(a, b, p)
}

/// Do the closed segments `[a, b]` and `[c, d]` share a point?
pub fn segments_touch(a: &Point, b: &Point, c: &Point, d: &Point) -> bool {
    let o1 = orient(a, b, c);
    let o2 = orient(a, b, d);
    let o3 = orient(c, d, a);
    let o4 = orient(c, d, b);
    if o1 * o2 < 0 && o3 * o4 < 0 {
        return true;
    }
    (o1 == 0 && on_segment(a, b, c))
        || (o2 == 0 && on_segment(a, b, d))
        || (o3 == 0 && on_segment(c, d, a))
        || (o4 == 0 && on_segment(c, d, b))
}

/// Do the open segments cross transversally at a single interior point?
pub fn segments_cross_properly(a: &Point, b: &Point, c: &Point, d: &Point) -> bool {
    orient(a, b, c) * orient(a, b, d) < 0 && orient(c, d, a) * orient(c, d, b) < 0
}

/// A directed segment.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Segment {
    pub a: Point,
    pub b: Point,
}

impl Segment {
    pub fn new(a: Point, b: Point) -> Segment {
        Segment { a, b }
    }

    pub fn dir(&self) -> Vector {
        &self.b - &self.a
    }

    pub fn length2(&self) -> Scalar {
        self.dir().norm2()
    }

    pub fn reversed(&self) -> Segment {
        Segment::new(self.b.clone(), self.a.clone())
    }

    pub fn transformed(&self, g: &Isometry) -> Segment {
        Segment::new(g.apply(&self.a), g.apply(&self.b))
    }

    /// Image of a boundary segment, reversed under reflections so that the
    /// region stays on its left.
    pub fn transformed_boundary(&self, g: &Isometry) -> Segment {
        if g.reflect {
            Segment::new(g.apply(&self.b), g.apply(&self.a))
        } else {
            self.transformed(g)
        }
    }

    /// Unnormalized position of `p` along the segment: `dot(p − a, b − a)`.
    pub fn param(&self, p: &Point) -> Scalar {
        (p - &self.a).dot(&self.dir())
    }

    pub fn contains_line_point(&self, p: &Point) -> bool {
        orient(&self.a, &self.b, p) == 0
    }

    pub fn is_collinear_with(&self, o: &Segment) -> bool {
        self.contains_line_point(&o.a) && self.contains_line_point(&o.b)
    }
}

/// Approximate axis-aligned box used only to skip exact work on far-apart inputs.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Bbox {
    pub min_x: f64,
    pub min_y: f64,
    pub max_x: f64,
    pub max_y: f64,
}

const BBOX_SLACK: f64 = 1e-6;

impl Bbox {
    pub fn of_points<'a>(pts: impl IntoIterator<Item = &'a Point>) -> Bbox {
        let mut b = Bbox { min_x: f64::INFINITY, min_y: f64::INFINITY, max_x: f64::NEG_INFINITY, max_y: f64::NEG_INFINITY };
        for p in pts {
            let (x, y) = p.to_f64();
            b.min_x = b.min_x.min(x);
            b.min_y = b.min_y.min(y);
            b.max_x = b.max_x.max(x);
            b.max_y = b.max_y.max(y);
        }
        b.min_x -= BBOX_SLACK;
        b.min_y -= BBOX_SLACK;
        b.max_x += BBOX_SLACK;
        b.max_y += BBOX_SLACK;
        b
    }

    pub fn overlaps(&self, o: &Bbox) -> bool {
        self.min_x <= o.max_x && o.min_x <= self.max_x && self.min_y <= o.max_y && o.min_y <= self.max_y
    }

    pub fn contains(&self, x: f64, y: f64) -> bool {
        self.min_x <= x && x <= self.max_x && self.min_y <= y && y <= self.max_y
    }

    pub fn union(&self, o: &Bbox) -> Bbox {
        Bbox {
            min_x: self.min_x.min(o.min_x),
            min_y: self.min_y.min(o.min_y),
            max_x: self.max_x.max(o.max_x),
            max_y: self.max_y.max(o.max_y),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Location {
    Inside,
    Boundary,
    Outside,
}

/// A simple counter-clockwise polygon in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polygon {
    vertices: Vec<Point>,
}

/// Drops repeated consecutive points and the middle point of collinear triples.
pub fn canonical_ring(points: &[Point]) -> Vec<Point> {
    let mut pts: Vec<Point> = Vec::with_capacity(points.len());
    for p in points {
        if pts.last() != Some(p) {
            pts.push(p.clone());
        }
    }
    while pts.len() > 1 && pts.first() == pts.last() {
        pts.pop();
    }
    let mut changed = true;
    while changed && pts.len() >= 3 {
        changed = false;
        let n = pts.len();
        for i in 0..n {
            let prev = &pts[(i + n - 1) % n];
            let next = &pts[(i + 1) % n];
            let cur = &pts[i];
            // only straight-through collinearity is removable; a fold-back is an error
            if orient(prev, cur, next) == 0 && (cur - prev).dot(&(next - cur)).is_positive() {
                pts.remove(i);
                changed = true;
                break;
            }
        }
    }
    pts
}

pub fn signed_area2(pts: &[Point]) -> Scalar {
    let n = pts.len();
    let mut acc = Scalar::ZERO;
    for i in 0..n {
        acc = acc + pts[i].cross(&pts[(i + 1) % n]);
    }
    acc
}

impl Polygon {
    /// Validates a vertex list: at least three vertices, counter-clockwise,
    /// no repeats, no collinear consecutive triples, and simple.
    pub fn new(vertices: Vec<Point>) -> Result<Polygon, GeomError> {
        let n = vertices.len();
        if n < 3 {
            return Err(GeomError::TooFewVertices);
        }
        for i in 0..n {
            for j in i + 1..n {
                if vertices[i] == vertices[j] {
                    return Err(GeomError::RepeatedVertex { index: j });
                }
            }
        }
        for i in 0..n {
            if orient(&vertices[(i + n - 1) % n], &vertices[i], &vertices[(i + 1) % n]) == 0 {
                return Err(GeomError::CollinearVertices { index: i });
            }
        }
        check_simple(&vertices)?;
        if !signed_area2(&vertices).is_positive() {
            return Err(GeomError::NotCounterClockwise);
        }
        Ok(Polygon { vertices })
    }

    /// Canonicalizes (dedupe, drop collinear, orient counter-clockwise) and validates.
    pub fn from_points(points: &[Point]) -> Result<Polygon, GeomError> {
        let mut pts = canonical_ring(points);
        if pts.len() >= 3 && signed_area2(&pts).is_negative() {
            pts.reverse();
        }
        Polygon::new(pts)
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn edges(&self) -> impl Iterator<Item = Segment> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| Segment::new(self.vertices[i].clone(), self.vertices[(i + 1) % n].clone()))
    }

    pub fn area(&self) -> Scalar {
        signed_area2(&self.vertices).half()
    }

    pub fn locate(&self, p: &Point) -> Location {
        locate_in_ring(&self.vertices, p)
    }

    /// Image under `g`; reflections reverse the vertex order to stay counter-clockwise.
    pub fn transformed(&self, g: &Isometry) -> Polygon {
        let mut vertices: Vec<Point> = self.vertices.iter().map(|p| g.apply(p)).collect();
        if g.reflect {
            vertices.reverse();
        }
        Polygon { vertices }
    }

    pub fn bbox(&self) -> Bbox {
        Bbox::of_points(&self.vertices)
    }
}

fn check_simple(v: &[Point]) -> Result<(), GeomError> {
    let n = v.len();
    for i in 0..n {
        let (a, b) = (&v[i], &v[(i + 1) % n]);
        for j in i + 1..n {
            let (c, d) = (&v[j], &v[(j + 1) % n]);
            let adjacent = j == i + 1 || (i == 0 && j == n - 1);
            if adjacent {
                // consecutive edges may only meet at their shared vertex
                let (shared, other_a, other_b) = if j == i + 1 { (b, a, d) } else { (a, b, c) };
                if orient(other_a, shared, other_b) == 0 && (other_a - shared).dot(&(other_b - shared)).is_positive() {
                    return Err(GeomError::SelfIntersection { edge_a: i, edge_b: j });
                }
                continue;
            }
            if segments_touch(a, b, c, d) {
                return Err(GeomError::SelfIntersection { edge_a: i, edge_b: j });
            }
        }
    }
    Ok(())
}

/// Winding-number location of `p` against a closed ring.
pub fn locate_in_ring(ring: &[Point], p: &Point) -> Location {
    let n = ring.len();
    let mut wn: i32 = 0;
    for i in 0..n {
        let a = &ring[i];
        let b = &ring[(i + 1) % n];
        if on_segment(a, b, p) {
            return Location::Boundary;
        }
        if a.y <= p.y {
            if b.y > p.y && orient(a, b, p) > 0 {
                wn += 1;
            }
        } else if b.y <= p.y && orient(a, b, p) < 0 {
            wn -= 1;
        }
    }
    if wn != 0 {
        Location::Inside
    } else {
        Location::Outside
    }
}

/// A polygonal region: an outer polygon minus an optional hole strictly inside it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Region {
    outer: Polygon,
    hole: Option<Polygon>,
    bbox: BboxKey,
}

// Bbox is derived data; keep it out of equality and hashing.
#[derive(Clone, Copy, Debug)]
struct BboxKey(Bbox);

impl PartialEq for BboxKey {
    fn eq(&self, _: &Self) -> bool {
        true
    }
}
impl Eq for BboxKey {}
impl core::hash::Hash for BboxKey {
    fn hash<H: core::hash::Hasher>(&self, _: &mut H) {}
}

impl Region {
    pub fn new(outer: Polygon, hole: Option<Polygon>) -> Result<Region, GeomError> {
        if let Some(h) = &hole {
            for v in h.vertices() {
                if outer.locate(v) != Location::Inside {
                    return Err(GeomError::HoleNotInside);
                }
            }
            for e in outer.edges() {
                for f in h.edges() {
                    if segments_touch(&e.a, &e.b, &f.a, &f.b) {
                        return Err(GeomError::HoleNotInside);
                    }
                }
            }
        }
        let bbox = BboxKey(outer.bbox());
        Ok(Region { outer, hole, bbox })
    }

    pub fn simple(outer: Polygon) -> Region {
        let bbox = BboxKey(outer.bbox());
        Region { outer, hole: None, bbox }
    }

    pub fn outer(&self) -> &Polygon {
        &self.outer
    }

    pub fn hole(&self) -> Option<&Polygon> {
        self.hole.as_ref()
    }

    pub fn bbox(&self) -> Bbox {
        self.bbox.0
    }

    pub fn area(&self) -> Scalar {
        let mut a = self.outer.area();
        if let Some(h) = &self.hole {
            a = a - h.area();
        }
        a
    }

    /// Boundary rings as directed edges with the region's interior on the left:
    /// the outer ring counter-clockwise, the hole ring clockwise.
    pub fn boundary_edges(&self) -> Vec<Segment> {
        let mut out: Vec<Segment> = self.outer.edges().collect();
        if let Some(h) = &self.hole {
            out.extend(h.edges().map(|s| s.reversed()));
        }
        out
    }

    pub fn all_vertices(&self) -> impl Iterator<Item = &Point> {
        self.outer.vertices().iter().chain(self.hole.iter().flat_map(|h| h.vertices().iter()))
    }

    pub fn locate(&self, p: &Point) -> Location {
        let (x, y) = p.to_f64();
        if !self.bbox.0.contains(x, y) {
            return Location::Outside;
        }
        match self.outer.locate(p) {
            Location::Inside => match &self.hole {
                None => Location::Inside,
                Some(h) => match h.locate(p) {
                    Location::Inside => Location::Outside,
                    Location::Boundary => Location::Boundary,
                    Location::Outside => Location::Inside,
                },
            },
            other => other,
        }
    }

    /// The region with its hole filled in.
    pub fn filled(&self) -> Region {
        Region::simple(self.outer.clone())
    }

    pub fn transformed(&self, g: &Isometry) -> Region {
        let outer = self.outer.transformed(g);
        let hole = self.hole.as_ref().map(|h| h.transformed(g));
        let bbox = BboxKey(outer.bbox());
        Region { outer, hole, bbox }
    }

    pub fn translated(&self, v: &Vector) -> Region {
        self.transformed(&Isometry::translation(v.clone()))
    }

    /// Sorted vertex list; equal keys mean the same point set.
    pub fn geometric_key(&self) -> Vec<Point> {
        let mut v: Vec<Point> = self.outer.vertices().to_vec();
        v.sort();
        if let Some(h) = &self.hole {
            let mut hv = h.vertices().to_vec();
            hv.sort();
            v.push(Point::default());
            v.extend(hv);
        }
        v
    }

    /// Squared diameter (max squared vertex distance).
    pub fn diameter2(&self) -> Scalar {
        let vs = self.outer.vertices();
        let mut best = Scalar::ZERO;
        for i in 0..vs.len() {
            for j in i + 1..vs.len() {
                let d = (&vs[i] - &vs[j]).norm2();
                if d > best {
                    best = d;
                }
            }
        }
        best
    }
}

/// Does `p`'s interior meet `q`'s interior? Edge or vertex contact alone is not overlap.
pub fn interiors_intersect(p: &Region, q: &Region) -> bool {
    if !p.bbox().overlaps(&q.bbox()) {
        return false;
    }
    let pe = p.boundary_edges();
    let qe = q.boundary_edges();
    for e in &pe {
        for f in &qe {
            if segments_cross_properly(&e.a, &e.b, &f.a, &f.b) {
                return true;
            }
        }
    }
    boundary_enters(&pe, q, &qe) || boundary_enters(&qe, p, &pe)
}

// Splits each edge of `edges` at the other region's vertices and probes each
// piece's midpoint: strictly inside `other`, or running along an `other` edge in
// the same direction (interiors on the same side), means the interiors meet.
fn boundary_enters(edges: &[Segment], other: &Region, other_edges: &[Segment]) -> bool {
    let ob = other.bbox();
    for e in edges {
        let eb = Bbox::of_points([&e.a, &e.b]);
        if !eb.overlaps(&ob) {
            continue;
        }
        let mut cuts: Vec<(Scalar, Point)> = Vec::new();
        for v in other.all_vertices() {
            if on_segment_open(&e.a, &e.b, v) {
                cuts.push((e.param(v), v.clone()));
            }
        }
        cuts.sort_by(|x, y| x.0.cmp(&y.0));
        let mut prev = e.a.clone();
        let mut pieces: Vec<(Point, Point)> = Vec::with_capacity(cuts.len() + 1);
        for (_, c) in cuts {
            pieces.push((prev, c.clone()));
            prev = c;
        }
        pieces.push((prev, e.b.clone()));
        let d = e.dir();
        for (a, b) in pieces {
            let m = a.midpoint(&b);
            match other.locate(&m) {
                Location::Inside => return true,
                Location::Outside => {}
                Location::Boundary => {
                    for f in other_edges {
                        if on_segment(&f.a, &f.b, &m) && f.dir().dot(&d).is_positive() {
                            return true;
                        }
                    }
                }
            }
        }
    }
    false
}

/// Maximal positive-length segments on both boundaries, directed along `p`'s
/// boundary (so `p`'s interior is on their left).
pub fn shared_boundary(p: &Region, q: &Region) -> Result<Vec<Segment>, GeomError> {
    if interiors_intersect(p, q) {
        return Err(GeomError::InteriorsOverlap);
    }
    Ok(shared_boundary_unchecked(p, q))
}

pub(crate) fn shared_boundary_unchecked(p: &Region, q: &Region) -> Vec<Segment> {
    let mut out: Vec<Segment> = Vec::new();
    if !p.bbox().overlaps(&q.bbox()) {
        return out;
    }
    let qe = q.boundary_edges();
    for e in p.boundary_edges() {
        for f in &qe {
            if let Some(s) = collinear_overlap(&e, f) {
                out.push(s);
            }
        }
    }
    merge_collinear(out)
}

/// Positive-length overlap of two collinear segments, directed along `e`.
pub fn collinear_overlap(e: &Segment, f: &Segment) -> Option<Segment> {
    if !e.is_collinear_with(f) {
        return None;
    }
    let len = e.length2();
    let t1 = e.param(&f.a);
    let t2 = e.param(&f.b);
    let (flo, plo, fhi, phi) = if t1 <= t2 { (t1, &f.a, t2, &f.b) } else { (t2, &f.b, t1, &f.a) };
    let (lo, lo_p) = if flo > Scalar::ZERO { (flo, plo.clone()) } else { (Scalar::ZERO, e.a.clone()) };
    let (hi, hi_p) = if fhi < len { (fhi, phi.clone()) } else { (len, e.b.clone()) };
    if lo < hi {
        Some(Segment::new(lo_p, hi_p))
    } else {
        None
    }
}

/// Joins segments that continue each other in the same direction.
pub fn merge_collinear(mut segs: Vec<Segment>) -> Vec<Segment> {
    let mut merged = true;
    while merged {
        merged = false;
        'outer: for i in 0..segs.len() {
            for j in 0..segs.len() {
                if i == j {
                    continue;
                }
                if segs[i].b == segs[j].a
                    && segs[i].dir().cross(&segs[j].dir()).is_zero()
                    && segs[i].dir().dot(&segs[j].dir()).is_positive()
                {
                    let b = segs[j].b.clone();
                    segs[i].b = b;
                    segs.remove(j);
                    merged = true;
                    break 'outer;
                }
            }
        }
    }
    segs
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn sq(x: Scalar, y: Scalar) -> Region {
        let o = Point::new(x, y);
        let pts = [Point::int(0, 0), Point::int(1, 0), Point::int(1, 1), Point::int(0, 1)];
        Region::simple(Polygon::new(pts.iter().map(|p| p + &o).collect()).unwrap())
    }

    fn unit() -> Region {
        sq(Scalar::ZERO, Scalar::ZERO)
    }

    #[test]
    fn areas() {
        assert_eq!(unit().area(), Scalar::ONE);
        let tri = Polygon::new(vec![Point::int(0, 0), Point::int(1, 0), Point::int(0, 1)]).unwrap();
        assert_eq!(tri.area(), Scalar::ratio(1, 2));
        let hex: Vec<Point> = (0..6).map(|k| Isometry::rotation(2 * k).apply(&Point::int(1, 0))).collect();
        assert_eq!(Polygon::new(hex).unwrap().area(), Scalar::new(0, 3, 2));
    }

    #[test]
    fn validation_errors() {
        assert_eq!(Polygon::new(vec![Point::int(0, 0), Point::int(1, 0)]), Err(GeomError::TooFewVertices));
        let cw = vec![Point::int(0, 0), Point::int(0, 1), Point::int(1, 1), Point::int(1, 0)];
        assert_eq!(Polygon::new(cw), Err(GeomError::NotCounterClockwise));
        let bowtie = vec![Point::int(0, 0), Point::int(1, 1), Point::int(1, 0), Point::int(0, 1)];
        assert!(matches!(Polygon::new(bowtie), Err(GeomError::SelfIntersection { .. })));
        let col = vec![Point::int(0, 0), Point::int(1, 0), Point::int(2, 0), Point::int(0, 1)];
        assert_eq!(Polygon::new(col.clone()), Err(GeomError::CollinearVertices { index: 1 }));
        assert_eq!(Polygon::from_points(&col).unwrap().len(), 3);
    }

    #[test]
    fn overlap_cases() {
        assert!(interiors_intersect(&unit(), &unit()));
        assert!(!interiors_intersect(&unit(), &sq(Scalar::ONE, Scalar::ZERO)));
        assert!(interiors_intersect(&unit(), &sq(Scalar::ratio(1, 2), Scalar::ratio(1, 2))));
        assert!(!interiors_intersect(&unit(), &sq(Scalar::ONE, Scalar::ONE)));
        assert!(!interiors_intersect(&unit(), &sq(Scalar::int(5), Scalar::ZERO)));
    }

    #[test]
    fn containment_counts_as_overlap() {
        let big = Region::simple(
            Polygon::new(vec![Point::int(-2, -2), Point::int(3, -2), Point::int(3, 3), Point::int(-2, 3)]).unwrap(),
        );
        assert!(interiors_intersect(&big, &unit()));
        assert!(interiors_intersect(&unit(), &big));
    }

    #[test]
    fn hole_admits_small_piece() {
        let outer = Polygon::new(vec![Point::int(-2, -2), Point::int(3, -2), Point::int(3, 3), Point::int(-2, 3)]).unwrap();
        let hole = Polygon::new(vec![Point::int(0, 0), Point::int(1, 0), Point::int(1, 1), Point::int(0, 1)]).unwrap();
        let ring = Region::new(outer, Some(hole)).unwrap();
        assert_eq!(ring.area(), Scalar::int(24));
        assert!(!interiors_intersect(&ring, &unit()));
        assert!(interiors_intersect(&ring, &sq(Scalar::ratio(1, 2), Scalar::ZERO)));
        assert_eq!(shared_boundary(&ring, &unit()).unwrap().len(), 4);
    }

    #[test]
    fn shared_boundary_cases() {
        let full = shared_boundary(&unit(), &sq(Scalar::ONE, Scalar::ZERO)).unwrap();
        assert_eq!(full, vec![Segment::new(Point::int(1, 0), Point::int(1, 1))]);
        assert!(shared_boundary(&unit(), &sq(Scalar::ONE, Scalar::ONE)).unwrap().is_empty());
        let half = shared_boundary(&unit(), &sq(Scalar::ONE, Scalar::ratio(1, 2))).unwrap();
        assert_eq!(half.len(), 1);
        assert_eq!(half[0].a, Point::new(Scalar::ONE, Scalar::ratio(1, 2)));
        assert_eq!(half[0].b, Point::int(1, 1));
        assert_eq!(half[0].length2(), Scalar::ratio(1, 4));
        assert_eq!(shared_boundary(&unit(), &unit()), Err(GeomError::InteriorsOverlap));
    }
}
