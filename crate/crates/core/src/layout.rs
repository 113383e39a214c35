//! Incremental placement of copies with per-copy frontiers (the parts of each
//! boundary not yet shared with a neighbour). Shared by the corona and wall
//! searches.

use alloc::vec::Vec;

use crate::contact::{ContactTable, Relations, SymmetryOptions};
use crate::exact::{Isometry, Point, Scalar, Vector};
use crate::geom::{on_segment, Segment};
use num_traits::Float;
use crate::shape::RealizedShape;

/// A contact table indexed by the boundary edge each shared segment lies on.
#[derive(Clone, Debug)]
pub struct ContactIndex {
    pub table: ContactTable,
    edges: Vec<Segment>,
    by_edge: Vec<Vec<(usize, Segment)>>,
    /// Outer boundary of each allowed linear image of the shape.
    images: Vec<(Isometry, Vec<Segment>)>,
    /// All vertices are integer points.
    lattice: bool,
}

impl ContactIndex {
    pub fn new(shape: &RealizedShape, opts: SymmetryOptions) -> ContactIndex {
        let table = ContactTable::new(shape, opts);
        let edges = shape.region.boundary_edges();
        let mut by_edge = alloc::vec![Vec::new(); edges.len()];
        for (c, segs) in table.shared.iter().enumerate() {
            for s in segs {
                if let Some(e) = edges.iter().position(|e| on_segment(&e.a, &e.b, &s.a) && on_segment(&e.a, &e.b, &s.b)) {
                    by_edge[e].push((c, s.clone()));
                }
            }
        }
        // images that are translates of an earlier one would only repeat placements
        let filled = shape.region.filled();
        let outer = filled.boundary_edges();
        let mut images = Vec::new();
        let mut shapes: Vec<Vec<Point>> = Vec::new();
        for g in opts.linear_parts() {
            let key = filled.transformed(&g).geometric_key();
            let rel: Vec<Point> = key.iter().map(|v| v - &key[0]).collect();
            if shapes.contains(&rel) {
                continue;
            }
            shapes.push(rel);
            let segs = outer.iter().map(|e| e.transformed_boundary(&g)).collect();
            images.push((g, segs));
        }
        let lattice = shape.region.all_vertices().all(|v| is_integer(&v.x) && is_integer(&v.y));
        ContactIndex { table, edges, by_edge, images, lattice }
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    pub fn pose(&self, c: usize) -> &Isometry {
        &self.table.poses[c]
    }

    /// Contacts (in table order) whose shared boundary covers the stretch of the
    /// shape boundary just after `q` (or just before it when `forward` is false),
    /// where `q` and the boundary direction `dir` are in the shape frame.
    pub fn covering(&self, q: &Point, dir: &Vector, forward: bool) -> Vec<usize> {
        let mut out = Vec::new();
        for (ei, e) in self.edges.iter().enumerate() {
            let d = e.dir();
            if !d.cross(dir).is_zero() || !d.dot(dir).is_positive() || !on_segment(&e.a, &e.b, q) {
                continue;
            }
            if (forward && *q == e.b) || (!forward && *q == e.a) {
                continue;
            }
            let tq = e.param(q);
            for (c, s) in &self.by_edge[ei] {
                let (ta, tb) = (e.param(&s.a), e.param(&s.b));
                let hit = if forward { ta <= tq && tq < tb } else { ta < tq && tq <= tb };
                if hit {
                    out.push(*c);
                }
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }
}

impl ContactIndex {
    /// Poses with a vertex at `q` whose boundary runs back along `dir` from it,
    /// so they cover the stretch just after `q` (or just before it). These
    /// reach positions fixed by other neighbours rather than by a vertex of
    /// the copy being covered.
    ///
    /// For lattice shapes in quarter-turn poses an edge may also pass through
    /// `q` at any integer point inside it: a rigid arrangement of such copies
    /// can always be moved to integer translations.
    pub fn sliding(&self, q: &Point, dir: &Vector, forward: bool) -> Vec<Isometry> {
        let mut out = Vec::new();
        for (g, segs) in &self.images {
            for e in segs {
                let d = e.dir();
                if !d.cross(dir).is_zero() || !d.dot(dir).is_negative() {
                    continue;
                }
                let at = if forward { &e.b } else { &e.a };
                out.push(Isometry::new(g.rot, g.reflect, q - at));
                if !self.lattice || g.rot % 3 != 0 {
                    continue;
                }
                let len = match (d.x.small_parts(), d.y.small_parts()) {
                    (Some((0, 0, 1)), Some((l, 0, 1))) | (Some((l, 0, 1)), Some((0, 0, 1))) => l.abs(),
                    _ => continue,
                };
                for k in 1..len {
                    let r = &e.b - &d.scale(&Scalar::ratio(k, len));
                    out.push(Isometry::new(g.rot, g.reflect, q - &r));
                }
            }
        }
        out
    }
}

/// Removes the overlap with `cut` from collinear, same-direction pieces.
pub fn subtract(pieces: &mut Vec<Segment>, cut: &Segment) -> bool {
    let mut changed = false;
    let mut i = 0;
    while i < pieces.len() {
        let f = &pieces[i];
        let fd = f.dir();
        if !f.is_collinear_with(cut) || !fd.dot(&cut.dir()).is_positive() {
            i += 1;
            continue;
        }
        let len = fd.norm2();
        let (ta, tb) = (f.param(&cut.a), f.param(&cut.b));
        if tb <= Scalar::ZERO || ta >= len {
            i += 1;
            continue;
        }
        let f = pieces.remove(i);
        changed = true;
        let mut keep = Vec::new();
        if ta.is_positive() {
            keep.push(Segment::new(f.a.clone(), cut.a.clone()));
        }
        if tb < len {
            keep.push(Segment::new(cut.b.clone(), f.b.clone()));
        }
        let n = keep.len();
        for (k, s) in keep.into_iter().enumerate() {
            pieces.insert(i + k, s);
        }
        i += n;
    }
    changed
}

#[derive(Clone, Debug)]
pub struct Placed {
    pub pose: Isometry,
    pub layer: usize,
    /// Uncovered pieces of the outer boundary, directed with the copy's interior on the left.
    pub frontier: Vec<Segment>,
}

/// A growing set of copies, optionally invariant under a period translation.
pub struct Layout<'a> {
    pub index: &'a ContactIndex,
    pub rel: Relations,
    pub period: Option<Vector>,
    pub units: Vec<Placed>,
    undo: Vec<Vec<(usize, Vec<Segment>)>>,
    boundary: Vec<Segment>,
    anchor: Point,
    reach: f64,
}

impl<'a> Layout<'a> {
    pub fn new(shape: &RealizedShape, index: &'a ContactIndex, period: Option<Vector>) -> Layout<'a> {
        let rel = Relations::new(&shape.region);
        let anchor = shape.region.outer().vertices()[0].clone();
        let mut r2 = 0.0f64;
        for v in shape.region.all_vertices() {
            let (x, y) = (v - &anchor).to_f64();
            r2 = r2.max(x * x + y * y);
        }
        Layout {
            index,
            rel,
            period,
            units: Vec::new(),
            undo: Vec::new(),
            boundary: shape.region.filled().boundary_edges(),
            anchor,
            reach: 2.0 * Float::sqrt(r2) + 1e-6,
        }
    }

    pub fn with_relations(mut self, rel: Relations) -> Layout<'a> {
        self.rel = rel;
        self
    }

    pub fn into_relations(self) -> Relations {
        self.rel
    }

    /// Translates `b + m·p` that may touch `a` (only `b` itself without a period).
    pub fn near_translates(&self, a: &Isometry, b: &Isometry, skip_zero: bool) -> Vec<Isometry> {
        let Some(p) = &self.period else {
            return if skip_zero { Vec::new() } else { alloc::vec![b.clone()] };
        };
        let (px, py) = p.to_f64();
        let l = Float::sqrt(px * px + py * py);
        let (ax, ay) = a.apply(&self.anchor).to_f64();
        let (bx, by) = b.apply(&self.anchor).to_f64();
        let ds = ((ax - bx) * px + (ay - by) * py) / (l * l);
        let spread = self.reach / l;
        let lo = libm_floor(ds - spread) - 1;
        let hi = libm_ceil(ds + spread) + 1;
        let mut out = Vec::new();
        for m in lo..=hi {
            if skip_zero && m == 0 {
                continue;
            }
            out.push(b.translated(&p.scale(&Scalar::int(m))));
        }
        out
    }

    /// Can `g` join without overlapping anything? With `no_contact_below = Some(l)`,
    /// copies of layer `< l` may not share positive-length boundary with it.
    pub fn fits(&mut self, g: &Isometry, no_contact_below: Option<usize>) -> bool {
        for own in self.near_translates(g, g, true) {
            if self.rel.overlaps(g, &own) {
                return false;
            }
        }
        for i in 0..self.units.len() {
            let pose = self.units[i].pose.clone();
            let layer = self.units[i].layer;
            for b in self.near_translates(g, &pose, false) {
                let r = self.rel.relation(g, &b);
                if r.overlap {
                    return false;
                }
                if let Some(l) = no_contact_below {
                    if layer < l && !r.shared.is_empty() {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Places `g` (assumed to fit) and updates every affected frontier.
    pub fn place(&mut self, g: Isometry, layer: usize) {
        let mut frontier: Vec<Segment> = self.boundary.iter().map(|s| s.transformed_boundary(&g)).collect();
        let mut changes: Vec<(usize, Vec<Segment>)> = Vec::new();
        for own in self.near_translates(&g, &g, true) {
            for s in self.rel.shared_world(&g, &own) {
                subtract(&mut frontier, &s);
            }
        }
        for i in 0..self.units.len() {
            let pose = self.units[i].pose.clone();
            for b in self.near_translates(&g, &pose, false) {
                let mine = self.rel.shared_world(&g, &b);
                if mine.is_empty() {
                    continue;
                }
                for s in &mine {
                    subtract(&mut frontier, s);
                }
                // the same stretch seen from the other copy, moved back to its fundamental pose
                let back = &pose.shift - &b.shift;
                let theirs = self.rel.shared_world(&b, &g);
                if !changes.iter().any(|(j, _)| *j == i) {
                    changes.push((i, self.units[i].frontier.clone()));
                }
                for s in theirs {
                    let s = Segment::new(&s.a + &back, &s.b + &back);
                    subtract(&mut self.units[i].frontier, &s);
                }
            }
        }
        self.units.push(Placed { pose: g, layer, frontier });
        self.undo.push(changes);
    }

    pub fn unplace(&mut self) {
        self.units.pop();
        for (i, old) in self.undo.pop().expect("placement to undo") {
            self.units[i].frontier = old;
        }
    }

    pub fn poses(&self) -> Vec<Isometry> {
        self.units.iter().map(|u| u.pose.clone()).collect()
    }

    /// Candidate poses covering the start (or end) of a frontier piece of unit `owner`.
    pub fn candidates_for(&self, owner: usize, point: &Point, dir: &Vector, forward: bool) -> Vec<Isometry> {
        let h = &self.units[owner].pose;
        let inv = h.inverse();
        let q = inv.apply(point);
        let mut d = inv.apply_linear(dir);
        let mut forward = forward;
        if h.reflect {
            // boundary orientation flips under a reflection
            d = -&d;
            forward = !forward;
        }
        let mut local: Vec<Isometry> = self.index.covering(&q, &d, forward).into_iter().map(|c| self.index.pose(c).clone()).collect();
        for g in self.index.sliding(&q, &d, forward) {
            if !local.contains(&g) {
                local.push(g);
            }
        }
        local.iter().map(|g| h.compose(g)).collect()
    }
}

fn is_integer(s: &Scalar) -> bool {
    matches!(s.small_parts(), Some((_, 0, 1)))
}

fn libm_floor(x: f64) -> i64 {
    let t = x as i64;
    if (t as f64) > x {
        t - 1
    } else {
        t
    }
}

fn libm_ceil(x: f64) -> i64 {
    -libm_floor(-x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{Polygon, Region};
    use alloc::vec;

    fn square() -> RealizedShape {
        RealizedShape::from_region(
            "square",
            Region::simple(Polygon::new(vec![Point::int(0, 0), Point::int(1, 0), Point::int(1, 1), Point::int(0, 1)]).unwrap()),
        )
    }

    #[test]
    fn subtract_splits() {
        let mut v = vec![Segment::new(Point::int(0, 0), Point::int(4, 0))];
        assert!(subtract(&mut v, &Segment::new(Point::int(1, 0), Point::int(2, 0))));
        assert_eq!(v, vec![Segment::new(Point::int(0, 0), Point::int(1, 0)), Segment::new(Point::int(2, 0), Point::int(4, 0))]);
        assert!(!subtract(&mut v, &Segment::new(Point::int(2, 0), Point::int(1, 0))));
        assert!(subtract(&mut v, &Segment::new(Point::int(-1, 0), Point::int(9, 0))));
        assert!(v.is_empty());
    }

    #[test]
    fn frontiers_shrink_and_restore() {
        let s = square();
        let idx = ContactIndex::new(&s, SymmetryOptions::translations_only());
        let mut l = Layout::new(&s, &idx, None);
        l.place(Isometry::identity(), 0);
        assert_eq!(l.units[0].frontier.len(), 4);
        let right = Isometry::translation(Point::int(1, 0));
        assert!(l.fits(&right, None));
        l.place(right, 1);
        assert_eq!(l.units[0].frontier.len(), 3);
        assert_eq!(l.units[1].frontier.len(), 3);
        assert!(!l.fits(&Isometry::identity(), None));
        l.unplace();
        assert_eq!(l.units[0].frontier.len(), 4);
    }

    #[test]
    fn periodic_row_has_two_sides() {
        let s = square();
        let idx = ContactIndex::new(&s, SymmetryOptions::translations_only());
        let mut l = Layout::new(&s, &idx, Some(Point::int(1, 0)));
        l.place(Isometry::identity(), 0);
        assert_eq!(l.units[0].frontier.len(), 2);
        let up = Isometry::translation(Point::int(0, 1));
        assert!(l.fits(&up, None));
        assert!(!l.fits(&up, Some(1)));
        let bad = Isometry::translation(Point::new(Scalar::ratio(1, 2), Scalar::ZERO));
        assert!(!l.fits(&bad, None));
    }

    #[test]
    fn reflected_copies_keep_interior_on_the_left() {
        let s = square();
        let idx = ContactIndex::new(&s, SymmetryOptions::default());
        let mut l = Layout::new(&s, &idx, None);
        let flip = Isometry::new(0, true, Point::int(0, 1));
        l.place(flip.clone(), 0);
        for f in &l.units[0].frontier {
            let mid = f.a.midpoint(&f.b);
            let inward = &mid + &f.dir().perp().scale(&Scalar::ratio(1, 8));
            assert_eq!(s.region.transformed(&flip).locate(&inward), crate::geom::Location::Inside);
        }
        let right = Isometry::new(0, true, Point::int(1, 1));
        l.place(right, 1);
        assert_eq!(l.units[0].frontier.len(), 3);
        let c = l.candidates_for(0, &Point::int(0, 0), &Point::int(1, 0), true);
        assert!(!c.is_empty());
        for g in c {
            assert!(!l.rel.relation(&flip, &g).shared.is_empty());
        }
    }

    #[test]
    fn covering_candidates() {
        let s = square();
        let idx = ContactIndex::new(&s, SymmetryOptions::translations_only());
        let mut l = Layout::new(&s, &idx, None);
        l.place(Isometry::identity(), 0);
        let c = l.candidates_for(0, &Point::int(0, 0), &Point::int(1, 0), true);
        assert_eq!(c, vec![Isometry::translation(Point::int(0, -1))]);
    }
}
