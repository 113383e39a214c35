//! Vertex-anchored contact placements and a memo of pairwise relations
//! between placed copies of one shape.

use alloc::vec::Vec;

use hashbrown::HashMap;

use crate::exact::{Isometry, Point, Scalar};
use crate::geom::{interiors_intersect, shared_boundary_unchecked, Region, Segment};
use crate::shape::RealizedShape;

/// Which linear parts placements may use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SymmetryOptions {
    pub allow_reflections: bool,
    /// Order of the rotation subgroup; a divisor of 12.
    pub rotations: u8,
}

impl Default for SymmetryOptions {
    fn default() -> Self {
        SymmetryOptions { allow_reflections: true, rotations: 12 }
    }
}

impl SymmetryOptions {
    pub fn translations_only() -> SymmetryOptions {
        SymmetryOptions { allow_reflections: false, rotations: 1 }
    }

    pub fn is_valid(&self) -> bool {
        matches!(self.rotations, 1 | 2 | 3 | 4 | 6 | 12)
    }

    /// Linear parts in canonical order.
    pub fn linear_parts(&self) -> Vec<Isometry> {
        let step = 12 / self.rotations.max(1);
        let mut out = Vec::new();
        for k in 0..self.rotations {
            out.push(Isometry::new(k * step, false, Point::zero()));
            if self.allow_reflections {
                out.push(Isometry::new(k * step, true, Point::zero()));
            }
        }
        out.sort_by(|a, b| a.canonical_cmp(b));
        out
    }

    pub fn contains(&self, g: &Isometry) -> bool {
        let step = 12 / self.rotations.max(1);
        g.rot % step == 0 && (self.allow_reflections || !g.reflect)
    }
}

/// Two placed copies sharing positive-length boundary.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Contact {
    pub unit_a: Isometry,
    pub unit_b: Isometry,
    pub segments: Vec<Segment>,
}

impl Contact {
    pub fn length2_total(&self) -> Scalar {
        self.segments.iter().fold(Scalar::ZERO, |acc, s| acc + s.length2())
    }
}

fn has_antiparallel_overlap(a: &[Segment], b: &[Segment]) -> bool {
    for e in a {
        let de = e.dir();
        for f in b {
            let df = f.dir();
            if de.cross(&df).is_zero() && de.dot(&df).is_negative() && crate::geom::collinear_overlap(e, f).is_some() {
                return true;
            }
        }
    }
    false
}

/// Poses `g` of `shape` (sorted canonically, no duplicates) such that `g·shape`
/// shares a positive-length antiparallel edge overlap with `fixed`, some vertex
/// of one coincides with a vertex of the other, and the interiors are disjoint.
pub fn enumerate_contacts(fixed: &Region, shape: &Region, opts: &SymmetryOptions) -> Vec<Isometry> {
    let fixed_edges = fixed.boundary_edges();
    let fixed_vs: Vec<Point> = fixed.all_vertices().cloned().collect();
    let mut out: Vec<Isometry> = Vec::new();
    for lin in opts.linear_parts() {
        let moved = shape.transformed(&lin);
        let moved_vs: Vec<Point> = moved.all_vertices().cloned().collect();
        let moved_edges = moved.boundary_edges();
        // an antiparallel pair must exist for this linear part at all
        let dirs_ok = fixed_edges.iter().any(|e| {
            moved_edges.iter().any(|f| e.dir().cross(&f.dir()).is_zero() && e.dir().dot(&f.dir()).is_negative())
        });
        if !dirs_ok {
            continue;
        }
        let mut shifts: Vec<Point> = Vec::new();
        for u in &fixed_vs {
            for v in &moved_vs {
                shifts.push(u - v);
            }
        }
        shifts.sort();
        shifts.dedup();
        for s in shifts {
            let cand = moved.translated(&s);
            if !cand.bbox().overlaps(&fixed.bbox()) {
                continue;
            }
            let cand_edges = cand.boundary_edges();
            if !has_antiparallel_overlap(&fixed_edges, &cand_edges) {
                continue;
            }
            if interiors_intersect(fixed, &cand) {
                continue;
            }
            out.push(Isometry::new(lin.rot, lin.reflect, s));
        }
    }
    out.sort_by(|a, b| a.canonical_cmp(b));
    out
}

/// Keeps the first pose of each distinct placed point set.
pub fn dedup_geometric(shape: &Region, poses: Vec<Isometry>) -> Vec<Isometry> {
    let mut seen = hashbrown::HashSet::new();
    poses.into_iter().filter(|g| seen.insert(shape.transformed(g).geometric_key())).collect()
}

/// Is `u`'s interior disjoint from every placed region?
pub fn conflicts(u: &Region, placed: &[Region]) -> bool {
    placed.iter().any(|p| interiors_intersect(u, p))
}

/// Contacts of one shape against itself at the identity pose.
#[derive(Clone, Debug)]
pub struct ContactTable {
    pub opts: SymmetryOptions,
    /// Relative poses in canonical order, geometric duplicates removed.
    pub poses: Vec<Isometry>,
    /// Shared segments for each pose, in the fixed copy's frame.
    pub shared: Vec<Vec<Segment>>,
}

impl ContactTable {
    pub fn new(shape: &RealizedShape, opts: SymmetryOptions) -> ContactTable {
        let r = &shape.region;
        let poses = dedup_geometric(r, enumerate_contacts(r, r, &opts));
        let shared = poses.iter().map(|g| shared_boundary_unchecked(r, &r.transformed(g))).collect();
        ContactTable { opts, poses, shared }
    }

    pub fn len(&self) -> usize {
        self.poses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poses.is_empty()
    }
}

/// Overlap flag and shared boundary (in the first copy's frame) for a relative pose.
#[derive(Clone, Debug)]
pub struct Relation {
    pub overlap: bool,
    pub shared: Vec<Segment>,
}

/// Memoized relations between copies of one shape, keyed by `a⁻¹∘b`.
#[derive(Clone, Debug)]
pub struct Relations {
    shape: Region,
    reach2: Scalar,
    anchor: Point,
    memo: HashMap<Isometry, Relation>,
    pub lookups: u64,
}

impl Relations {
    pub fn new(shape: &Region) -> Relations {
        let anchor = shape.outer().vertices()[0].clone();
        let mut r2 = Scalar::ZERO;
        for v in shape.all_vertices() {
            let d = (v - &anchor).norm2();
            if d > r2 {
                r2 = d;
            }
        }
        // copies whose anchors are further apart than twice the anchor radius cannot touch
        let reach2 = r2 * Scalar::int(4);
        Relations { shape: shape.clone(), reach2, anchor, memo: HashMap::new(), lookups: 0 }
    }

    pub fn shape(&self) -> &Region {
        &self.shape
    }

    fn far_apart(&self, rel: &Isometry) -> bool {
        let d = (&rel.apply(&self.anchor) - &self.anchor).norm2();
        d > self.reach2
    }

    /// Relation of `b` as seen from `a`.
    pub fn relation(&mut self, a: &Isometry, b: &Isometry) -> &Relation {
        let rel = a.inverse().compose(b);
        self.relative(rel)
    }

    pub fn relative(&mut self, rel: Isometry) -> &Relation {
        self.lookups += 1;
        if !self.memo.contains_key(&rel) {
            let value = if self.far_apart(&rel) {
                Relation { overlap: false, shared: Vec::new() }
            } else {
                let other = self.shape.transformed(&rel);
                if interiors_intersect(&self.shape, &other) {
                    Relation { overlap: true, shared: Vec::new() }
                } else {
                    Relation { overlap: false, shared: shared_boundary_unchecked(&self.shape, &other) }
                }
            };
            self.memo.insert(rel.clone(), value);
        }
        &self.memo[&rel]
    }

    pub fn overlaps(&mut self, a: &Isometry, b: &Isometry) -> bool {
        self.relation(a, b).overlap
    }

    /// Shared segments of `a` and `b` in world coordinates, directed along `a`'s boundary
    /// (interior on the left).
    pub fn shared_world(&mut self, a: &Isometry, b: &Isometry) -> Vec<Segment> {
        let segs = self.relation(a, b).shared.clone();
        segs.iter().map(|s| s.transformed_boundary(a)).collect()
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }
}
