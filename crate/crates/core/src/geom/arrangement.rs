//! Planar arrangements of polygon boundaries with per-face cover sets, and the
//! quotient of a period-invariant family by its period.
//!
//! The periodic construction cuts one period out of the strip with two cut lines
//! perpendicular to the period (placed so that they avoid every unit vertex) and
//! two lines parallel to it beyond the units. Faces along the left cut are glued
//! to the faces along the right cut, which yields the exact quotient cylinder.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use hashbrown::HashMap;

use crate::exact::{Point, Scalar, Vector};

use super::polygon::{signed_area2, Bbox, Location, Region, Segment};
use super::GeomError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FrameSide {
    Bottom,
    Right,
    Top,
    Left,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeTag {
    /// Part of a region boundary; `forward` when the region's boundary runs along
    /// the even half-edge of this edge.
    Ring { region: usize, forward: bool },
    Frame { side: FrameSide, forward: bool },
}

#[derive(Clone, Debug)]
pub struct HalfEdge {
    pub origin: usize,
    pub next: usize,
    pub face: usize,
}

#[derive(Clone, Debug)]
pub struct Face {
    pub bounded: bool,
    /// Indices of input regions whose interior contains this face.
    pub covered_by: Vec<usize>,
    pub area: Option<Scalar>,
    /// A half-edge on the outer boundary cycle (bounded faces only).
    pub outer: Option<usize>,
    /// One half-edge per inner boundary cycle.
    pub inner: Vec<usize>,
    /// Inside the quotient window (always true for planar arrangements' bounded faces).
    pub in_window: bool,
}

impl Face {
    pub fn cover(&self) -> usize {
        self.covered_by.len()
    }
}

/// Cut-window data for a quotient subdivision.
#[derive(Clone, Debug)]
pub struct QuotientInfo {
    pub period: Vector,
    pub s0: Scalar,
    pub s1: Scalar,
    pub t0: Scalar,
    pub t1: Scalar,
    /// `(fundamental index, translate k)` of each region in the arrangement.
    pub placed: Vec<(usize, i64)>,
}

#[derive(Clone, Debug)]
pub struct Subdivision {
    pub vertices: Vec<Point>,
    pub half_edges: Vec<HalfEdge>,
    pub faces: Vec<Face>,
    pub edge_tags: Vec<Vec<EdgeTag>>,
    /// Connected component of each vertex (planar graph components).
    pub vertex_component: Vec<usize>,
    pub component_count: usize,
    pub quotient: Option<QuotientInfo>,
    outgoing: Vec<Vec<usize>>,
}

/// A connected component of the uncovered part of the plane (or cylinder).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplementComponent {
    pub faces: Vec<usize>,
    pub bounded: bool,
    pub touches_top: bool,
    pub touches_bottom: bool,
    /// Runs around the cylinder. The two outer components wrap as well; a
    /// wrapping component touching neither side is a tunnel.
    pub wraps: bool,
}

struct UnionFind {
    parent: Vec<usize>,
    // offset of node relative to its parent (periods)
    diff: Vec<i64>,
}

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind { parent: (0..n).collect(), diff: vec![0; n] }
    }

    fn find(&mut self, x: usize) -> (usize, i64) {
        let p = self.parent[x];
        if p == x {
            return (x, 0);
        }
        let (r, d) = self.find(p);
        self.parent[x] = r;
        self.diff[x] += d;
        (r, self.diff[x])
    }

    /// Records `pot(b) − pot(a) = d`; returns false on an inconsistent cycle.
    fn union(&mut self, a: usize, b: usize, d: i64) -> bool {
        let (ra, da) = self.find(a);
        let (rb, db) = self.find(b);
        if ra == rb {
            return db - da == d;
        }
        self.parent[rb] = ra;
        self.diff[rb] = da + d - db;
        true
    }
}

fn angle_half(v: &Vector) -> u8 {
    if v.y.is_positive() || (v.y.is_zero() && v.x.is_positive()) {
        0
    } else {
        1
    }
}

fn angle_cmp(u: &Vector, v: &Vector) -> Ordering {
    angle_half(u).cmp(&angle_half(v)).then_with(|| match u.cross(v).signum() {
        1 => Ordering::Less,
        -1 => Ordering::Greater,
        _ => Ordering::Equal,
    })
}

struct InputSeg {
    a: Point,
    b: Point,
    tag: EdgeTag,
    bbox: Bbox,
}

impl Subdivision {
    pub fn dest(&self, h: usize) -> usize {
        self.half_edges[h ^ 1].origin
    }

    pub fn segment(&self, h: usize) -> Segment {
        Segment::new(self.vertices[self.half_edges[h].origin].clone(), self.vertices[self.dest(h)].clone())
    }

    pub fn outgoing(&self, v: usize) -> &[usize] {
        &self.outgoing[v]
    }

    pub fn edge_count(&self) -> usize {
        self.half_edges.len() / 2
    }

    fn tags_of(&self, h: usize) -> impl Iterator<Item = (EdgeTag, bool)> + '_ {
        let even = h % 2 == 0;
        self.edge_tags[h / 2].iter().map(move |t| {
            let fwd = match t {
                EdgeTag::Ring { forward, .. } | EdgeTag::Frame { forward, .. } => *forward,
            };
            (*t, fwd == even)
        })
    }

    /// Frame side whose inner side is the left of `h`, if `h` lies on the frame.
    pub fn frame_side_inner(&self, h: usize) -> Option<FrameSide> {
        self.tags_of(h).find_map(|(t, along)| match t {
            EdgeTag::Frame { side, .. } if along => Some(side),
            _ => None,
        })
    }

    /// Builds the arrangement of the region boundaries plus extra frame segments.
    fn build(regions: &[Region], frame: &[(Point, Point, FrameSide)]) -> Subdivision {
        let mut segs: Vec<InputSeg> = Vec::new();
        for (ri, r) in regions.iter().enumerate() {
            for e in r.boundary_edges() {
                let bbox = Bbox::of_points([&e.a, &e.b]);
                segs.push(InputSeg { a: e.a, b: e.b, tag: EdgeTag::Ring { region: ri, forward: true }, bbox });
            }
        }
        for (a, b, side) in frame {
            let bbox = Bbox::of_points([a, b]);
            segs.push(InputSeg { a: a.clone(), b: b.clone(), tag: EdgeTag::Frame { side: *side, forward: true }, bbox });
        }

        // split points
        let mut splits: Vec<Vec<Point>> = vec![Vec::new(); segs.len()];
        for i in 0..segs.len() {
            for j in i + 1..segs.len() {
                if !segs[i].bbox.overlaps(&segs[j].bbox) {
                    continue;
                }
                let (a1, b1, a2, b2) = (&segs[i].a, &segs[i].b, &segs[j].a, &segs[j].b);
                let d1 = b1 - a1;
                let d2 = b2 - a2;
                let den = d1.cross(&d2);
                let w = a2 - a1;
                if !den.is_zero() {
                    let nt = w.cross(&d2);
                    let nu = w.cross(&d1);
                    let within = |n: &Scalar| {
                        if den.is_positive() {
                            n.signum() >= 0 && *n <= den
                        } else {
                            n.signum() <= 0 && *n >= den
                        }
                    };
                    if within(&nt) && within(&nu) {
                        let t = nt.checked_div(&den).expect("nonzero");
                        let p = a1 + &d1.scale(&t);
                        if &p != a1 && &p != b1 {
                            splits[i].push(p.clone());
                        }
                        if &p != a2 && &p != b2 {
                            splits[j].push(p);
                        }
                    }
                } else if w.cross(&d1).is_zero() {
                    for q in [a2, b2] {
                        if super::polygon::on_segment_open(a1, b1, q) {
                            splits[i].push(q.clone());
                        }
                    }
                    for q in [a1, b1] {
                        if super::polygon::on_segment_open(a2, b2, q) {
                            splits[j].push(q.clone());
                        }
                    }
                }
            }
        }

        let mut vertices: Vec<Point> = Vec::new();
        let mut vindex: HashMap<Point, usize> = HashMap::new();
        let mut edges: Vec<(usize, usize)> = Vec::new();
        let mut eindex: HashMap<(usize, usize), usize> = HashMap::new();
        let mut edge_tags: Vec<Vec<EdgeTag>> = Vec::new();
        let mut vid = |p: &Point, vertices: &mut Vec<Point>| -> usize {
            if let Some(&i) = vindex.get(p) {
                return i;
            }
            vertices.push(p.clone());
            vindex.insert(p.clone(), vertices.len() - 1);
            vertices.len() - 1
        };
        for (si, s) in segs.iter().enumerate() {
            let seg = Segment::new(s.a.clone(), s.b.clone());
            let mut cuts = core::mem::take(&mut splits[si]);
            cuts.sort_by_key(|p| seg.param(p));
            cuts.dedup();
            let mut chain = Vec::with_capacity(cuts.len() + 2);
            chain.push(s.a.clone());
            chain.extend(cuts);
            chain.push(s.b.clone());
            for w in chain.windows(2) {
                let u = vid(&w[0], &mut vertices);
                let v = vid(&w[1], &mut vertices);
                let key = (u.min(v), u.max(v));
                let forward = u < v;
                let e = *eindex.entry(key).or_insert_with(|| {
                    edges.push(key);
                    edge_tags.push(Vec::new());
                    edges.len() - 1
                });
                let tag = match s.tag {
                    EdgeTag::Ring { region, .. } => EdgeTag::Ring { region, forward },
                    EdgeTag::Frame { side, .. } => EdgeTag::Frame { side, forward },
                };
                edge_tags[e].push(tag);
            }
        }

        let nv = vertices.len();
        let mut half_edges: Vec<HalfEdge> = Vec::with_capacity(edges.len() * 2);
        let mut outgoing: Vec<Vec<usize>> = vec![Vec::new(); nv];
        for &(u, v) in &edges {
            let h = half_edges.len();
            half_edges.push(HalfEdge { origin: u, next: usize::MAX, face: usize::MAX });
            half_edges.push(HalfEdge { origin: v, next: usize::MAX, face: usize::MAX });
            outgoing[u].push(h);
            outgoing[v].push(h + 1);
        }
        let mut pos = vec![0usize; half_edges.len()];
        for (v, out) in outgoing.iter_mut().enumerate() {
            let dirs: Vec<(usize, Vector)> = out
                .iter()
                .map(|&h| {
                    let d = half_edges[h ^ 1].origin;
                    (h, &vertices[d] - &vertices[v])
                })
                .collect();
            let mut sorted = dirs;
            sorted.sort_by(|x, y| angle_cmp(&x.1, &y.1));
            *out = sorted.into_iter().map(|x| x.0).collect();
            for (i, &h) in out.iter().enumerate() {
                pos[h] = i;
            }
        }
        for h in 0..half_edges.len() {
            let t = h ^ 1;
            let v = half_edges[t].origin;
            let list = &outgoing[v];
            let i = pos[t];
            half_edges[h].next = list[(i + list.len() - 1) % list.len()];
        }

        // cycles
        let mut cycle_of = vec![usize::MAX; half_edges.len()];
        let mut cycles: Vec<(usize, Scalar)> = Vec::new();
        for h0 in 0..half_edges.len() {
            if cycle_of[h0] != usize::MAX {
                continue;
            }
            let c = cycles.len();
            let mut pts = Vec::new();
            let mut h = h0;
            loop {
                cycle_of[h] = c;
                pts.push(vertices[half_edges[h].origin].clone());
                h = half_edges[h].next;
                if h == h0 {
                    break;
                }
            }
            cycles.push((h0, signed_area2(&pts)));
        }

        // graph components
        let mut uf = UnionFind::new(nv);
        for &(u, v) in &edges {
            uf.union(u, v, 0);
        }
        let mut comp_id: HashMap<usize, usize> = HashMap::new();
        let mut vertex_component = vec![0; nv];
        for (v, slot) in vertex_component.iter_mut().enumerate() {
            let r = uf.find(v).0;
            let n = comp_id.len();
            *slot = *comp_id.entry(r).or_insert(n);
        }
        let component_count = comp_id.len();

        // faces: 0 is unbounded, then one per positive cycle
        let mut faces = vec![Face {
            bounded: false,
            covered_by: Vec::new(),
            area: None,
            outer: None,
            inner: Vec::new(),
            in_window: false,
        }];
        let mut face_of_cycle = vec![usize::MAX; cycles.len()];
        let mut cycle_pts: Vec<Vec<Point>> = Vec::with_capacity(cycles.len());
        let mut cycle_bbox: Vec<Bbox> = Vec::with_capacity(cycles.len());
        for (h0, _) in &cycles {
            let mut pts = Vec::new();
            let mut h = *h0;
            loop {
                pts.push(vertices[half_edges[h].origin].clone());
                h = half_edges[h].next;
                if h == *h0 {
                    break;
                }
            }
            cycle_bbox.push(Bbox::of_points(&pts));
            cycle_pts.push(pts);
        }
        for (c, (h0, a2)) in cycles.iter().enumerate() {
            if a2.is_positive() {
                face_of_cycle[c] = faces.len();
                faces.push(Face {
                    bounded: true,
                    covered_by: Vec::new(),
                    area: Some(a2.half()),
                    outer: Some(*h0),
                    inner: Vec::new(),
                    in_window: true,
                });
            }
        }
        for (c, (h0, a2)) in cycles.iter().enumerate() {
            if a2.is_positive() {
                continue;
            }
            let probe = &vertices[half_edges[*h0].origin];
            let (px, py) = probe.to_f64();
            let my_comp = vertex_component[half_edges[*h0].origin];
            let mut best: Option<(usize, &Scalar)> = None;
            for (d, (hd, ad)) in cycles.iter().enumerate() {
                if !ad.is_positive() || vertex_component[half_edges[*hd].origin] == my_comp {
                    continue;
                }
                if !cycle_bbox[d].contains(px, py) {
                    continue;
                }
                if super::polygon::locate_in_ring(&cycle_pts[d], probe) != Location::Inside {
                    continue;
                }
                if best.map_or(true, |(_, a)| ad < a) {
                    best = Some((d, ad));
                }
            }
            let f = match best {
                Some((d, _)) => face_of_cycle[d],
                None => 0,
            };
            face_of_cycle[c] = f;
            faces[f].inner.push(*h0);
            if let Some(area) = faces[f].area.as_mut() {
                *area = &*area + &a2.half();
            }
        }
        for h in 0..half_edges.len() {
            half_edges[h].face = face_of_cycle[cycle_of[h]];
        }

        let mut sub = Subdivision {
            vertices,
            half_edges,
            faces,
            edge_tags,
            vertex_component,
            component_count,
            quotient: None,
            outgoing,
        };
        sub.compute_covers(regions);
        sub
    }

    fn compute_covers(&mut self, regions: &[Region]) {
        for f in 1..self.faces.len() {
            let h = self.faces[f].outer.expect("bounded face");
            let seg = self.segment(h);
            let mid = seg.a.midpoint(&seg.b);
            let mut tagged: Vec<(usize, bool)> = Vec::new();
            for (t, along) in self.tags_of(h) {
                if let EdgeTag::Ring { region, .. } = t {
                    tagged.push((region, along));
                }
            }
            let mut cov = Vec::new();
            for (ri, r) in regions.iter().enumerate() {
                if let Some(&(_, along)) = tagged.iter().find(|(x, _)| *x == ri) {
                    if along {
                        cov.push(ri);
                    }
                    continue;
                }
                if r.locate(&mid) == Location::Inside {
                    cov.push(ri);
                }
            }
            self.faces[f].covered_by = cov;
        }
    }

    /// Per-component Euler characteristic check: `V − E + F = 2` with each
    /// component counting its bounded faces plus one outer face.
    pub fn euler_per_component(&self) -> Vec<(usize, usize, usize)> {
        let mut out = vec![(0usize, 0usize, 1usize); self.component_count];
        for c in &self.vertex_component {
            out[*c].0 += 1;
        }
        for h in (0..self.half_edges.len()).step_by(2) {
            out[self.vertex_component[self.half_edges[h].origin]].1 += 1;
        }
        for f in self.faces.iter().skip(1) {
            let h = f.outer.expect("bounded face");
            out[self.vertex_component[self.half_edges[h].origin]].2 += 1;
        }
        out
    }
}

/// Builds the arrangement of `regions`. With a period, `regions` are the
/// fundamental representatives of a period-invariant family and the result is
/// the quotient window described in the module docs.
pub fn build_subdivision(regions: &[Region], period: Option<&Vector>) -> Result<Subdivision, GeomError> {
    match period {
        None => Ok(Subdivision::build(regions, &[])),
        Some(p) => build_quotient(regions, p),
    }
}

fn ceil_div(x: &Scalar, l: &Scalar) -> i64 {
    -(-x).checked_div(l).expect("nonzero").floor()
}

fn floor_div(x: &Scalar, l: &Scalar) -> i64 {
    x.checked_div(l).expect("nonzero").floor()
}

fn build_quotient(regions: &[Region], p: &Vector) -> Result<Subdivision, GeomError> {
    if p.is_zero() {
        return Err(GeomError::ZeroPeriod);
    }
    if regions.is_empty() {
        return Err(GeomError::EmptyConfiguration);
    }
    let l2 = p.norm2();
    let s_of = |x: &Point| x.dot(p);
    let t_of = |x: &Point| p.cross(x);

    let mut residues: Vec<Scalar> = Vec::new();
    let mut tmin: Option<Scalar> = None;
    let mut tmax: Option<Scalar> = None;
    let mut srange: Vec<(Scalar, Scalar)> = Vec::new();
    for r in regions {
        let mut lo: Option<Scalar> = None;
        let mut hi: Option<Scalar> = None;
        for v in r.all_vertices() {
            let s = s_of(v);
            let k = floor_div(&s, &l2);
            residues.push(&s - &(&l2 * &Scalar::int(k)));
            let t = t_of(v);
            if tmin.as_ref().map_or(true, |m| t < *m) {
                tmin = Some(t.clone());
            }
            if tmax.as_ref().map_or(true, |m| t > *m) {
                tmax = Some(t);
            }
            if lo.as_ref().map_or(true, |m| s < *m) {
                lo = Some(s.clone());
            }
            if hi.as_ref().map_or(true, |m| s > *m) {
                hi = Some(s);
            }
        }
        srange.push((lo.expect("vertices"), hi.expect("vertices")));
    }
    residues.sort();
    residues.dedup();
    let s0 = if residues.len() >= 2 {
        (&residues[0] + &residues[1]).half()
    } else {
        &residues[0] + &l2.half()
    };
    let s1 = &s0 + &l2;
    let t0 = tmin.expect("vertices") - &l2;
    let t1 = tmax.expect("vertices") + &l2;

    let mut placed = Vec::new();
    let mut window_regions = Vec::new();
    for (i, r) in regions.iter().enumerate() {
        let (lo, hi) = &srange[i];
        let kmin = ceil_div(&(&s0 - hi), &l2);
        let kmax = floor_div(&(&s1 - lo), &l2);
        for k in kmin..=kmax {
            placed.push((i, k));
            window_regions.push(r.translated(&p.scale(&Scalar::int(k))));
        }
    }

    let perp = p.perp();
    let at = |s: &Scalar, t: &Scalar| -> Point {
        let v = &p.scale(s) + &perp.scale(t);
        v.scale(&l2.recip().expect("nonzero"))
    };
    let c00 = at(&s0, &t0);
    let c10 = at(&s1, &t0);
    let c11 = at(&s1, &t1);
    let c01 = at(&s0, &t1);
    let frame = [
        (c00.clone(), c10.clone(), FrameSide::Bottom),
        (c10, c11.clone(), FrameSide::Right),
        (c11, c01.clone(), FrameSide::Top),
        (c01, c00, FrameSide::Left),
    ];
    let mut sub = Subdivision::build(&window_regions, &frame);

    for f in 1..sub.faces.len() {
        let h = sub.faces[f].outer.expect("bounded");
        let mut inside = None;
        for (t, along) in sub.tags_of(h) {
            if let EdgeTag::Frame { .. } = t {
                inside = Some(along);
            }
        }
        let inside = inside.unwrap_or_else(|| {
            let seg = sub.segment(h);
            let m = seg.a.midpoint(&seg.b);
            let (s, t) = (s_of(&m), t_of(&m));
            s > s0 && s < s1 && t > t0 && t < t1
        });
        sub.faces[f].in_window = inside;
    }
    sub.quotient = Some(QuotientInfo { period: p.clone(), s0, s1, t0, t1, placed });
    Ok(sub)
}

/// Components of the cover-0 faces. For a quotient subdivision faces on the two
/// cuts are glued; for a planar one every uncovered face is its own component.
pub fn complement_components(s: &Subdivision) -> Vec<ComplementComponent> {
    let Some(q) = &s.quotient else {
        return s
            .faces
            .iter()
            .enumerate()
            .filter(|(_, f)| f.covered_by.is_empty())
            .map(|(i, f)| ComplementComponent {
                faces: vec![i],
                bounded: f.bounded,
                touches_top: false,
                touches_bottom: false,
                wraps: false,
            })
            .collect();
    };
    let nf = s.faces.len();
    let open = |f: usize| s.faces[f].in_window && s.faces[f].covered_by.is_empty();
    let mut uf = UnionFind::new(nf);
    let mut inconsistent: Vec<usize> = Vec::new();
    let mut left: HashMap<(Scalar, Scalar), usize> = HashMap::new();
    let mut right: Vec<((Scalar, Scalar), usize)> = Vec::new();
    let mut top = vec![false; nf];
    let mut bottom = vec![false; nf];
    let t_of = |x: &Point| q.period.cross(x);
    for h in 0..s.half_edges.len() {
        let Some(side) = s.frame_side_inner(h) else { continue };
        let f = s.half_edges[h].face;
        let seg = s.segment(h);
        let (ta, tb) = (t_of(&seg.a), t_of(&seg.b));
        let key = if ta < tb { (ta, tb) } else { (tb, ta) };
        match side {
            FrameSide::Top => top[f] = true,
            FrameSide::Bottom => bottom[f] = true,
            FrameSide::Left => {
                left.insert(key, f);
            }
            FrameSide::Right => right.push((key, f)),
        }
    }
    for (key, fr) in right {
        if let Some(&fl) = left.get(&key) {
            if open(fr) && open(fl) && !uf.union(fr, fl, 1) {
                inconsistent.push(fr);
            }
        }
    }
    let mut comps: Vec<ComplementComponent> = Vec::new();
    let mut comp_of_root: HashMap<usize, usize> = HashMap::new();
    for f in 0..nf {
        if !open(f) {
            continue;
        }
        let r = uf.find(f).0;
        let n = comps.len();
        let c = *comp_of_root.entry(r).or_insert(n);
        if c == comps.len() {
            comps.push(ComplementComponent {
                faces: Vec::new(),
                bounded: true,
                touches_top: false,
                touches_bottom: false,
                wraps: false,
            });
        }
        comps[c].faces.push(f);
        comps[c].touches_top |= top[f];
        comps[c].touches_bottom |= bottom[f];
    }
    for f in inconsistent {
        let r = uf.find(f).0;
        if let Some(&c) = comp_of_root.get(&r) {
            comps[c].wraps = true;
        }
    }
    for c in &mut comps {
        c.bounded = !(c.touches_top || c.touches_bottom || c.wraps);
    }
    comps
}

/// Are the closures of two complement components disjoint? Decided
/// combinatorially: no arrangement vertex is incident to faces of both.
pub fn min_separation_positive(s: &Subdivision, comps: &[ComplementComponent], a: usize, b: usize) -> bool {
    let mut comp_of_face = vec![usize::MAX; s.faces.len()];
    for (ci, c) in comps.iter().enumerate() {
        for &f in &c.faces {
            comp_of_face[f] = ci;
        }
    }
    for v in 0..s.vertices.len() {
        let mut seen_a = false;
        let mut seen_b = false;
        for &h in s.outgoing(v) {
            let c = comp_of_face[s.half_edges[h].face];
            seen_a |= c == a;
            seen_b |= c == b;
        }
        if seen_a && seen_b {
            return false;
        }
    }
    true
}

/// Indices of `others` lying in bounded holes of the union of `blob`.
///
/// Faces not covered by `blob` are joined across every edge that is not part of
/// a `blob` boundary; groups other than the one containing the unbounded face
/// are holes.
pub fn enclosed_regions(blob: &[Region], others: &[Region]) -> Vec<usize> {
    let mut all: Vec<Region> = blob.to_vec();
    all.extend(others.iter().cloned());
    let s = Subdivision::build(&all, &[]);
    let nb = blob.len();
    let free = |f: usize| s.faces[f].covered_by.iter().all(|&r| r >= nb);
    let mut uf = UnionFind::new(s.faces.len());
    for e in 0..s.edge_count() {
        let blocked = s.edge_tags[e].iter().any(|t| matches!(t, EdgeTag::Ring { region, .. } if *region < nb));
        let (f, g) = (s.half_edges[2 * e].face, s.half_edges[2 * e + 1].face);
        if !blocked && free(f) && free(g) {
            uf.union(f, g, 0);
        }
    }
    let outside = uf.find(0).0;
    let mut out = Vec::new();
    for f in 1..s.faces.len() {
        if !free(f) || uf.find(f).0 == outside {
            continue;
        }
        for &r in &s.faces[f].covered_by {
            if !out.contains(&(r - nb)) {
                out.push(r - nb);
            }
        }
    }
    out.sort_unstable();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Polygon;

    fn rect(x0: Scalar, y0: Scalar, w: Scalar, h: Scalar) -> Region {
        let x1 = &x0 + &w;
        let y1 = &y0 + &h;
        Region::simple(
            Polygon::new(vec![
                Point::new(x0.clone(), y0.clone()),
                Point::new(x1.clone(), y0.clone()),
                Point::new(x1, y1.clone()),
                Point::new(x0, y1),
            ])
            .unwrap(),
        )
    }

    fn sq(x: i64, y: i64) -> Region {
        rect(Scalar::int(x), Scalar::int(y), Scalar::ONE, Scalar::ONE)
    }

    fn covers(s: &Subdivision) -> Vec<usize> {
        let mut v: Vec<usize> = s.faces.iter().map(|f| f.cover()).collect();
        v.sort();
        v
    }

    #[test]
    fn enclosed_square_is_found() {
        let mut ring = Vec::new();
        for x in 0..3 {
            for y in 0..3 {
                if (x, y) != (1, 1) {
                    ring.push(sq(x, y));
                }
            }
        }
        assert_eq!(enclosed_regions(&ring, &[sq(5, 5), sq(1, 1), sq(3, 1)]), vec![1]);
    }

    #[test]
    fn one_square() {
        let s = build_subdivision(&[sq(0, 0)], None).unwrap();
        assert_eq!(covers(&s), vec![0, 1]);
    }

    #[test]
    fn two_disjoint_squares() {
        let s = build_subdivision(&[sq(0, 0), sq(3, 0)], None).unwrap();
        assert_eq!(covers(&s), vec![0, 1, 1]);
        assert_eq!(s.component_count, 2);
        for (v, e, f) in s.euler_per_component() {
            assert_eq!(v as i64 - e as i64 + f as i64, 2);
        }
    }

    #[test]
    fn overlapping_quarter() {
        let h = Scalar::ratio(1, 2);
        let s = build_subdivision(&[sq(0, 0), rect(h.clone(), h, Scalar::ONE, Scalar::ONE)], None).unwrap();
        assert!(s.faces.iter().any(|f| f.cover() == 2));
        let total: Scalar = s.faces.iter().filter_map(|f| f.area.clone().map(|a| a * Scalar::int(f.cover() as i64))).fold(Scalar::ZERO, |x, y| x + y);
        assert_eq!(total, Scalar::int(2));
    }

    #[test]
    fn ring_of_squares_has_a_cavity() {
        let mut regions = Vec::new();
        for x in 0..3 {
            for y in 0..3 {
                if (x, y) != (1, 1) {
                    regions.push(sq(x, y));
                }
            }
        }
        let s = build_subdivision(&regions, None).unwrap();
        let comps = complement_components(&s);
        assert_eq!(comps.iter().filter(|c| c.bounded).count(), 1);
        assert_eq!(comps.iter().filter(|c| !c.bounded).count(), 1);
    }

    #[test]
    fn row_of_squares_quotient() {
        let s = build_subdivision(&[sq(0, 0)], Some(&Point::int(1, 0))).unwrap();
        let comps = complement_components(&s);
        assert_eq!(comps.len(), 2);
        assert!(comps.iter().all(|c| !c.bounded));
        let a = comps.iter().position(|c| c.touches_top).unwrap();
        let b = comps.iter().position(|c| c.touches_bottom).unwrap();
        assert_ne!(a, b);
        assert!(min_separation_positive(&s, &comps, a, b));
    }

    #[test]
    fn alternating_row_keeps_two_components() {
        let h = Scalar::ratio(1, 2);
        let regions = [sq(0, 0), rect(Scalar::ONE, h, Scalar::ONE, Scalar::ONE)];
        let s = build_subdivision(&regions, Some(&Point::int(2, 0))).unwrap();
        let comps = complement_components(&s);
        assert_eq!(comps.len(), 2);
    }

    #[test]
    fn diagonal_chain_is_pinched() {
        let regions = [sq(0, 0), sq(1, 1)];
        let s = build_subdivision(&regions, Some(&Point::int(2, 0))).unwrap();
        let comps = complement_components(&s);
        assert_eq!(comps.len(), 2);
        let a = comps.iter().position(|c| c.touches_top).unwrap();
        let b = comps.iter().position(|c| c.touches_bottom).unwrap();
        assert!(!min_separation_positive(&s, &comps, a, b));
    }

    #[test]
    fn stacked_rows_are_separated() {
        let regions = [sq(0, 0), sq(0, 1)];
        let s = build_subdivision(&regions, Some(&Point::int(1, 0))).unwrap();
        let comps = complement_components(&s);
        assert_eq!(comps.len(), 2);
        assert!(min_separation_positive(&s, &comps, 0, 1));
    }

    #[test]
    fn gap_between_columns_wraps() {
        // two rows with a tunnel between them running along the period
        let regions = [sq(0, 0), sq(0, 2)];
        let s = build_subdivision(&regions, Some(&Point::int(1, 0))).unwrap();
        let comps = complement_components(&s);
        assert_eq!(comps.len(), 3);
        assert_eq!(comps.iter().filter(|c| c.wraps && !c.touches_top && !c.touches_bottom).count(), 1);
    }

    #[test]
    fn diagonal_period() {
        let s = build_subdivision(&[sq(0, 0)], Some(&Point::int(1, 1))).unwrap();
        let comps = complement_components(&s);
        assert_eq!(comps.len(), 2);
        let a = comps.iter().position(|c| c.touches_top).unwrap();
        let b = comps.iter().position(|c| c.touches_bottom).unwrap();
        assert!(!min_separation_positive(&s, &comps, a, b));
    }
}
