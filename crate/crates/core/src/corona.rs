//! Corona search around a central copy, independent witness checks, and the
//! bridge from corona impossibility to wall thickness upper bounds.

use alloc::collections::VecDeque;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use hashbrown::HashMap;
use num_traits::Float;

use crate::contact::SymmetryOptions;
use crate::exact::{Isometry, Point, Scalar, Vector};
use crate::geom::{build_subdivision, enclosed_regions, interiors_intersect, on_segment, segments_touch, Region, Segment};
use crate::layout::{ContactIndex, Layout};
use crate::shape::RealizedShape;
use crate::wall::{find_wall, verify_thickness, ThicknessCertificate, WallBounds, WallOutcome};

/// A central copy plus surrounding layers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoronaWitness {
    pub center: Isometry,
    pub layers: Vec<Vec<Isometry>>,
}

impl CoronaWitness {
    pub fn depth(&self) -> usize {
        self.layers.len()
    }

    pub fn unit_count(&self) -> usize {
        1 + self.layers.iter().map(Vec::len).sum::<usize>()
    }

    /// Center followed by every layer, in order.
    pub fn all_units(&self) -> Vec<Isometry> {
        let mut out = vec![self.center.clone()];
        for l in &self.layers {
            out.extend(l.iter().cloned());
        }
        out
    }
}

/// Size of the largest branching sets tracked individually.
pub const BRANCHING_BUCKETS: usize = 32;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoronaStats {
    pub branches: usize,
    pub nodes: u64,
    /// `branching[k]`: nodes whose branching set had `k` members (the last bucket collects larger sets).
    pub branching: Vec<u64>,
    /// Layers completed per depth (index 0 is layer 1).
    pub layers_completed: Vec<u64>,
    pub cavities_rejected: u64,
    pub cancelled: bool,
    pub node_limit_hit: bool,
}

impl Default for CoronaStats {
    fn default() -> Self {
        CoronaStats {
            branches: 0,
            nodes: 0,
            branching: vec![0; BRANCHING_BUCKETS],
            layers_completed: Vec::new(),
            cavities_rejected: 0,
            cancelled: false,
            node_limit_hit: false,
        }
    }
}

impl CoronaStats {
    pub fn merge(&mut self, o: &CoronaStats) {
        self.branches += o.branches;
        self.nodes += o.nodes;
        for (a, b) in self.branching.iter_mut().zip(&o.branching) {
            *a += b;
        }
        if self.layers_completed.len() < o.layers_completed.len() {
            self.layers_completed.resize(o.layers_completed.len(), 0);
        }
        for (a, b) in self.layers_completed.iter_mut().zip(&o.layers_completed) {
            *a += b;
        }
        self.cavities_rejected += o.cavities_rejected;
        self.cancelled |= o.cancelled;
        self.node_limit_hit |= o.node_limit_hit;
    }

    fn record_branching(&mut self, k: usize) {
        self.branching[k.min(BRANCHING_BUCKETS - 1)] += 1;
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoronaOutcome {
    Witness(CoronaWitness),
    /// Every branch was explored or pruned.
    Exhausted(CoronaStats),
    /// Stopped early (node limit or cancellation); no claim either way.
    Unknown(CoronaStats),
    /// The independent check rejected a configuration the search accepted.
    Inconsistent(CoronaWitness),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurroundResult {
    pub layers_requested: usize,
    pub symmetry: SymmetryOptions,
    pub outcome: CoronaOutcome,
}

impl SurroundResult {
    pub fn witness(&self) -> Option<&CoronaWitness> {
        match &self.outcome {
            CoronaOutcome::Witness(w) => Some(w),
            _ => None,
        }
    }

    pub fn is_exhausted(&self) -> bool {
        matches!(self.outcome, CoronaOutcome::Exhausted(_))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct CoronaOptions {
    pub symmetry: SymmetryOptions,
    pub node_limit: Option<u64>,
}

/// Backtracking search for `n` layers around a copy at the identity.
///
/// Each step covers the most constrained open stretch of boundary of an inner
/// copy. Once every inner stretch is covered, vertices of the inner union where
/// the surrounding copies leave an angular gap are closed next.
pub struct CoronaSearch<'a> {
    pub shape: &'a RealizedShape,
    pub index: &'a ContactIndex,
    pub n: usize,
    pub opts: CoronaOptions,
    roots: Vec<Isometry>,
}

struct SearchState<'b> {
    stats: CoronaStats,
    cancel: &'b dyn Fn() -> bool,
    found: Option<CoronaOutcome>,
}

impl SearchState<'_> {
    fn stop(&mut self, limit: Option<u64>) -> bool {
        if self.found.is_some() {
            return true;
        }
        if (self.cancel)() {
            self.stats.cancelled = true;
            return true;
        }
        if limit.map_or(false, |l| self.stats.nodes >= l) {
            self.stats.node_limit_hit = true;
            return true;
        }
        false
    }
}

/// A sector of a copy at a point of its boundary: the copy occupies the
/// directions from `start` counter-clockwise to `end`.
struct Sector {
    unit: usize,
    start: Vector,
    end: Vector,
    incoming: Vector,
}

fn same_dir(a: &Vector, b: &Vector) -> bool {
    a.cross(b).is_zero() && a.dot(b).is_positive()
}

fn sector_at(unit: usize, edges: &[Segment], v: &Point) -> Option<Sector> {
    let mut inc = None;
    let mut out = None;
    for e in edges {
        if e.b == *v {
            inc = Some(e.dir());
        } else if e.a == *v {
            out = Some(e.dir());
        } else if on_segment(&e.a, &e.b, v) {
            let d = e.dir();
            return Some(Sector { unit, start: d.clone(), end: -&d, incoming: d });
        }
    }
    match (inc, out) {
        (Some(i), Some(o)) => Some(Sector { unit, start: o, end: -&i, incoming: i }),
        _ => None,
    }
}

impl<'a> CoronaSearch<'a> {
    pub fn new(shape: &'a RealizedShape, index: &'a ContactIndex, n: usize, opts: CoronaOptions) -> CoronaSearch<'a> {
        let mut search = CoronaSearch { shape, index, n, opts, roots: Vec::new() };
        if n >= 1 {
            let mut layout = Layout::new(shape, index, None);
            layout.place(Isometry::identity(), 0);
            search.roots = search.choose(&mut layout, 1).unwrap_or_default();
        }
        search
    }

    pub fn branch_count(&self) -> usize {
        self.roots.len()
    }

    pub fn run_branch(&self, b: usize, cancel: &dyn Fn() -> bool) -> (Option<CoronaOutcome>, CoronaStats) {
        let mut st = SearchState { stats: CoronaStats { branches: 1, ..Default::default() }, cancel, found: None };
        let mut layout = Layout::new(self.shape, self.index, None);
        layout.place(Isometry::identity(), 0);
        st.stats.nodes += 1;
        layout.place(self.roots[b].clone(), 1);
        self.grow(&mut layout, 1, &mut st);
        (st.found, st.stats)
    }

    /// Runs every branch in order; the first witness wins.
    pub fn run(&self) -> SurroundResult {
        let mut stats = CoronaStats::default();
        let never = || false;
        for b in 0..self.branch_count() {
            let (found, s) = self.run_branch(b, &never);
            stats.merge(&s);
            if let Some(o) = found {
                return self.result(o);
            }
        }
        self.exhausted(stats)
    }

    /// Outcome once every branch reported without success.
    pub fn exhausted(&self, mut stats: CoronaStats) -> SurroundResult {
        stats.record_branching(self.roots.len());
        let outcome = if stats.cancelled || stats.node_limit_hit { CoronaOutcome::Unknown(stats) } else { CoronaOutcome::Exhausted(stats) };
        self.result(outcome)
    }

    pub fn result(&self, outcome: CoronaOutcome) -> SurroundResult {
        SurroundResult { layers_requested: self.n, symmetry: self.index.table.opts, outcome }
    }

    /// Branching set for the next step at `layer`, or `None` when the layer is closed.
    fn choose(&self, layout: &mut Layout, layer: usize) -> Option<Vec<Isometry>> {
        let mut targets: Vec<(usize, Point, Vector, bool)> = Vec::new();
        for (i, u) in layout.units.iter().enumerate() {
            if u.layer < layer {
                targets.extend(u.frontier.iter().map(|f| (i, f.a.clone(), f.dir(), true)));
            }
        }
        if targets.is_empty() {
            targets = self.gaps(layout, layer);
        }
        if targets.is_empty() {
            return None;
        }
        let mut best: Option<Vec<Isometry>> = None;
        for (owner, q, d, fwd) in &targets {
            let mut ok = Vec::new();
            for g in layout.candidates_for(*owner, q, d, *fwd) {
                if layout.fits(&g, None) {
                    ok.push(g);
                }
            }
            if best.as_ref().map_or(true, |b| ok.len() < b.len()) {
                let empty = ok.is_empty();
                best = Some(ok);
                if empty {
                    break;
                }
            }
        }
        best
    }

    /// Angular gaps at points of the inner union's boundary, as backward
    /// covering targets on the copy whose sector ends at the gap.
    fn gaps(&self, layout: &Layout, layer: usize) -> Vec<(usize, Point, Vector, bool)> {
        let edges: Vec<Vec<Segment>> =
            layout.units.iter().map(|u| self.shape.region.transformed(&u.pose).filled().boundary_edges()).collect();
        let mut points: Vec<Point> = Vec::new();
        for unit_edges in &edges {
            for e in unit_edges {
                let v = &e.a;
                let on_inner = layout
                    .units
                    .iter()
                    .enumerate()
                    .any(|(j, w)| w.layer < layer && edges[j].iter().any(|f| on_segment(&f.a, &f.b, v)));
                if on_inner {
                    points.push(v.clone());
                }
            }
        }
        points.sort();
        points.dedup();
        let mut out = Vec::new();
        for v in points {
            let sectors: Vec<Sector> = (0..edges.len()).filter_map(|i| sector_at(i, &edges[i], &v)).collect();
            for s in &sectors {
                if !sectors.iter().any(|t| same_dir(&t.start, &s.end)) {
                    out.push((s.unit, v.clone(), s.incoming.clone(), false));
                }
            }
        }
        out
    }

    fn grow(&self, layout: &mut Layout, layer: usize, st: &mut SearchState) {
        if st.stop(self.opts.node_limit) {
            return;
        }
        let Some(cands) = self.choose(layout, layer) else {
            self.complete_layer(layout, layer, st);
            return;
        };
        st.stats.record_branching(cands.len());
        for g in cands {
            st.stats.nodes += 1;
            layout.place(g, layer);
            self.grow(layout, layer, st);
            layout.unplace();
            if st.stop(self.opts.node_limit) {
                return;
            }
        }
    }

    fn complete_layer(&self, layout: &mut Layout, layer: usize, st: &mut SearchState) {
        let regions: Vec<Region> = layout.units.iter().map(|u| self.shape.region.transformed(&u.pose).filled()).collect();
        if cavity_count(&regions) > 0 {
            st.stats.cavities_rejected += 1;
            return;
        }
        if st.stats.layers_completed.len() < layer {
            st.stats.layers_completed.resize(layer, 0);
        }
        st.stats.layers_completed[layer - 1] += 1;
        if layer < self.n {
            self.grow(layout, layer + 1, st);
            return;
        }
        let mut layers = vec![Vec::new(); self.n];
        for u in &layout.units[1..] {
            layers[u.layer - 1].push(u.pose.clone());
        }
        let w = CoronaWitness { center: Isometry::identity(), layers };
        st.found = Some(if verify_witness(self.shape, &w).is_valid() { CoronaOutcome::Witness(w) } else { CoronaOutcome::Inconsistent(w) });
    }
}

/// Bounded faces of the arrangement covered by no region.
fn cavity_count(regions: &[Region]) -> usize {
    match build_subdivision(regions, None) {
        Ok(s) => s.faces.iter().filter(|f| f.bounded && f.covered_by.is_empty()).count(),
        Err(_) => usize::MAX,
    }
}

/// Sequential corona search; see [`CoronaSearch`].
pub fn surround(shape: &RealizedShape, n: usize, opts: CoronaOptions) -> SurroundResult {
    let index = ContactIndex::new(shape, opts.symmetry);
    CoronaSearch::new(shape, &index, n, opts).run()
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct WitnessReport {
    pub layers: usize,
    pub overlap: Option<(usize, usize)>,
    pub empty_layer: Option<usize>,
    /// First layer whose union leaves uncovered plane touching the blob inside it.
    pub not_surrounding: Option<usize>,
    pub cavities: Vec<usize>,
}

impl WitnessReport {
    /// A witness without layers is the trivial statement that a copy exists.
    pub fn is_valid(&self) -> bool {
        self.overlap.is_none() && self.empty_layer.is_none() && self.not_surrounding.is_none() && self.cavities.iter().all(|&c| c == 0)
    }
}

/// Rechecks a witness from scratch with planar arrangements. A copy's own hole
/// counts as covered: it is neither a cavity nor boundary to be surrounded.
pub fn verify_witness(shape: &RealizedShape, w: &CoronaWitness) -> WitnessReport {
    let mut rep = WitnessReport { layers: w.layers.len(), ..Default::default() };
    let units = w.all_units();
    let regions: Vec<Region> = units.iter().map(|g| shape.region.transformed(g)).collect();
    'outer: for i in 0..regions.len() {
        for j in i + 1..regions.len() {
            if regions[i].bbox().overlaps(&regions[j].bbox()) && interiors_intersect(&regions[i], &regions[j]) {
                rep.overlap = Some((i, j));
                break 'outer;
            }
        }
    }
    if rep.overlap.is_some() {
        return rep;
    }
    let mut inner = 1;
    for (k, layer) in w.layers.iter().enumerate() {
        if layer.is_empty() {
            rep.empty_layer = Some(k + 1);
            return rep;
        }
        let total = inner + layer.len();
        let filled: Vec<Region> = regions[..total].iter().map(Region::filled).collect();
        let Ok(sub) = build_subdivision(&filled, None) else {
            rep.not_surrounding = Some(k + 1);
            return rep;
        };
        rep.cavities.push(sub.faces.iter().filter(|f| f.bounded && f.covered_by.is_empty()).count());
        for v in 0..sub.vertices.len() {
            let mut touches_inner = false;
            let mut touches_free = false;
            for &h in sub.outgoing(v) {
                for f in [sub.half_edges[h].face, sub.half_edges[h ^ 1].face] {
                    let cov = &sub.faces[f].covered_by;
                    touches_inner |= cov.iter().any(|&r| r < inner);
                    touches_free |= cov.is_empty();
                }
            }
            if touches_inner && touches_free {
                rep.not_surrounding = Some(k + 1);
                return rep;
            }
        }
        inner = total;
    }
    rep
}

/// Largest thickness a shape with Heesch number `h` can reach: a wall of
/// thickness `2n + 1` surrounds its middle copies with `n` layers.
pub fn thickness_upper_bound(h: usize) -> usize {
    2 * h + 2
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExtractError {
    EvenThickness(usize),
    BadUnit { unit: usize, class: usize },
    InvalidCertificate,
    /// The wall is valid but the layers built from it are not a corona.
    Falsified { witness: CoronaWitness, report: WitnessReport },
}

impl fmt::Display for ExtractError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtractError::EvenThickness(t) => write!(f, "thickness {t} is even"),
            ExtractError::BadUnit { unit, class } => write!(f, "unit {unit} is in class {class}, not the middle class"),
            ExtractError::InvalidCertificate => write!(f, "certificate does not verify"),
            ExtractError::Falsified { report, .. } => write!(f, "extracted layers are not a corona: {report:?}"),
        }
    }
}

fn regions_touch(a: &Region, b: &Region) -> bool {
    if !a.bbox().overlaps(&b.bbox()) {
        return false;
    }
    let ea = a.boundary_edges();
    let eb = b.boundary_edges();
    ea.iter().any(|e| eb.iter().any(|f| segments_touch(&e.a, &e.b, &f.a, &f.b)))
}

/// Builds `n` layers around unit `u` of a wall of thickness `2n + 1` whose class
/// is `n + 1`: layer `k` holds the copies `k` touching steps away, plus any copy
/// enclosed by the union so far.
pub fn extract_coronas_from_wall(shape: &RealizedShape, tc: &ThicknessCertificate, u: usize) -> Result<CoronaWitness, ExtractError> {
    let t = tc.thickness();
    if t % 2 == 0 {
        return Err(ExtractError::EvenThickness(t));
    }
    let n = (t - 1) / 2;
    if tc.classes.get(u) != Some(&(n + 1)) {
        return Err(ExtractError::BadUnit { unit: u, class: tc.classes.get(u).copied().unwrap_or(0) });
    }
    match verify_thickness(shape, tc) {
        Ok(r) if r.is_valid() => {}
        _ => return Err(ExtractError::InvalidCertificate),
    }
    let p = &tc.config.period;
    let units = &tc.config.units;
    let base: Vec<Region> = units.iter().map(|g| shape.region.transformed(g)).collect();
    let place = |(i, m): (usize, i64)| -> Isometry { units[i].translated(&p.scale(&Scalar::int(m))) };

    // touching neighbours of each fundamental unit, as (j, shift)
    let (px, py) = p.to_f64();
    let pl = Float::sqrt(px * px + py * py);
    let diam = Float::sqrt(shape.region.diameter2().to_f64());
    let mut span = 0.0f64;
    for a in &base {
        for b in &base {
            let (ax, ay) = a.outer().vertices()[0].to_f64();
            let (bx, by) = b.outer().vertices()[0].to_f64();
            span = span.max((((bx - ax) * px + (by - ay) * py) / pl).abs());
        }
    }
    let reach = ((span + 2.0 * diam) / pl) as i64 + 2;
    let mut adj: Vec<Vec<(usize, i64)>> = vec![Vec::new(); units.len()];
    for i in 0..units.len() {
        for j in 0..units.len() {
            for m in -reach..=reach {
                if i == j && m == 0 {
                    continue;
                }
                if regions_touch(&base[i], &base[j].translated(&p.scale(&Scalar::int(m)))) {
                    adj[i].push((j, m));
                }
            }
        }
    }

    // breadth-first distances far enough out to catch enclosed copies
    let mut dist: HashMap<(usize, i64), usize> = HashMap::new();
    let mut queue = VecDeque::new();
    dist.insert((u, 0), 0);
    queue.push_back((u, 0i64));
    let horizon = n + 2;
    while let Some((i, m)) = queue.pop_front() {
        let d = dist[&(i, m)];
        if d == horizon {
            continue;
        }
        for &(j, dm) in &adj[i] {
            let key = (j, m + dm);
            if !dist.contains_key(&key) {
                dist.insert(key, d + 1);
                queue.push_back(key);
            }
        }
    }
    let mut level: Vec<((usize, i64), usize)> = dist.into_iter().collect();
    level.sort();
    for k in 1..=n {
        loop {
            let blob: Vec<Region> =
                level.iter().filter(|(_, d)| *d <= k).map(|(key, _)| shape.region.transformed(&place(*key)).filled()).collect();
            let rest: Vec<usize> = (0..level.len()).filter(|&i| level[i].1 > k).collect();
            let others: Vec<Region> = rest.iter().map(|&i| shape.region.transformed(&place(level[i].0))).collect();
            let enclosed = enclosed_regions(&blob, &others);
            if enclosed.is_empty() {
                break;
            }
            for e in enclosed {
                level[rest[e]].1 = k;
            }
        }
    }
    let mut layers = vec![Vec::new(); n];
    for (key, d) in &level {
        if (1..=n).contains(d) {
            layers[d - 1].push(place(*key));
        }
    }
    for l in &mut layers {
        l.sort_by(|a, b| a.canonical_cmp(b));
    }
    let w = CoronaWitness { center: place((u, 0)), layers };
    let report = verify_witness(shape, &w);
    if report.is_valid() {
        Ok(w)
    } else {
        Err(ExtractError::Falsified { witness: w, report })
    }
}

/// Limits for [`thickness_number`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThicknessBounds {
    pub wall: WallBounds,
    pub thickness_cap: usize,
    pub corona_cap: usize,
    pub corona_node_limit: Option<u64>,
}

impl Default for ThicknessBounds {
    fn default() -> Self {
        ThicknessBounds { wall: WallBounds::default(), thickness_cap: 8, corona_cap: 3, corona_node_limit: None }
    }
}

/// Bracket on the thickness number with the runs behind it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThicknessNumber {
    pub lo: usize,
    pub hi: Option<usize>,
    /// Largest `n` with an `n`-layer witness, when the next depth was exhausted.
    pub heesch: Option<usize>,
    pub bounds: ThicknessBounds,
    pub walls: Vec<(usize, WallOutcome)>,
    pub coronas: Vec<SurroundResult>,
    /// Depth `n` whose corona search was exhausted although a wall of thickness
    /// `2n + 1` was found; the placement model missed a corona.
    pub bound_conflict: Option<usize>,
}

impl ThicknessNumber {
    pub fn is_proved(&self) -> bool {
        self.bound_conflict.is_none() && self.hi == Some(self.lo)
    }

    pub fn best_certificate(&self) -> Option<&ThicknessCertificate> {
        self.walls.iter().rev().find_map(|(_, o)| match o {
            WallOutcome::Found(tc) => Some(tc),
            _ => None,
        })
    }

    /// Human-readable verdict lines.
    pub fn verdict(&self) -> Vec<String> {
        let mut out = Vec::new();
        if let Some(n) = self.bound_conflict {
            out.push(format!("inconsistent: a wall of thickness {} exists but {n} layers were exhausted", self.lo));
        }
        if self.is_proved() {
            out.push(format!("thickness number = {} (proved: wall certificate + corona exhaustion)", self.lo));
            return out;
        }
        let capped = self.lo >= self.bounds.thickness_cap;
        if capped {
            out.push(format!("≥{} (cap reached); shape may tile", self.bounds.thickness_cap));
        } else if self.walls.iter().any(|(_, o)| matches!(o, WallOutcome::Infeasible { .. })) {
            out.push(format!("≥{}; ≤{} impossible within bounds K={}", self.lo, self.lo + 1, self.bounds.wall.max_units));
        } else {
            out.push(format!("≥{}", self.lo));
        }
        if let (Some(hi), Some(h)) = (self.hi, self.heesch) {
            out.push(format!("≤{hi} (corona h={h})"));
        }
        out
    }
}

/// [`thickness_number`] with caller-supplied wall and corona drivers.
pub fn thickness_number_with(
    bounds: &ThicknessBounds,
    mut wall: impl FnMut(usize) -> WallOutcome,
    mut corona: impl FnMut(usize) -> SurroundResult,
) -> ThicknessNumber {
    let mut res =
        ThicknessNumber { lo: 0, hi: None, heesch: None, bounds: bounds.clone(), walls: Vec::new(), coronas: Vec::new(), bound_conflict: None };
    let mut h = 0;
    for n in 1..=bounds.corona_cap {
        let r = corona(n);
        let (witness, exhausted) = (r.witness().is_some(), r.is_exhausted());
        res.coronas.push(r);
        if witness {
            h = n;
        } else {
            if exhausted {
                res.heesch = Some(h);
                res.hi = Some(thickness_upper_bound(h));
            }
            break;
        }
    }
    let cap = res.hi.map_or(bounds.thickness_cap, |hi| hi.min(bounds.thickness_cap));
    let mut t = 1;
    while t <= cap {
        let o = wall(t);
        let next = match &o {
            WallOutcome::Found(tc) => {
                res.lo = res.lo.max(tc.thickness());
                res.lo + 1
            }
            _ => cap + 1,
        };
        res.walls.push((t, o));
        t = next.max(t + 1);
    }
    res.bound_conflict = res.coronas.iter().find(|c| c.is_exhausted() && 2 * c.layers_requested + 1 <= res.lo).map(|c| c.layers_requested);
    res
}

/// Brackets the thickness number: walls found give the lower end, corona
/// exhaustion gives the upper end.
pub fn thickness_number(shape: &RealizedShape, bounds: &ThicknessBounds, symmetry: SymmetryOptions) -> ThicknessNumber {
    let index = ContactIndex::new(shape, symmetry);
    let copts = CoronaOptions { symmetry, node_limit: bounds.corona_node_limit };
    thickness_number_with(
        bounds,
        |t| find_wall(shape, t, &bounds.wall, symmetry),
        |n| CoronaSearch::new(shape, &index, n, copts).run(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Polygon;
    use crate::wall::StripConfig;

    fn square() -> RealizedShape {
        RealizedShape::from_region(
            "square",
            Region::simple(Polygon::new(vec![Point::int(0, 0), Point::int(1, 0), Point::int(1, 1), Point::int(0, 1)]).unwrap()),
        )
    }

    fn tr(x: i64, y: i64) -> Isometry {
        Isometry::translation(Point::int(x, y))
    }

    #[test]
    fn square_has_two_coronas() {
        let s = square();
        let r = surround(&s, 2, CoronaOptions::default());
        let w = r.witness().expect("squares tile");
        assert!(verify_witness(&s, w).is_valid());
        assert!(w.layers[0].len() >= 8);
    }

    #[test]
    fn missing_corner_is_not_a_corona() {
        let s = square();
        let mut layer: Vec<Isometry> = Vec::new();
        for x in -1..=1 {
            for y in -1..=1 {
                if (x, y) != (0, 0) && (x, y) != (1, 1) {
                    layer.push(tr(x, y));
                }
            }
        }
        let w = CoronaWitness { center: Isometry::identity(), layers: vec![layer.clone()] };
        assert_eq!(verify_witness(&s, &w).not_surrounding, Some(1));
        layer.push(tr(1, 1));
        let w = CoronaWitness { center: Isometry::identity(), layers: vec![layer] };
        assert!(verify_witness(&s, &w).is_valid());
    }

    #[test]
    fn upper_bound_arithmetic() {
        assert_eq!(thickness_upper_bound(0), 2);
        assert_eq!(thickness_upper_bound(1), 4);
        assert_eq!(thickness_upper_bound(2), 6);
    }

    fn rows(k: i64) -> ThicknessCertificate {
        let units = (0..k).map(|y| tr(0, y)).collect();
        ThicknessCertificate { config: StripConfig { units, period: Point::int(1, 0) }, classes: (1..=k as usize).collect() }
    }

    #[test]
    fn extraction_from_stacked_rows() {
        let s = square();
        let w = extract_coronas_from_wall(&s, &rows(3), 1).unwrap();
        assert_eq!(w.layers.len(), 1);
        assert_eq!(w.layers[0].len(), 8);
        let w = extract_coronas_from_wall(&s, &rows(5), 2).unwrap();
        assert_eq!(w.layers.len(), 2);
        assert_eq!(w.layers[1].len(), 16);
        let w = extract_coronas_from_wall(&s, &rows(1), 0).unwrap();
        assert!(w.layers.is_empty());
        assert!(matches!(extract_coronas_from_wall(&s, &rows(4), 1), Err(ExtractError::EvenThickness(4))));
        assert!(matches!(extract_coronas_from_wall(&s, &rows(3), 0), Err(ExtractError::BadUnit { .. })));
    }

    #[test]
    fn square_thickness_reaches_cap() {
        let s = square();
        let b = ThicknessBounds { wall: WallBounds { max_units: 4, max_width: 6 }, thickness_cap: 3, corona_cap: 1, corona_node_limit: None };
        let r = thickness_number(&s, &b, SymmetryOptions::translations_only());
        assert_eq!(r.lo, 3);
        assert_eq!(r.hi, None);
        assert_eq!(r.verdict(), vec![String::from("≥3 (cap reached); shape may tile")]);
    }
}
