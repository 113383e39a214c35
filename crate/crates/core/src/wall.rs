//! Periodic walls: verification, thickness certificates and bounded search.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use hashbrown::HashSet;

use crate::contact::{Relations, SymmetryOptions};
use crate::exact::{Isometry, Point, Scalar, Vector};
use crate::geom::{
    build_subdivision, complement_components, min_separation_positive, on_segment, shared_boundary,
    ComplementComponent, GeomError, Region, Segment, Subdivision,
};
use crate::layout::{ContactIndex, Layout};
use crate::shape::RealizedShape;

/// Fundamental-domain copies of one shape plus the period that repeats them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StripConfig {
    pub units: Vec<Isometry>,
    pub period: Vector,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct WallReport {
    pub connected: bool,
    pub complement_count: usize,
    pub cavities: usize,
    pub separated: bool,
}

impl WallReport {
    pub fn is_wall(&self) -> bool {
        self.connected && self.complement_count == 2 && self.cavities == 0 && self.separated
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WallCertificate {
    pub config: StripConfig,
    pub report: WallReport,
}

impl WallCertificate {
    pub fn is_valid(&self) -> bool {
        self.report.is_wall()
    }
}

/// A wall split into ordered classes `1..=t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThicknessCertificate {
    pub config: StripConfig,
    pub classes: Vec<usize>,
}

impl ThicknessCertificate {
    pub fn thickness(&self) -> usize {
        self.classes.iter().copied().max().unwrap_or(0)
    }

    pub fn class(&self, c: usize) -> StripConfig {
        let units = self.config.units.iter().zip(&self.classes).filter(|(_, k)| **k == c).map(|(u, _)| u.clone()).collect();
        StripConfig { units, period: self.config.period.clone() }
    }

    /// Consecutive classes `lo..=hi` relabelled from 1.
    pub fn restrict(&self, lo: usize, hi: usize) -> ThicknessCertificate {
        let mut units = Vec::new();
        let mut classes = Vec::new();
        for (u, &k) in self.config.units.iter().zip(&self.classes) {
            if (lo..=hi).contains(&k) {
                units.push(u.clone());
                classes.push(k - lo + 1);
            }
        }
        ThicknessCertificate { config: StripConfig { units, period: self.config.period.clone() }, classes }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WallError {
    Empty,
    ZeroPeriod,
    /// Unit `a` overlaps unit `b` shifted by `shift` periods.
    Overlap { a: usize, b: usize, shift: i64 },
    BadClasses,
    TooManyUnits,
    Geom(GeomError),
}

impl fmt::Display for WallError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WallError::Empty => write!(f, "configuration has no units"),
            WallError::ZeroPeriod => write!(f, "period is zero"),
            WallError::Overlap { a, b, shift } => write!(f, "unit {a} overlaps unit {b} shifted by {shift} periods"),
            WallError::BadClasses => write!(f, "class labels must be 1..t with every class used"),
            WallError::TooManyUnits => write!(f, "too many units for an exhaustive decomposition"),
            WallError::Geom(e) => write!(f, "{e}"),
        }
    }
}

impl From<GeomError> for WallError {
    fn from(e: GeomError) -> Self {
        WallError::Geom(e)
    }
}

fn s_range(r: &Region, p: &Vector) -> (Scalar, Scalar) {
    let mut it = r.all_vertices().map(|v| v.dot(p));
    let first = it.next().expect("vertices");
    it.fold((first.clone(), first), |(lo, hi), s| (lo.min(s.clone()), hi.max(s)))
}

/// Shifts `m` for which `b + m·p` can touch `a`, given their projections on `p`.
fn touching_shifts(a: &(Scalar, Scalar), b: &(Scalar, Scalar), l2: &Scalar) -> core::ops::RangeInclusive<i64> {
    let lo = -(&b.1 - &a.0).checked_div(l2).expect("nonzero").floor();
    let hi = (&a.1 - &b.0).checked_div(l2).expect("nonzero").floor();
    lo..=hi
}

/// Pairwise relations of a periodic configuration, computed directly from geometry.
pub(crate) struct PeriodicPairs {
    pub regions: Vec<Region>,
    /// `(i, j, m)`: unit `i` shares positive-length boundary with unit `j` shifted by `m` periods.
    pub contacts: Vec<(usize, usize, i64)>,
}

pub(crate) fn periodic_pairs(shape: &RealizedShape, c: &StripConfig) -> Result<PeriodicPairs, WallError> {
    if c.units.is_empty() {
        return Err(WallError::Empty);
    }
    if c.period.is_zero() {
        return Err(WallError::ZeroPeriod);
    }
    let p = &c.period;
    let l2 = p.norm2();
    let regions: Vec<Region> = c.units.iter().map(|g| shape.region.transformed(g)).collect();
    let ranges: Vec<(Scalar, Scalar)> = regions.iter().map(|r| s_range(r, p)).collect();
    let mut contacts = Vec::new();
    for i in 0..regions.len() {
        for j in i..regions.len() {
            for m in touching_shifts(&ranges[i], &ranges[j], &l2) {
                if i == j && m <= 0 {
                    continue;
                }
                let other = regions[j].translated(&p.scale(&Scalar::int(m)));
                match shared_boundary(&regions[i], &other) {
                    Err(_) => return Err(WallError::Overlap { a: i, b: j, shift: m }),
                    Ok(segs) if !segs.is_empty() => contacts.push((i, j, m)),
                    Ok(_) => {}
                }
            }
        }
    }
    Ok(PeriodicPairs { regions, contacts })
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Is the infinite contact graph connected? The quotient graph must be
/// connected and its cycle shifts must generate all period multiples.
pub(crate) fn lift_connected(n: usize, contacts: &[(usize, usize, i64)]) -> bool {
    let mut pot: Vec<Option<i64>> = vec![None; n];
    let mut adj: Vec<Vec<(usize, i64)>> = vec![Vec::new(); n];
    for &(i, j, m) in contacts {
        adj[i].push((j, m));
        adj[j].push((i, -m));
    }
    pot[0] = Some(0);
    let mut stack = vec![0usize];
    let mut g = 0i64;
    while let Some(i) = stack.pop() {
        let pi = pot[i].expect("visited");
        for &(j, m) in &adj[i] {
            match pot[j] {
                None => {
                    pot[j] = Some(pi + m);
                    stack.push(j);
                }
                Some(pj) => g = gcd(g, pi + m - pj),
            }
        }
    }
    pot.iter().all(|p| p.is_some()) && g == 1
}

fn report_from(sub: &Subdivision, comps: &[ComplementComponent], connected: bool) -> WallReport {
    let cavities = comps.iter().filter(|c| c.bounded).count();
    let tops: Vec<usize> = (0..comps.len()).filter(|&i| comps[i].touches_top).collect();
    let bottoms: Vec<usize> = (0..comps.len()).filter(|&i| comps[i].touches_bottom).collect();
    let separated = tops.len() == 1
        && bottoms.len() == 1
        && tops[0] != bottoms[0]
        && min_separation_positive(sub, comps, tops[0], bottoms[0]);
    WallReport { connected, complement_count: comps.len(), cavities, separated }
}

/// Verifies the wall conditions for a periodic configuration.
pub fn verify_wall(shape: &RealizedShape, c: &StripConfig) -> Result<WallCertificate, WallError> {
    let pairs = periodic_pairs(shape, c)?;
    let connected = lift_connected(c.units.len(), &pairs.contacts);
    // a copy's own hole is not a gap between copies
    let base: Vec<Region> = pairs.regions.iter().map(Region::filled).collect();
    let sub = build_subdivision(&base, Some(&c.period))?;
    let comps = complement_components(&sub);
    let report = report_from(&sub, &comps, connected);
    Ok(WallCertificate { config: c.clone(), report })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThicknessReport {
    pub union: WallReport,
    pub classes: Vec<WallReport>,
    pub consecutive_share: bool,
    pub nonconsecutive_clear: bool,
}

impl ThicknessReport {
    pub fn is_valid(&self) -> bool {
        self.union.is_wall() && self.classes.iter().all(|r| r.is_wall()) && self.consecutive_share && self.nonconsecutive_clear
    }
}

fn classes_ok(classes: &[usize], n: usize) -> Option<usize> {
    if classes.len() != n {
        return None;
    }
    let t = classes.iter().copied().max()?;
    if classes.contains(&0) || (1..=t).any(|k| !classes.contains(&k)) {
        return None;
    }
    Some(t)
}

/// Checks every thickness-certificate condition.
pub fn verify_thickness(shape: &RealizedShape, tc: &ThicknessCertificate) -> Result<ThicknessReport, WallError> {
    let t = classes_ok(&tc.classes, tc.config.units.len()).ok_or(WallError::BadClasses)?;
    let pairs = periodic_pairs(shape, &tc.config)?;
    let union = verify_wall(shape, &tc.config)?.report;
    let mut classes = Vec::with_capacity(t);
    for k in 1..=t {
        classes.push(verify_wall(shape, &tc.class(k))?.report);
    }
    let mut share = vec![vec![false; t + 1]; t + 1];
    for &(i, j, _) in &pairs.contacts {
        let (a, b) = (tc.classes[i], tc.classes[j]);
        share[a][b] = true;
        share[b][a] = true;
    }
    let consecutive_share = (1..t).all(|k| share[k][k + 1]);
    let nonconsecutive_clear = (1..=t).all(|a| (a + 2..=t).all(|b| !share[a][b]));
    Ok(ThicknessReport { union, classes, consecutive_share, nonconsecutive_clear })
}

/// Largest `t <= cap` such that the units split into `t` ordered classes
/// forming a thickness certificate.
pub fn max_decomposition(shape: &RealizedShape, w: &StripConfig, cap: usize) -> Result<usize, WallError> {
    let n = w.units.len();
    if n > 16 {
        return Err(WallError::TooManyUnits);
    }
    let pairs = periodic_pairs(shape, w)?;
    if !verify_wall(shape, w)?.report.is_wall() {
        return Ok(0);
    }
    let full: u32 = (1u32 << n) - 1;
    let mut touch = vec![0u32; n];
    for &(i, j, _) in &pairs.contacts {
        touch[i] |= 1 << j;
        touch[j] |= 1 << i;
    }
    let mut walls: Vec<u32> = Vec::new();
    for mask in 1..=full {
        let units = (0..n).filter(|i| mask & (1 << i) != 0).map(|i| w.units[i].clone()).collect();
        let c = StripConfig { units, period: w.period.clone() };
        if verify_wall(shape, &c)?.report.is_wall() {
            walls.push(mask);
        }
    }
    let shares = |a: u32, b: u32| (0..n).any(|i| a & (1 << i) != 0 && touch[i] & b != 0);
    let mut best = 0usize;
    let mut chain: Vec<u32> = Vec::new();
    fn dfs(
        used: u32,
        full: u32,
        chain: &mut Vec<u32>,
        walls: &[u32],
        cap: usize,
        best: &mut usize,
        shares: &dyn Fn(u32, u32) -> bool,
    ) {
        if used == full {
            *best = (*best).max(chain.len());
            return;
        }
        if chain.len() >= cap || *best >= cap {
            return;
        }
        for &m in walls {
            if m & used != 0 {
                continue;
            }
            if let Some(&last) = chain.last() {
                if !shares(last, m) {
                    continue;
                }
            }
            let len = chain.len();
            if chain[..len.saturating_sub(1)].iter().any(|&c| shares(c, m)) {
                continue;
            }
            chain.push(m);
            dfs(used | m, full, chain, walls, cap, best, shares);
            chain.pop();
        }
    }
    dfs(0, full, &mut chain, &walls, cap, &mut best, &shares);
    Ok(best)
}

/// Search limits; every negative answer is relative to them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WallBounds {
    /// Units per period across all classes.
    pub max_units: usize,
    /// Transverse width limit in shape diameters.
    pub max_width: u32,
}

impl Default for WallBounds {
    fn default() -> Self {
        WallBounds { max_units: 8, max_width: 6 }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WallSearchStats {
    pub branches: usize,
    pub nodes: u64,
    pub rows_closed: u64,
    pub rows_valid: u64,
    pub layers_completed: u64,
    pub cancelled: bool,
}

impl WallSearchStats {
    pub fn merge(&mut self, o: &WallSearchStats) {
        self.branches += o.branches;
        self.nodes += o.nodes;
        self.rows_closed += o.rows_closed;
        self.rows_valid += o.rows_valid;
        self.layers_completed += o.layers_completed;
        self.cancelled |= o.cancelled;
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WallOutcome {
    Found(ThicknessCertificate),
    Infeasible { bounds: WallBounds, symmetry: SymmetryOptions, thickness: usize, stats: WallSearchStats },
    /// The verifier rejected a configuration the search accepted.
    Inconsistent(ThicknessCertificate),
}

#[derive(Clone, Debug)]
pub struct BranchResult {
    pub outcome: Option<WallOutcome>,
    pub stats: WallSearchStats,
}

/// Bounded search for a wall of thickness `t`.
///
/// Layer 1 is a chain of contacts closed by a pure translation; it is taken to
/// be the smaller of the two outer layers. Every later layer covers the open
/// side of the previous one, each new copy being a contact of the copy whose
/// boundary it covers.
pub struct WallSearch<'a> {
    pub shape: &'a RealizedShape,
    pub index: &'a ContactIndex,
    pub t: usize,
    pub bounds: WallBounds,
    diam2: Scalar,
    branches: Vec<(usize, usize)>,
}

struct BranchState<'b> {
    stats: WallSearchStats,
    seen: HashSet<(Point, Vec<Isometry>)>,
    cancel: &'b dyn Fn() -> bool,
    found: Option<WallOutcome>,
}

impl<'a> WallSearch<'a> {
    pub fn new(shape: &'a RealizedShape, index: &'a ContactIndex, t: usize, bounds: WallBounds) -> WallSearch<'a> {
        let k1max = if t <= 1 { bounds.max_units } else { bounds.max_units.saturating_sub(t - 2) / 2 };
        let mut branches = Vec::new();
        if t >= 1 && bounds.max_units >= t {
            for k1 in 1..=k1max {
                for c in 0..index.len() {
                    if k1 == 1 && !is_translation(index.pose(c)) {
                        continue;
                    }
                    branches.push((k1, c));
                }
            }
        }
        WallSearch { shape, index, t, bounds, diam2: shape.region.diameter2(), branches }
    }

    pub fn branch_count(&self) -> usize {
        self.branches.len()
    }

    pub fn run_branch(&self, b: usize, cancel: &dyn Fn() -> bool) -> BranchResult {
        let (k1, c1) = self.branches[b];
        let mut st = BranchState { stats: WallSearchStats { branches: 1, ..Default::default() }, seen: HashSet::new(), cancel, found: None };
        let first = self.index.pose(c1).clone();
        let mut rel = Relations::new(&self.shape.region);
        if k1 == 1 {
            self.try_row(&[Isometry::identity()], first.shift, &mut rel, &mut st);
        } else {
            let mut chain = vec![Isometry::identity(), first];
            if !rel.overlaps(&chain[0], &chain[1]) {
                self.extend_chain(&mut chain, k1, &mut rel, &mut st);
            }
        }
        if (st.cancel)() && st.found.is_none() {
            st.stats.cancelled = true;
        }
        BranchResult { outcome: st.found, stats: st.stats }
    }

    /// Runs every branch in order and reports the first success.
    pub fn run(&self) -> WallOutcome {
        let mut stats = WallSearchStats::default();
        let never = || false;
        for b in 0..self.branch_count() {
            let r = self.run_branch(b, &never);
            stats.merge(&r.stats);
            if let Some(o) = r.outcome {
                return o;
            }
        }
        self.infeasible(stats)
    }

    pub fn infeasible(&self, stats: WallSearchStats) -> WallOutcome {
        WallOutcome::Infeasible { bounds: self.bounds.clone(), symmetry: self.index.table.opts, thickness: self.t, stats }
    }

    fn extend_chain(&self, chain: &mut Vec<Isometry>, k1: usize, rel: &mut Relations, st: &mut BranchState) {
        if st.found.is_some() || (st.cancel)() {
            return;
        }
        let last = chain.last().expect("nonempty").clone();
        if chain.len() == k1 {
            for c in 0..self.index.len() {
                let g = last.compose(self.index.pose(c));
                if is_translation(&g) && !g.shift.is_zero() {
                    self.try_row(chain, g.shift.clone(), rel, st);
                    if st.found.is_some() {
                        return;
                    }
                }
            }
            return;
        }
        for c in 0..self.index.len() {
            let g = last.compose(self.index.pose(c));
            st.stats.nodes += 1;
            if chain.iter().any(|u| rel.overlaps(u, &g)) {
                continue;
            }
            chain.push(g);
            self.extend_chain(chain, k1, rel, st);
            chain.pop();
            if st.found.is_some() {
                return;
            }
        }
    }

    fn width_ok(&self, units: &[Isometry], p: &Vector) -> bool {
        let mut lo: Option<Scalar> = None;
        let mut hi: Option<Scalar> = None;
        for g in units {
            for v in self.shape.region.all_vertices() {
                let t = p.cross(&g.apply(v));
                if lo.as_ref().map_or(true, |x| t < *x) {
                    lo = Some(t.clone());
                }
                if hi.as_ref().map_or(true, |x| t > *x) {
                    hi = Some(t);
                }
            }
        }
        let (Some(lo), Some(hi)) = (lo, hi) else { return false };
        let dt = hi - lo;
        let w = Scalar::int(i64::from(self.bounds.max_width));
        &dt * &dt <= &(&w * &w) * &(&self.diam2 * &p.norm2())
    }

    fn strip_key(units: &[Isometry], p: &Vector) -> (Point, Vec<Isometry>) {
        let l2 = p.norm2();
        let mut keyed: Vec<Isometry> = units
            .iter()
            .map(|g| {
                let m = g.shift.dot(p).checked_div(&l2).expect("nonzero").floor();
                g.translated(&-&p.scale(&Scalar::int(m)))
            })
            .collect();
        keyed.sort();
        (p.clone(), keyed)
    }

    fn try_row(&self, chain: &[Isometry], p: Vector, rel: &mut Relations, st: &mut BranchState) {
        st.stats.rows_closed += 1;
        if !self.width_ok(chain, &p) {
            return;
        }
        if !st.seen.insert(Self::strip_key(chain, &p)) {
            return;
        }
        let taken = core::mem::replace(rel, Relations::new(&self.shape.region));
        let mut layout = Layout::new(self.shape, self.index, Some(p.clone())).with_relations(taken);
        let mut ok = true;
        for g in chain {
            if !layout.fits(g, None) {
                ok = false;
                break;
            }
            layout.place(g.clone(), 1);
        }
        if ok {
            self.row_layers(&mut layout, st);
        }
        *rel = layout.into_relations();
    }

    fn certificate(layout: &Layout) -> ThicknessCertificate {
        ThicknessCertificate {
            config: StripConfig { units: layout.poses(), period: layout.period.clone().expect("periodic") },
            classes: layout.units.iter().map(|u| u.layer).collect(),
        }
    }

    fn layer_config(layout: &Layout, pred: impl Fn(usize) -> bool) -> StripConfig {
        StripConfig {
            units: layout.units.iter().filter(|u| pred(u.layer)).map(|u| u.pose.clone()).collect(),
            period: layout.period.clone().expect("periodic"),
        }
    }

    fn row_layers(&self, layout: &mut Layout, st: &mut BranchState) {
        let row = Self::layer_config(layout, |_| true);
        let Ok(cert) = verify_wall(self.shape, &row) else { return };
        if !cert.report.is_wall() {
            return;
        }
        st.stats.rows_valid += 1;
        if self.t == 1 {
            self.finish(layout, st);
            return;
        }
        let p = layout.period.clone().expect("periodic");
        let regions: Vec<Region> = row.units.iter().map(|g| self.shape.region.transformed(g).filled()).collect();
        let Ok(sub) = build_subdivision(&regions, Some(&p)) else { return };
        let comps = complement_components(&sub);
        let saved: Vec<Vec<Segment>> = layout.units.iter().map(|u| u.frontier.clone()).collect();
        for side_top in [true, false] {
            for (i, u) in layout.units.iter_mut().enumerate() {
                u.frontier = saved[i]
                    .iter()
                    .filter(|f| {
                        piece_component(&sub, &comps, &p, f).map_or(false, |c| {
                            if side_top {
                                comps[c].touches_top
                            } else {
                                comps[c].touches_bottom
                            }
                        })
                    })
                    .cloned()
                    .collect();
            }
            self.cover(layout, 2, st);
            if st.found.is_some() {
                return;
            }
        }
        for (i, u) in layout.units.iter_mut().enumerate() {
            u.frontier = saved[i].clone();
        }
    }

    fn finish(&self, layout: &Layout, st: &mut BranchState) {
        let tc = Self::certificate(layout);
        match verify_thickness(self.shape, &tc) {
            Ok(r) if r.is_valid() => st.found = Some(WallOutcome::Found(tc)),
            _ => st.found = Some(WallOutcome::Inconsistent(tc)),
        }
    }

    fn cover(&self, layout: &mut Layout, layer: usize, st: &mut BranchState) {
        if st.found.is_some() || (st.cancel)() {
            return;
        }
        // open pieces of the previous layer
        let mut targets: Vec<(usize, Segment)> = Vec::new();
        for (i, u) in layout.units.iter().enumerate() {
            if u.layer == layer - 1 {
                targets.extend(u.frontier.iter().map(|f| (i, f.clone())));
            }
        }
        if targets.is_empty() {
            self.complete_layer(layout, layer, st);
            return;
        }
        if layout.units.len() + 1 + (self.t - layer) > self.bounds.max_units {
            return;
        }
        let mut best: Option<Vec<Isometry>> = None;
        for (owner, f) in &targets {
            let cands = layout.candidates_for(*owner, &f.a, &f.dir(), true);
            let mut ok = Vec::new();
            for g in cands {
                if layout.fits(&g, Some(layer - 1)) {
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
        for g in best.unwrap_or_default() {
            st.stats.nodes += 1;
            layout.place(g, layer);
            self.cover(layout, layer, st);
            layout.unplace();
            if st.found.is_some() {
                return;
            }
        }
    }

    fn complete_layer(&self, layout: &mut Layout, layer: usize, st: &mut BranchState) {
        if !layout.units.iter().any(|u| u.layer == layer) {
            return;
        }
        let p = layout.period.clone().expect("periodic");
        if !self.width_ok(&layout.poses(), &p) {
            return;
        }
        let Ok(lw) = verify_wall(self.shape, &Self::layer_config(layout, |l| l == layer)) else { return };
        if !lw.report.is_wall() {
            return;
        }
        let Ok(uw) = verify_wall(self.shape, &Self::layer_config(layout, |_| true)) else { return };
        if !uw.report.is_wall() {
            return;
        }
        st.stats.layers_completed += 1;
        if layer == self.t {
            self.finish(layout, st);
        } else {
            self.cover(layout, layer + 1, st);
        }
    }
}

fn is_translation(g: &Isometry) -> bool {
    g.rot == 0 && !g.reflect
}

/// Complement component on the outer side of a boundary piece of a fundamental unit.
pub(crate) fn piece_component(sub: &Subdivision, comps: &[ComplementComponent], p: &Vector, f: &Segment) -> Option<usize> {
    let q = sub.quotient.as_ref()?;
    let l2 = p.norm2();
    let d = f.dir();
    for (n, den) in [(1, 2), (1, 3), (2, 3), (1, 4), (3, 4), (1, 5), (2, 5)] {
        let x = &f.a + &d.scale(&Scalar::ratio(n, den));
        let s = x.dot(p);
        // move into the window
        let m = (&s - &q.s0).checked_div(&l2).expect("nonzero").floor();
        let shift = p.scale(&Scalar::int(-m));
        let x = &x + &shift;
        let s = x.dot(p);
        if s == q.s0 || sub.vertices.contains(&x) {
            continue;
        }
        for h in 0..sub.half_edges.len() {
            let seg = sub.segment(h);
            if !on_segment(&seg.a, &seg.b, &x) || !seg.dir().cross(&d).is_zero() || !seg.dir().dot(&d).is_negative() {
                continue;
            }
            let face = sub.half_edges[h].face;
            return comps.iter().position(|c| c.faces.contains(&face));
        }
        return None;
    }
    None
}

/// Sequential search; see [`WallSearch`].
pub fn find_wall(shape: &RealizedShape, t: usize, bounds: &WallBounds, opts: SymmetryOptions) -> WallOutcome {
    let index = ContactIndex::new(shape, opts);
    WallSearch::new(shape, &index, t, bounds.clone()).run()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Polygon;

    fn square() -> RealizedShape {
        RealizedShape::from_region(
            "square",
            Region::simple(Polygon::new(vec![Point::int(0, 0), Point::int(1, 0), Point::int(1, 1), Point::int(0, 1)]).unwrap()),
        )
    }

    fn tr(x: i64, y: i64) -> Isometry {
        Isometry::translation(Point::int(x, y))
    }

    fn rows(n: i64) -> StripConfig {
        StripConfig { units: (0..n).map(|y| tr(0, y)).collect(), period: Point::int(1, 0) }
    }

    #[test]
    fn square_rows_are_walls() {
        let s = square();
        let one = verify_wall(&s, &rows(1)).unwrap();
        assert!(one.is_valid());
        assert_eq!(one.report, WallReport { connected: true, complement_count: 2, cavities: 0, separated: true });
        assert!(verify_wall(&s, &rows(2)).unwrap().is_valid());
    }

    #[test]
    fn diagonal_chain_is_not_a_wall() {
        let c = StripConfig { units: vec![tr(0, 0), tr(1, 1)], period: Point::int(2, 0) };
        let r = verify_wall(&square(), &c).unwrap().report;
        assert!(!r.is_wall());
        assert!(!r.connected);
    }

    #[test]
    fn overlap_is_an_error() {
        let c = StripConfig { units: vec![tr(0, 0)], period: Point::new(Scalar::ratio(1, 2), Scalar::ZERO) };
        assert!(matches!(verify_wall(&square(), &c), Err(WallError::Overlap { .. })));
    }

    #[test]
    fn doubled_period_row_is_connected() {
        let c = StripConfig { units: vec![tr(0, 0), tr(1, 0)], period: Point::int(2, 0) };
        assert!(verify_wall(&square(), &c).unwrap().is_valid());
        let gap = StripConfig { units: vec![tr(0, 0)], period: Point::int(2, 0) };
        assert!(!verify_wall(&square(), &gap).unwrap().report.connected);
    }

    #[test]
    fn thickness_certificates() {
        let s = square();
        let tc = ThicknessCertificate { config: rows(3), classes: vec![1, 2, 3] };
        assert!(verify_thickness(&s, &tc).unwrap().is_valid());
        let swapped = ThicknessCertificate { config: rows(3), classes: vec![3, 2, 1] };
        assert!(verify_thickness(&s, &swapped).unwrap().is_valid());
        let skip = ThicknessCertificate { config: rows(3), classes: vec![1, 3, 2] };
        assert!(!verify_thickness(&s, &skip).unwrap().is_valid());
        let board = StripConfig { units: vec![tr(0, 0), tr(1, 0), tr(0, 1), tr(1, 1)], period: Point::int(2, 0) };
        let checker = ThicknessCertificate { config: board, classes: vec![1, 2, 2, 1] };
        assert!(!verify_thickness(&s, &checker).unwrap().is_valid());
    }

    #[test]
    fn decompositions() {
        let s = square();
        assert_eq!(max_decomposition(&s, &rows(1), 8).unwrap(), 1);
        assert_eq!(max_decomposition(&s, &rows(3), 8).unwrap(), 3);
        assert_eq!(max_decomposition(&s, &rows(4), 3).unwrap(), 3);
    }

    #[test]
    fn square_walls_are_found() {
        let s = square();
        for t in 1..=4 {
            let bounds = WallBounds { max_units: 4, max_width: 6 };
            match find_wall(&s, t, &bounds, SymmetryOptions::default()) {
                WallOutcome::Found(tc) => {
                    assert!(tc.thickness() >= t);
                    assert!(verify_thickness(&s, &tc).unwrap().is_valid());
                }
                other => panic!("t = {t}: {other:?}"),
            }
        }
    }
}
