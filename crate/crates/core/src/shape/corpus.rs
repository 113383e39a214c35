//! The example shapes. Curved boundaries are polygonalized with rational
//! points on the circle, so every vertex stays exact.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::{DecoratedShape, EdgeProfile, ShapeError, Side};
use crate::exact::{Point, Scalar};
use crate::geom::Polygon;

/// `key=value` parameters for a corpus shape.
pub type CorpusParams = BTreeMap<String, String>;

pub fn corpus_names() -> &'static [&'static str] {
    &["chopped_disk", "square_semicircle", "heesch_pentagon", "friedman_region", "deformed_hexagon", "mann_region"]
}

pub fn corpus(name: &str, params: &CorpusParams) -> Result<DecoratedShape, ShapeError> {
    let allowed: &[&str] = match name {
        "chopped_disk" | "square_semicircle" => &["m"],
        "heesch_pentagon" => &["variant"],
        "friedman_region" => &["additions", "hole", "notch"],
        "deformed_hexagon" => &["variant"],
        "mann_region" => &["pattern"],
        _ => return Err(ShapeError::UnknownShape(name.into())),
    };
    if let Some(k) = params.keys().find(|k| !allowed.contains(&k.as_str())) {
        return Err(invalid(k, "not a parameter of this shape"));
    }
    match name {
        "chopped_disk" => chopped_disk(even_m(params)?),
        "square_semicircle" => square_semicircle(even_m(params)?),
        "heesch_pentagon" => heesch_pentagon(params.get("variant").map_or("heesch", |s| s.as_str())),
        "friedman_region" => friedman_region(params),
        "deformed_hexagon" => deformed_hexagon(parse_int(params, "variant", 3)?),
        _ => mann_region(params.get("pattern").map_or(MANN_DEFAULT, |s| s.as_str())),
    }
}

fn invalid(name: &str, reason: &str) -> ShapeError {
    ShapeError::InvalidParam { name: name.into(), reason: reason.into() }
}

fn parse_int(params: &CorpusParams, key: &str, default: i64) -> Result<i64, ShapeError> {
    match params.get(key) {
        None => Ok(default),
        Some(v) => v.trim().parse().map_err(|_| invalid(key, "expected an integer")),
    }
}

fn even_m(params: &CorpusParams) -> Result<i64, ShapeError> {
    let m = parse_int(params, "m", 4)?;
    if m < 4 || m % 2 != 0 || m > 64 {
        return Err(invalid("m", "must be even and between 4 and 64"));
    }
    Ok(m)
}

fn polygon(pts: Vec<Point>) -> Result<Polygon, ShapeError> {
    Ok(Polygon::new(pts)?)
}

fn q(n: i64, d: i64) -> Scalar {
    Scalar::ratio(n, d)
}

/// Unit circle point with half-angle tangent `t`.
fn circle_point(t: &Scalar) -> Point {
    let t2 = t * t;
    let den = (Scalar::ONE + &t2).recip().expect("positive");
    Point::new((Scalar::ONE - &t2) * &den, (t + t) * &den)
}

/// Disk of radius 1 cut by the lines y = ±4/5: two flats of length 6/5 and two
/// m-segment arcs through the rational points with half-angle tangents in [-1/2, 1/2].
pub fn chopped_disk(m: i64) -> Result<DecoratedShape, ShapeError> {
    let (x0, y0) = (q(3, 5), q(4, 5));
    let base = polygon(vec![
        Point::new(-&x0, -&y0),
        Point::new(x0.clone(), -&y0),
        Point::new(x0.clone(), y0.clone()),
        Point::new(-&x0, y0.clone()),
    ])?;
    let span = q(8, 5).recip().expect("nonzero");
    let mut apex = Vec::new();
    for j in 0..=m {
        let p = circle_point(&q(2 * j - m, 2 * m));
        // local frame of the right edge
        apex.push(Point::new((&p.y + &y0) * &span, (&p.x - &x0) * &span));
    }
    let arc = EdgeProfile::new(&format!("arc{m}"), apex)?;
    let id = arc.id.clone();
    Ok(DecoratedShape::plain("chopped_disk", base).with_profile(arc).decorate(1, &id, Side::Out).decorate(3, &id, Side::Out))
}

/// Unit square with an m-segment semicircle of diameter 1 on its top edge.
pub fn square_semicircle(m: i64) -> Result<DecoratedShape, ShapeError> {
    let base = polygon(vec![Point::int(0, 0), Point::int(1, 0), Point::int(1, 1), Point::int(0, 1)])?;
    let mut apex = Vec::new();
    for j in 0..=m {
        // half-angle tangent j / (m - j)
        let (u, v) = (j, m - j);
        let den = u * u + v * v;
        let cos = q(v * v - u * u, den);
        let sin = q(2 * u * v, den);
        apex.push(Point::new((Scalar::ONE - cos).half(), sin.half()));
    }
    let semi = EdgeProfile::new(&format!("semi{m}"), apex)?;
    let id = semi.id.clone();
    Ok(DecoratedShape::plain("square_semicircle", base).with_profile(semi).decorate(2, &id, Side::Out))
}

/// Pentagons built from a unit square and an equilateral triangle on its top.
/// `heesch` (the default) also glues a 30-60-90 triangle by its hypotenuse to
/// the right side of the square, giving angles 90, 150, 90, 60, 150; `house`
/// is the bare square plus triangle, which tiles.
pub fn heesch_pentagon(variant: &str) -> Result<DecoratedShape, ShapeError> {
    let apex = Point::new(q(1, 2), Scalar::ONE + Scalar::new(0, 1, 2));
    let pts = match variant {
        "heesch" => vec![Point::int(0, 0), Point::int(1, 0), Point::new(Scalar::new(4, 1, 4), q(1, 4)), apex, Point::int(0, 1)],
        "house" => vec![Point::int(0, 0), Point::int(1, 0), Point::int(1, 1), apex, Point::int(0, 1)],
        _ => return Err(invalid("variant", "expected heesch or house")),
    };
    Ok(DecoratedShape::plain("heesch_pentagon", polygon(pts)?))
}

fn parse_cells(key: &str, s: &str) -> Result<Vec<(i64, i64)>, ShapeError> {
    let mut out = Vec::new();
    for part in s.split(';').map(str::trim).filter(|p| !p.is_empty()) {
        let (x, y) = part.split_once(',').ok_or_else(|| invalid(key, "cells are written x,y;x,y"))?;
        let x = x.trim().parse().map_err(|_| invalid(key, "cell coordinates are integers"))?;
        let y = y.trim().parse().map_err(|_| invalid(key, "cell coordinates are integers"))?;
        out.push((x, y));
    }
    Ok(out)
}

pub const FRIEDMAN_ADDITIONS: &str = "-1,3;2,7;2,-1";
pub const FRIEDMAN_NOTCH: &str = "4,3";

/// 5x7 rectangle of unit cells `[0,5)x[0,7)` plus three cells outside it and
/// minus one cell. The removed cell is a notch on the rim by default; an
/// interior cell given as `hole=` becomes a true hole.
///
/// The default puts bumps at the middle of the left, top and bottom sides and
/// the notch at the middle of the right side.
pub fn friedman_region(params: &CorpusParams) -> Result<DecoratedShape, ShapeError> {
    let adds = parse_cells("additions", params.get("additions").map_or(FRIEDMAN_ADDITIONS, |s| s.as_str()))?;
    if adds.len() != 3 {
        return Err(invalid("additions", "exactly three cells"));
    }
    let mut cells: BTreeSet<(i64, i64)> = BTreeSet::new();
    for x in 0..5 {
        for y in 0..7 {
            cells.insert((x, y));
        }
    }
    for c in &adds {
        if !cells.insert(*c) {
            return Err(invalid("additions", "cell already in the rectangle"));
        }
    }
    let (removed, true_hole) = match (params.get("hole"), params.get("notch")) {
        (Some(_), Some(_)) => return Err(invalid("hole", "give either hole or notch")),
        (Some(h), None) => (parse_cells("hole", h)?, true),
        (None, n) => (parse_cells("notch", n.map_or(FRIEDMAN_NOTCH, |s| s.as_str()))?, false),
    };
    if removed.len() != 1 || !cells.remove(&removed[0]) {
        return Err(invalid(if true_hole { "hole" } else { "notch" }, "exactly one cell of the rectangle"));
    }
    let (x, y) = removed[0];
    let interior = (1..4).contains(&x) && (1..6).contains(&y);
    if true_hole != interior {
        let key = if true_hole { "hole" } else { "notch" };
        return Err(invalid(key, if true_hole { "a hole must be an interior cell" } else { "a notch must be a rim cell" }));
    }
    let mut shape = polyomino("friedman_region", &cells)?;
    if true_hole {
        shape.hole = Some(polygon(vec![
            Point::int(x, y),
            Point::int(x + 1, y),
            Point::int(x + 1, y + 1),
            Point::int(x, y + 1),
        ])?);
    }
    Ok(shape)
}

/// Outer boundary of a cell set whose outline is a single simple cycle.
/// Interior empty cells are ignored here (they are handled as holes by the caller).
fn polyomino(name: &str, cells: &BTreeSet<(i64, i64)>) -> Result<DecoratedShape, ShapeError> {
    let mut next: BTreeMap<(i64, i64), Vec<(i64, i64)>> = BTreeMap::new();
    let mut add = |a: (i64, i64), b: (i64, i64)| next.entry(a).or_default().push(b);
    for &(x, y) in cells {
        if !cells.contains(&(x, y - 1)) {
            add((x, y), (x + 1, y));
        }
        if !cells.contains(&(x + 1, y)) {
            add((x + 1, y), (x + 1, y + 1));
        }
        if !cells.contains(&(x, y + 1)) {
            add((x + 1, y + 1), (x, y + 1));
        }
        if !cells.contains(&(x - 1, y)) {
            add((x, y + 1), (x, y));
        }
    }
    let bad = || invalid("cells", "outline must be a single simple cycle");
    if next.values().any(|v| v.len() != 1) {
        return Err(bad());
    }
    // start at the lowest-leftmost corner, which lies on the outer cycle
    let start = *next.keys().min_by_key(|(x, y)| (*y, *x)).ok_or_else(bad)?;
    let mut ring = vec![start];
    let mut cur = next[&start][0];
    while cur != start {
        ring.push(cur);
        cur = next.get(&cur).ok_or_else(bad)?[0];
        if ring.len() > next.len() {
            return Err(bad());
        }
    }
    let inner_edges = next.len() - ring.len();
    if inner_edges != 0 && inner_edges != 4 {
        return Err(bad());
    }
    let pts: Vec<Point> = ring.iter().map(|&(x, y)| Point::int(x, y)).collect();
    Ok(DecoratedShape::plain(name, Polygon::from_points(&pts)?))
}

/// Regular hexagon of side 1 with vertex k at angle 60k degrees.
fn hexagon() -> Result<Polygon, ShapeError> {
    let h = Scalar::new(0, 1, 2);
    polygon(vec![
        Point::int(1, 0),
        Point::new(q(1, 2), h.clone()),
        Point::new(q(-1, 2), h.clone()),
        Point::int(-1, 0),
        Point::new(q(-1, 2), -&h),
        Point::new(q(1, 2), -&h),
    ])
}

/// Hexagon with the default triangular bump on edges 0 and 1 and the matching
/// dent on edge `variant`.
pub fn deformed_hexagon(variant: i64) -> Result<DecoratedShape, ShapeError> {
    if !(2..=5).contains(&variant) {
        return Err(invalid("variant", "dent edge must be 2, 3, 4 or 5"));
    }
    let p = EdgeProfile::default_triangle();
    let id = p.id.clone();
    Ok(DecoratedShape::plain("deformed_hexagon", hexagon()?)
        .with_profile(p)
        .decorate(0, &id, Side::Out)
        .decorate(1, &id, Side::Out)
        .decorate(variant as usize, &id, Side::In))
}

pub const MANN_DEFAULT: &str = "-oiioo";

/// Hexagon decorated edge by edge: `o` bump, `i` dent, `-` straight.
pub fn mann_region(pattern: &str) -> Result<DecoratedShape, ShapeError> {
    let chars: Vec<char> = pattern.chars().collect();
    if chars.len() != 6 || chars.iter().any(|c| !"oi-".contains(*c)) {
        return Err(invalid("pattern", "six characters from o, i, -"));
    }
    if !chars.iter().any(|c| *c != '-') {
        return Err(invalid("pattern", "at least one decorated edge"));
    }
    let p = EdgeProfile::default_triangle();
    let id = p.id.clone();
    let mut d = DecoratedShape::plain("mann_region", hexagon()?).with_profile(p);
    for (i, c) in chars.iter().enumerate() {
        match c {
            'o' => d = d.decorate(i, &id, Side::Out),
            'i' => d = d.decorate(i, &id, Side::In),
            _ => {}
        }
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn none() -> CorpusParams {
        CorpusParams::new()
    }

    fn with(k: &str, v: &str) -> CorpusParams {
        let mut p = CorpusParams::new();
        p.insert(k.into(), v.into());
        p
    }

    #[test]
    fn every_corpus_shape_realizes() {
        for name in corpus_names() {
            let d = corpus(name, &none()).unwrap();
            let r = d.realize().unwrap();
            assert_eq!(r.area(), d.base.area() - d.hole.as_ref().map_or(Scalar::ZERO, |h| h.area()) + d.decoration_area().unwrap());
        }
    }

    #[test]
    fn chopped_disk_shape() {
        for m in [4, 6, 8, 12] {
            let r = chopped_disk(m).unwrap().realize().unwrap();
            let vs = r.polygon().vertices();
            assert_eq!(vs.len() as i64, 2 + 2 * m);
            for v in vs {
                assert_eq!(v.norm2(), Scalar::ONE);
            }
            let flats: Vec<Scalar> = r
                .polygon()
                .edges()
                .filter(|e| e.a.y == e.b.y)
                .map(|e| e.length2())
                .collect();
            assert_eq!(flats, vec![q(36, 25), q(36, 25)]);
        }
    }

    #[test]
    fn semicircle_points_are_on_the_circle() {
        let r = square_semicircle(6).unwrap().realize().unwrap();
        assert_eq!(r.polygon().len(), 4 + 5);
        let c = Point::new(q(1, 2), Scalar::ONE);
        for v in r.polygon().vertices() {
            if v.y > Scalar::ONE {
                assert_eq!((v - &c).norm2(), q(1, 4));
            }
        }
    }

    #[test]
    fn pentagon_variants() {
        let house = heesch_pentagon("house").unwrap();
        assert_eq!(house.base.len(), 5);
        assert_eq!(house.base.area(), Scalar::ONE + Scalar::new(0, 1, 4));
        let p = heesch_pentagon("heesch").unwrap();
        assert_eq!(p.base.len(), 5);
        // square, unit equilateral triangle, and a 30-60-90 triangle with hypotenuse 1
        assert_eq!(p.base.area(), Scalar::ONE + Scalar::new(0, 1, 4) + Scalar::new(0, 1, 8));
        assert!(heesch_pentagon("barn").is_err());
    }

    #[test]
    fn deformed_hexagon_area() {
        let p = EdgeProfile::default_triangle().area();
        assert_eq!(p, q(1, 64));
        for v in 2..=5 {
            let r = deformed_hexagon(v).unwrap().realize().unwrap();
            assert_eq!(r.area(), Scalar::new(0, 3, 2) + p.clone());
        }
        assert!(deformed_hexagon(1).is_err());
    }

    #[test]
    fn friedman_default_and_hole() {
        let d = corpus("friedman_region", &none()).unwrap();
        assert_eq!(d.realize().unwrap().area(), Scalar::int(35 + 3 - 1));
        let h = corpus("friedman_region", &with("hole", "2,3")).unwrap();
        let r = h.realize().unwrap();
        assert!(r.region.hole().is_some());
        assert_eq!(r.area(), Scalar::int(37));
        assert!(corpus("friedman_region", &with("hole", "0,3")).is_err());
        assert!(corpus("friedman_region", &with("notch", "2,3")).is_err());
    }

    #[test]
    fn parameter_errors() {
        assert!(matches!(corpus("blob", &none()), Err(ShapeError::UnknownShape(_))));
        assert!(corpus("chopped_disk", &with("m", "5")).is_err());
        assert!(corpus("chopped_disk", &with("k", "4")).is_err());
        assert!(corpus("mann_region", &with("pattern", "------")).is_err());
    }
}
