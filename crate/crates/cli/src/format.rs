//! JSON files: shapes, wall certificates, corona witnesses, exhaustion records.
//!
//! Every number is an exact `[a, b, d]` triple meaning `(a + b√3)/d`; a bare
//! integer `n` is read as `[n, 0, 1]`. Integers of any size are accepted.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde_json::{json, Map, Number, Value};
use sha2::{Digest, Sha256};

use wallkit_core::contact::SymmetryOptions;
use wallkit_core::corona::{CoronaStats, CoronaWitness};
use wallkit_core::exact::{Isometry, Point, Scalar};
use wallkit_core::geom::Polygon;
use wallkit_core::shape::{DecoratedShape, Decoration, EdgeProfile, Side};
use wallkit_core::wall::{StripConfig, ThicknessCertificate, WallBounds, WallReport, WallSearchStats};

pub const TOOL_VERSION: &str = concat!("wallkit ", env!("CARGO_PKG_VERSION"));

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormatError(pub String);

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for FormatError {}

fn err<T>(msg: impl Into<String>) -> Result<T, FormatError> {
    Err(FormatError(msg.into()))
}

fn big_json(n: &BigInt) -> Value {
    Value::Number(Number::from_str(&n.to_string()).expect("integer literal"))
}

fn big_from(v: &Value, what: &str) -> Result<BigInt, FormatError> {
    match v {
        Value::Number(n) => {
            BigInt::from_str(&n.to_string()).map_err(|_| FormatError(format!("{what}: expected an integer, got {n}")))
        }
        other => err(format!("{what}: expected an integer, got {other}")),
    }
}

pub fn scalar_to_json(s: &Scalar) -> Value {
    let (a, b, d) = s.parts();
    Value::Array(vec![big_json(&a), big_json(&b), big_json(&d)])
}

pub fn scalar_from_json(v: &Value, what: &str) -> Result<Scalar, FormatError> {
    match v {
        Value::Number(_) => Ok(Scalar::from_parts(big_from(v, what)?, BigInt::from(0), BigInt::from(1)).expect("nonzero")),
        Value::Array(xs) if xs.len() == 3 => {
            let (a, b, d) = (big_from(&xs[0], what)?, big_from(&xs[1], what)?, big_from(&xs[2], what)?);
            Scalar::from_parts(a, b, d).map_err(|e| FormatError(format!("{what}: {e}")))
        }
        other => err(format!("{what}: expected [a, b, d] or an integer, got {other}")),
    }
}

pub fn point_to_json(p: &Point) -> Value {
    Value::Array(vec![scalar_to_json(&p.x), scalar_to_json(&p.y)])
}

pub fn point_from_json(v: &Value, what: &str) -> Result<Point, FormatError> {
    match v {
        Value::Array(xs) if xs.len() == 2 => Ok(Point::new(scalar_from_json(&xs[0], what)?, scalar_from_json(&xs[1], what)?)),
        other => err(format!("{what}: expected a point [x, y], got {other}")),
    }
}

fn points_to_json(ps: &[Point]) -> Value {
    Value::Array(ps.iter().map(point_to_json).collect())
}

fn points_from_json(v: &Value, what: &str) -> Result<Vec<Point>, FormatError> {
    let Value::Array(xs) = v else { return err(format!("{what}: expected a list of points")) };
    xs.iter().enumerate().map(|(i, p)| point_from_json(p, &format!("{what}[{i}]"))).collect()
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str, what: &str) -> Result<&'a Value, FormatError> {
    obj.get(key).ok_or_else(|| FormatError(format!("{what}: missing field `{key}`")))
}

fn object<'a>(v: &'a Value, what: &str) -> Result<&'a Map<String, Value>, FormatError> {
    v.as_object().ok_or_else(|| FormatError(format!("{what}: expected an object")))
}

fn string_field(obj: &Map<String, Value>, key: &str, what: &str) -> Result<String, FormatError> {
    field(obj, key, what)?.as_str().map(String::from).ok_or_else(|| FormatError(format!("{what}: `{key}` must be a string")))
}

fn uint_field(obj: &Map<String, Value>, key: &str, what: &str) -> Result<u64, FormatError> {
    let v = field(obj, key, what)?;
    v.as_u64().ok_or_else(|| FormatError(format!("{what}: `{key}` must be a non-negative integer")))
}

fn bool_field(obj: &Map<String, Value>, key: &str, what: &str) -> Result<bool, FormatError> {
    field(obj, key, what)?.as_bool().ok_or_else(|| FormatError(format!("{what}: `{key}` must be true or false")))
}

pub fn expect_kind(v: &Value, kind: &str) -> Result<(), FormatError> {
    match v.get("kind").and_then(Value::as_str) {
        Some(k) if k == kind => Ok(()),
        Some(k) => err(format!("expected a {kind} file, found {k}")),
        None => err(format!("expected a {kind} file (missing `kind`)")),
    }
}

pub fn shape_to_json(s: &DecoratedShape) -> Value {
    let mut profiles = Map::new();
    for (id, p) in &s.profiles {
        profiles.insert(
            id.clone(),
            json!({
                "footprint": [scalar_to_json(&p.footprint.0), scalar_to_json(&p.footprint.1)],
                "apex": points_to_json(&p.apex),
            }),
        );
    }
    let decorations: Vec<Value> = s
        .decorations
        .iter()
        .map(|d| match d {
            Decoration::None => Value::Null,
            Decoration::Profile { id, side } => {
                json!({ "profile": id, "side": if *side == Side::Out { "out" } else { "in" } })
            }
        })
        .collect();
    json!({
        "name": s.name,
        "base": points_to_json(s.base.vertices()),
        "hole": s.hole.as_ref().map_or(Value::Null, |h| points_to_json(h.vertices())),
        "profiles": Value::Object(profiles),
        "decorations": decorations,
    })
}

/// Reads a shape and checks every invariant, including realizability.
pub fn shape_from_json(v: &Value) -> Result<DecoratedShape, FormatError> {
    let what = "shape";
    let obj = object(v, what)?;
    let name = string_field(obj, "name", what)?;
    let base_pts = points_from_json(field(obj, "base", what)?, "base")?;
    let base = Polygon::new(base_pts).map_err(|e| FormatError(format!("base: {e}")))?;
    let hole = match obj.get("hole") {
        None | Some(Value::Null) => None,
        Some(h) => Some(Polygon::new(points_from_json(h, "hole")?).map_err(|e| FormatError(format!("hole: {e}")))?),
    };
    let mut profiles = BTreeMap::new();
    if let Some(p) = obj.get("profiles") {
        for (id, pv) in object(p, "profiles")? {
            let what = format!("profile `{id}`");
            let po = object(pv, &what)?;
            let apex = points_from_json(field(po, "apex", &what)?, &what)?;
            let prof = EdgeProfile::new(id, apex).map_err(|e| FormatError(e.to_string()))?;
            if let Some(fp) = po.get("footprint") {
                let Value::Array(xs) = fp else { return err(format!("{what}: footprint must be [s0, s1]")) };
                if xs.len() != 2 {
                    return err(format!("{what}: footprint must be [s0, s1]"));
                }
                let f = (scalar_from_json(&xs[0], &what)?, scalar_from_json(&xs[1], &what)?);
                if f != prof.footprint {
                    return err(format!("{what}: footprint does not match the polyline ends"));
                }
            }
            profiles.insert(id.clone(), prof);
        }
    }
    let n = base.len();
    let decorations = match obj.get("decorations") {
        None | Some(Value::Null) => vec![Decoration::None; n],
        Some(Value::Array(ds)) => {
            let mut out = Vec::new();
            for (i, d) in ds.iter().enumerate() {
                let what = format!("decoration {i}");
                out.push(match d {
                    Value::Null => Decoration::None,
                    d => {
                        let o = object(d, &what)?;
                        let id = string_field(o, "profile", &what)?;
                        let side = match string_field(o, "side", &what)?.as_str() {
                            "out" => Side::Out,
                            "in" => Side::In,
                            s => return err(format!("{what}: side must be \"out\" or \"in\", got \"{s}\"")),
                        };
                        Decoration::Profile { id, side }
                    }
                });
            }
            out
        }
        Some(_) => return err("decorations: expected a list"),
    };
    let shape = DecoratedShape { name, base, hole, profiles, decorations };
    shape.realize().map_err(|e| FormatError(e.to_string()))?;
    Ok(shape)
}

/// Compact canonical text, the input to [`shape_digest`].
pub fn canonical_text(v: &Value) -> String {
    serde_json::to_string(v).expect("serializable")
}

/// Indented JSON in which short arrays of plain values (points, scalars,
/// poses' shifts) stay on one line.
pub fn pretty(v: &Value) -> String {
    let mut s = String::new();
    write_pretty(&mut s, v, 0);
    s.push('\n');
    s
}

fn inline(v: &Value) -> Option<String> {
    match v {
        Value::Object(_) => None,
        Value::Array(items) => {
            if items.iter().any(|x| x.is_object()) {
                return None;
            }
            let text = serde_json::to_string(v).expect("serializable");
            (text.len() <= 72).then_some(text)
        }
        _ => Some(serde_json::to_string(v).expect("serializable")),
    }
}

fn write_pretty(out: &mut String, v: &Value, depth: usize) {
    if let Some(text) = inline(v) {
        out.push_str(&text);
        return;
    }
    let pad = |out: &mut String, d: usize| out.extend(core::iter::repeat("  ").take(d));
    match v {
        Value::Array(items) => {
            out.push_str("[\n");
            for (i, x) in items.iter().enumerate() {
                pad(out, depth + 1);
                write_pretty(out, x, depth + 1);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            pad(out, depth);
            out.push(']');
        }
        Value::Object(map) if map.is_empty() => out.push_str("{}"),
        Value::Object(map) => {
            out.push_str("{\n");
            for (i, (k, x)) in map.iter().enumerate() {
                pad(out, depth + 1);
                out.push_str(&serde_json::to_string(k).expect("serializable"));
                out.push_str(": ");
                write_pretty(out, x, depth + 1);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            pad(out, depth);
            out.push('}');
        }
        _ => unreachable!("plain values are inline"),
    }
}

pub fn shape_digest(s: &DecoratedShape) -> String {
    hex::encode(Sha256::digest(canonical_text(&shape_to_json(s)).as_bytes()))
}

pub fn pose_to_json(shape: &str, g: &Isometry) -> Value {
    json!({ "shape": shape, "rot": g.rot, "reflect": g.reflect, "shift": point_to_json(&g.shift) })
}

pub fn pose_from_json(v: &Value, what: &str) -> Result<Isometry, FormatError> {
    let o = object(v, what)?;
    let rot = uint_field(o, "rot", what)?;
    if rot >= 12 {
        return err(format!("{what}: rot must be in 0..12 (multiples of 30 degrees)"));
    }
    let reflect = bool_field(o, "reflect", what)?;
    let shift = point_from_json(field(o, "shift", what)?, what)?;
    Ok(Isometry::new(rot as u8, reflect, shift))
}

fn poses_from_json(v: &Value, what: &str) -> Result<Vec<Isometry>, FormatError> {
    let Value::Array(xs) = v else { return err(format!("{what}: expected a list of units")) };
    xs.iter().enumerate().map(|(i, p)| pose_from_json(p, &format!("{what}[{i}]"))).collect()
}

pub fn symmetry_to_json(o: &SymmetryOptions) -> Value {
    json!({ "reflections": o.allow_reflections, "rotations": o.rotations })
}

pub fn symmetry_from_json(v: &Value) -> Result<SymmetryOptions, FormatError> {
    let o = object(v, "symmetry")?;
    let rotations = uint_field(o, "rotations", "symmetry")?;
    let opts = SymmetryOptions { allow_reflections: bool_field(o, "reflections", "symmetry")?, rotations: rotations.min(255) as u8 };
    if !opts.is_valid() {
        return err("symmetry: rotations must divide 12");
    }
    Ok(opts)
}

pub fn symmetry_label(o: &SymmetryOptions) -> String {
    format!("{} rotations, reflections {}", o.rotations, if o.allow_reflections { "allowed" } else { "excluded" })
}

pub fn bounds_to_json(b: &WallBounds) -> Value {
    json!({ "max_units_per_period": b.max_units, "max_width": b.max_width })
}

fn report_to_json(r: &WallReport) -> Value {
    json!({
        "connected": r.connected,
        "complement_components": r.complement_count,
        "cavities": r.cavities,
        "sides_separated": r.separated,
        "is_wall": r.is_wall(),
    })
}

/// Shape, digest and header shared by every result file.
fn header(kind: &str, shape: &DecoratedShape) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("kind".into(), kind.into());
    m.insert("tool_version".into(), TOOL_VERSION.into());
    m.insert("shape_digest".into(), shape_digest(shape).into());
    m.insert("shape".into(), shape_to_json(shape));
    m
}

/// Reads the embedded shape and checks it against the recorded digest.
pub fn embedded_shape(v: &Value) -> Result<DecoratedShape, FormatError> {
    let o = object(v, "file")?;
    let shape = shape_from_json(field(o, "shape", "file")?)?;
    if let Some(d) = o.get("shape_digest") {
        if d.as_str() != Some(shape_digest(&shape).as_str()) {
            return err("shape_digest does not match the embedded shape");
        }
    }
    Ok(shape)
}

pub struct CertificateInfo<'a> {
    pub shape: &'a DecoratedShape,
    pub cert: &'a ThicknessCertificate,
    pub union: Option<&'a WallReport>,
    pub bounds: Option<&'a WallBounds>,
    pub symmetry: Option<&'a SymmetryOptions>,
}

pub fn certificate_to_json(c: &CertificateInfo) -> Value {
    let mut m = header("wall-certificate", c.shape);
    m.insert("thickness".into(), c.cert.thickness().into());
    m.insert("period".into(), point_to_json(&c.cert.config.period));
    m.insert("units".into(), Value::Array(c.cert.config.units.iter().map(|g| pose_to_json(&c.shape.name, g)).collect()));
    m.insert("classes".into(), json!(c.cert.classes));
    if let Some(r) = c.union {
        m.insert("report".into(), report_to_json(r));
    }
    if let Some(b) = c.bounds {
        m.insert("bounds".into(), bounds_to_json(b));
    }
    if let Some(s) = c.symmetry {
        m.insert("symmetry".into(), symmetry_to_json(s));
    }
    Value::Object(m)
}

/// Reads a wall certificate; without `classes` every unit is in class 1.
pub fn certificate_from_json(v: &Value) -> Result<(DecoratedShape, ThicknessCertificate), FormatError> {
    expect_kind(v, "wall-certificate")?;
    let shape = embedded_shape(v)?;
    let o = object(v, "certificate")?;
    let period = point_from_json(field(o, "period", "certificate")?, "period")?;
    let units = poses_from_json(field(o, "units", "certificate")?, "units")?;
    let classes = match o.get("classes") {
        None | Some(Value::Null) => vec![1; units.len()],
        Some(Value::Array(xs)) => {
            let cs: Option<Vec<usize>> = xs.iter().map(|x| x.as_u64().map(|k| k as usize)).collect();
            cs.ok_or_else(|| FormatError("classes: expected positive integers".into()))?
        }
        Some(_) => return err("classes: expected a list"),
    };
    if classes.len() != units.len() {
        return err("classes: one label per unit is required");
    }
    Ok((shape, ThicknessCertificate { config: StripConfig { units, period }, classes }))
}

pub fn witness_to_json(shape: &DecoratedShape, w: &CoronaWitness, symmetry: &SymmetryOptions) -> Value {
    let mut m = header("corona-witness", shape);
    m.insert("symmetry".into(), symmetry_to_json(symmetry));
    m.insert("center".into(), pose_to_json(&shape.name, &w.center));
    m.insert(
        "layers".into(),
        Value::Array(w.layers.iter().map(|l| Value::Array(l.iter().map(|g| pose_to_json(&shape.name, g)).collect())).collect()),
    );
    Value::Object(m)
}

pub fn witness_from_json(v: &Value) -> Result<(DecoratedShape, CoronaWitness), FormatError> {
    expect_kind(v, "corona-witness")?;
    let shape = embedded_shape(v)?;
    let o = object(v, "witness")?;
    let center = pose_from_json(field(o, "center", "witness")?, "center")?;
    let Value::Array(ls) = field(o, "layers", "witness")? else { return err("layers: expected a list") };
    let layers = ls.iter().enumerate().map(|(i, l)| poses_from_json(l, &format!("layers[{i}]"))).collect::<Result<_, _>>()?;
    Ok((shape, CoronaWitness { center, layers }))
}

pub fn wall_exhaustion_to_json(
    shape: &DecoratedShape,
    t: usize,
    bounds: &WallBounds,
    symmetry: &SymmetryOptions,
    stats: &WallSearchStats,
) -> Value {
    let mut m = header("wall-exhaustion", shape);
    m.insert("thickness".into(), t.into());
    m.insert("bounds".into(), bounds_to_json(bounds));
    m.insert("symmetry".into(), symmetry_to_json(symmetry));
    m.insert(
        "stats".into(),
        json!({
            "branches": stats.branches,
            "nodes": stats.nodes,
            "rows_closed": stats.rows_closed,
            "rows_valid": stats.rows_valid,
            "layers_completed": stats.layers_completed,
        }),
    );
    Value::Object(m)
}

pub fn corona_exhaustion_to_json(shape: &DecoratedShape, n: usize, symmetry: &SymmetryOptions, stats: &CoronaStats) -> Value {
    let mut m = header("corona-exhaustion", shape);
    m.insert("layers_requested".into(), n.into());
    m.insert("symmetry".into(), symmetry_to_json(symmetry));
    m.insert("placement_model".into(), "vertex-anchored and frontier-anchored contacts".into());
    let branching: Map<String, Value> =
        stats.branching.iter().enumerate().filter(|(_, c)| **c > 0).map(|(k, c)| (k.to_string(), Value::from(*c))).collect();
    m.insert(
        "stats".into(),
        json!({
            "root_branches": stats.branches,
            "nodes": stats.nodes,
            "branching_histogram": Value::Object(branching),
            "layers_completed": stats.layers_completed,
            "cavities_rejected": stats.cavities_rejected,
        }),
    );
    Value::Object(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use wallkit_core::shape::{corpus, corpus_names, CorpusParams};

    #[test]
    fn scalars_round_trip() {
        for s in [Scalar::ZERO, Scalar::new(3, -2, 7), Scalar::sqrt3()] {
            assert_eq!(scalar_from_json(&scalar_to_json(&s), "x").unwrap(), s);
        }
        assert_eq!(scalar_from_json(&json!(5), "x").unwrap(), Scalar::int(5));
        let huge: Value = serde_json::from_str("[123456789012345678901234567891, 0, 7]").unwrap();
        let s = scalar_from_json(&huge, "x").unwrap();
        assert_eq!(canonical_text(&scalar_to_json(&s)), "[123456789012345678901234567891,0,7]");
        assert!(scalar_from_json(&json!([1, 0, 0]), "x").is_err());
        assert!(scalar_from_json(&json!("1"), "x").is_err());
    }

    #[test]
    fn corpus_shapes_round_trip() {
        for name in corpus_names() {
            let s = corpus(name, &CorpusParams::new()).unwrap();
            let back = shape_from_json(&shape_to_json(&s)).unwrap();
            assert_eq!(back, s);
            assert_eq!(shape_digest(&back), shape_digest(&s));
        }
    }

    #[test]
    fn bad_base_is_rejected() {
        let v = json!({ "name": "bow", "base": [[0, 0], [1, 1], [1, 0], [0, 1]] });
        assert!(shape_from_json(&v).is_err());
    }
}
