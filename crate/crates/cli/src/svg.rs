//! SVG 1.1 drawings of walls and coronas. Coordinates are exact until this
//! point; they are rounded to six decimals of an 800-unit canvas, which keeps
//! the error below 1e-9 of the drawing's extent.

use std::fmt::Write;

use wallkit_core::corona::CoronaWitness;
use wallkit_core::exact::{Isometry, Scalar};
use wallkit_core::geom::Region;
use wallkit_core::wall::ThicknessCertificate;

const PALETTE: [&str; 8] = ["#4e79a7", "#f28e2b", "#59a14f", "#e15759", "#76b7b2", "#edc948", "#b07aa1", "#ff9da7"];
const CANVAS: f64 = 800.0;

pub fn class_color(k: usize) -> &'static str {
    PALETTE[k % PALETTE.len()]
}

/// One filled unit: its region, fill colour and a label for the title element.
pub struct Piece {
    pub region: Region,
    pub fill: &'static str,
    pub label: String,
}

pub fn render(pieces: &[Piece]) -> String {
    let mut lo = (f64::INFINITY, f64::INFINITY);
    let mut hi = (f64::NEG_INFINITY, f64::NEG_INFINITY);
    for p in pieces {
        for v in p.region.all_vertices() {
            let (x, y) = v.to_f64();
            lo = (lo.0.min(x), lo.1.min(y));
            hi = (hi.0.max(x), hi.1.max(y));
        }
    }
    if pieces.is_empty() {
        lo = (0.0, 0.0);
        hi = (1.0, 1.0);
    }
    let span = (hi.0 - lo.0).max(hi.1 - lo.1).max(1e-12);
    let margin = 0.04 * span;
    let scale = CANVAS / (span + 2.0 * margin);
    let (w, h) = ((hi.0 - lo.0 + 2.0 * margin) * scale, (hi.1 - lo.1 + 2.0 * margin) * scale);
    let tx = |x: f64| (x - lo.0 + margin) * scale;
    let ty = |y: f64| (hi.1 + margin - y) * scale;
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{w:.6}\" height=\"{h:.6}\" viewBox=\"0 0 {w:.6} {h:.6}\">"
    );
    for p in pieces {
        let mut d = String::new();
        let mut ring = |pts: &[wallkit_core::exact::Point]| {
            for (i, v) in pts.iter().enumerate() {
                let (x, y) = v.to_f64();
                let _ = write!(d, "{}{:.6} {:.6} ", if i == 0 { "M" } else { "L" }, tx(x), ty(y));
            }
            d.push_str("Z ");
        };
        ring(p.region.outer().vertices());
        if let Some(hole) = p.region.hole() {
            ring(hole.vertices());
        }
        let _ = writeln!(
            out,
            "  <path d=\"{}\" fill=\"{}\" fill-rule=\"evenodd\" stroke=\"#222222\" stroke-width=\"1\"><title>{}</title></path>",
            d.trim_end(),
            p.fill,
            p.label
        );
    }
    out.push_str("</svg>\n");
    out
}

/// `periods` consecutive periods of a wall, coloured by class.
pub fn render_wall(shape: &Region, tc: &ThicknessCertificate, periods: usize) -> String {
    let mut pieces = Vec::new();
    let start = -((periods as i64 - 1) / 2);
    for m in start..start + periods as i64 {
        let shift = tc.config.period.scale(&Scalar::int(m));
        for (g, &k) in tc.config.units.iter().zip(&tc.classes) {
            let pose = g.translated(&shift);
            pieces.push(Piece { region: shape.transformed(&pose), fill: class_color(k - 1), label: format!("class {k}") });
        }
    }
    render(&pieces)
}

/// A corona witness with the central copy in black.
pub fn render_witness(shape: &Region, w: &CoronaWitness) -> String {
    let mut pieces = vec![Piece { region: shape.transformed(&w.center), fill: "#222222", label: "center".into() }];
    for (k, layer) in w.layers.iter().enumerate() {
        for g in layer {
            pieces.push(Piece { region: shape.transformed(g), fill: class_color(k), label: format!("layer {}", k + 1) });
        }
    }
    render(&pieces)
}

/// Plain copies, all in the first colour.
pub fn render_units(shape: &Region, units: &[Isometry]) -> String {
    let pieces: Vec<Piece> = units.iter().map(|g| Piece { region: shape.transformed(g), fill: class_color(0), label: "unit".into() }).collect();
    render(&pieces)
}

#[cfg(test)]
mod tests {
    use super::*;
    use wallkit_core::exact::Point;
    use wallkit_core::geom::Polygon;
    use wallkit_core::wall::StripConfig;

    #[test]
    fn three_rows_three_periods() {
        let sq = Region::simple(Polygon::new(vec![Point::int(0, 0), Point::int(1, 0), Point::int(1, 1), Point::int(0, 1)]).unwrap());
        let units = (0..3).map(|y| Isometry::translation(Point::int(0, y))).collect();
        let tc = ThicknessCertificate { config: StripConfig { units, period: Point::int(1, 0) }, classes: vec![1, 2, 3] };
        let svg = render_wall(&sq, &tc, 3);
        assert_eq!(svg.matches("<path").count(), 9);
        for k in 0..3 {
            assert_eq!(svg.matches(class_color(k)).count(), 3);
        }
    }
}
