use std::fmt::Write;

use sfcurve::Curve;

use crate::args::RenderArgs;
use crate::document::CurveDocument;
use crate::failure::Failure;

/// SVG 1.1 document with the trace at `samples` equispaced parameters as one
/// polyline. The y axis points up, as in the plane.
pub fn render(args: &RenderArgs) -> Result<String, Failure> {
    if args.samples < 2 {
        return Err(Failure::usage("--samples must be at least 2"));
    }
    let curve = CurveDocument::read(&args.input)?.build()?;
    Ok(svg(&curve, args.samples, args.stroke, &args.color, args.size)?)
}

fn svg(curve: &Curve, samples: usize, stroke: Option<f64>, color: &str, size: u32) -> Result<String, Failure> {
    let points = (0..samples)
        .map(|i| curve.eval(i as f64 / (samples - 1) as f64))
        .collect::<Result<Vec<_>, _>>()?;
    let (mut x_lo, mut x_hi, mut y_lo, mut y_hi) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for p in &points {
        x_lo = x_lo.min(p.x);
        x_hi = x_hi.max(p.x);
        y_lo = y_lo.min(p.y);
        y_hi = y_hi.max(p.y);
    }
    let side = (x_hi - x_lo).max(y_hi - y_lo);
    let side = if side > 0.0 { side } else { 1.0 };
    let stroke = stroke.unwrap_or(side / 500.0);
    let pad = 0.02 * side + stroke;
    let (vx, vy, vw, vh) = (x_lo - pad, -(y_hi + pad), x_hi - x_lo + 2.0 * pad, y_hi - y_lo + 2.0 * pad);
    let height = (size as f64 * vh / vw).round().max(1.0) as u32;
    let mut out = String::new();
    writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size}" height="{height}" viewBox="{vx} {vy} {vw} {vh}">"#
    )
    .unwrap();
    write!(
        out,
        r#"<polyline fill="none" stroke="{}" stroke-width="{stroke}" stroke-linejoin="round" points=""#,
        escape(color)
    )
    .unwrap();
    for (i, p) in points.iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        write!(out, "{},{}", p.x, -p.y).unwrap();
    }
    writeln!(out, r#""/>"#).unwrap();
    writeln!(out, "</svg>").unwrap();
    Ok(out)
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('"', "&quot;").replace('<', "&lt;")
}

#[cfg(test)]
mod tests {
    use super::*;
    use sfcurve::Point;

    #[test]
    fn polyline_has_one_vertex_per_sample() {
        let c = Curve::segment(Point::ORIGIN, Point::new(1.0, 2.0));
        let s = svg(&c, 11, None, "red", 100).unwrap();
        assert!(s.contains("<polyline"));
        let points = s.split("points=\"").nth(1).unwrap().split('"').next().unwrap();
        assert_eq!(points.split(' ').count(), 11);
        assert!(s.contains("0,-0") && s.contains("1,-2"));
    }

    #[test]
    fn constant_curve_gets_a_unit_view() {
        let s = svg(&Curve::constant(Point::ORIGIN), 3, Some(0.1), "black", 50).unwrap();
        assert!(s.contains("stroke-width=\"0.1\""));
    }
}
