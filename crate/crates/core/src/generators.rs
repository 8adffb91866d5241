//! Primitive filling curves: Hilbert approximants, rectangle fillers with
//! prescribed endpoints, polygonal curves and polygonal approximations.

use serde::{Deserialize, Serialize};

use crate::curve::{Curve, Orientation};
use crate::error::{Error, Result};
use crate::geometry::{Point, Rect};

/// Default approximant order: resolution 1/64 on the unit square.
pub const DEFAULT_ORDER: u32 = 6;

/// Resolution promise of a filling curve: every point of `target` lies within
/// `delta` (in `d_∞`, cellwise) of the image.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FillerGuarantee {
    pub delta: f64,
    pub target: Rect,
}

impl FillerGuarantee {
    pub fn for_order(target: Rect, order: u32) -> Self {
        FillerGuarantee {
            delta: target.max_side() / (1u64 << order) as f64,
            target,
        }
    }

    /// Grid size whose cells are exactly the approximant's cells.
    pub fn grid(&self) -> usize {
        (self.target.max_side() / self.delta).round() as usize
    }
}

/// Order-`k` Hilbert approximant onto `target`, starting in the cell at the
/// lower-left corner.
pub fn hilbert(order: u32, target: Rect) -> Result<Curve> {
    Curve::hilbert_approx(order, target, Orientation::Standard)
}

/// A curve onto `target` (at resolution `max_side · 2^-order`) running from `u`
/// to `v`: a segment to the approximant's start on `[0, 1/3]`, the approximant
/// on `[1/3, 2/3]` and a segment to `v` on `[2/3, 1]`.
///
/// `eval(0) == u` and `eval(1) == v` hold bit-exactly.
pub fn filler_with_endpoints(target: Rect, u: Point, v: Point, order: u32) -> Result<Curve> {
    target.require_non_degenerate()?;
    for (name, p) in [("u", u), ("v", v)] {
        if !target.contains(p) {
            return Err(Error::Precondition(format!(
                "endpoint {name} = ({}, {}) lies outside the target",
                p.x, p.y
            )));
        }
    }
    let fill = hilbert(order, target)?;
    let head = Curve::segment(u, fill.eval(0.0)?);
    let tail = Curve::segment(fill.eval(1.0)?, v);
    Curve::concat(vec![
        (0.0, 1.0 / 3.0, head),
        (1.0 / 3.0, 2.0 / 3.0, fill),
        (2.0 / 3.0, 1.0, tail),
    ])
}

/// Piecewise-affine curve through `(t_i, p_i)`.
pub fn polygonal(vertices: Vec<(f64, Point)>) -> Result<Curve> {
    Curve::polygonal(vertices)
}

/// Polygonal approximation with its certified uniform error.
#[derive(Debug, Clone)]
pub struct PolygonalApproximation {
    pub curve: Curve,
    /// `L_f / N`: every point of `f` on `[t_{i-1}, t_i]` is within `L_f/N` of
    /// both node values, and the approximant is their convex combination.
    pub certified_error: f64,
}

/// Polygon joining `f(i/N)` for `i = 0..=N`.
pub fn polygonal_approximation(f: &Curve, pieces: usize) -> Result<PolygonalApproximation> {
    if pieces == 0 {
        return Err(Error::Precondition("at least one piece is required".into()));
    }
    let n = pieces as f64;
    let vertices = (0..=pieces)
        .map(|i| {
            let t = if i == pieces { 1.0 } else { i as f64 / n };
            Ok((t, f.eval(t)?))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PolygonalApproximation {
        curve: Curve::polygonal(vertices)?,
        certified_error: f.lipschitz() / n,
    })
}
