use crate::error::Result;
use crate::geometry::{Point, Rect};

use super::Node;

/// Lipschitz constant (in `d_∞` per unit parameter) and an enclosing box, both
/// valid over some parameter window.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bounds {
    pub lipschitz: f64,
    pub bbox: Rect,
}

impl Bounds {
    fn point(p: Point) -> Self {
        Bounds {
            lipschitz: 0.0,
            bbox: Rect::point(p),
        }
    }
}

fn interval_product(a: (f64, f64), b: (f64, f64)) -> (f64, f64) {
    let c = [a.0 * b.0, a.0 * b.1, a.1 * b.0, a.1 * b.1];
    (
        c.iter().copied().fold(f64::INFINITY, f64::min),
        c.iter().copied().fold(f64::NEG_INFINITY, f64::max),
    )
}

fn scaled_interval(lo: f64, hi: f64, s: f64) -> (f64, f64) {
    let (a, b) = (s * lo, s * hi);
    (a.min(b), a.max(b))
}

/// Bounds of `node` over `[t0, t1]`; degenerate windows yield a point box.
pub(super) fn node_bounds(node: &Node, t0: f64, t1: f64) -> Result<Bounds> {
    if t1 <= t0 {
        return Ok(Bounds::point(node.eval(t0)?));
    }
    let b = match node {
        Node::Constant(p) => Bounds::point(*p),
        Node::Polygonal(poly) => {
            let params = poly.params();
            let points = poly.points();
            let first = poly.segment_of(t0);
            let mut bbox = Rect::point(poly.eval(t0));
            bbox.include(poly.eval(t1));
            let mut lipschitz: f64 = 0.0;
            let mut i = first;
            while i + 1 < params.len() && params[i] < t1 {
                if params[i + 1] > t0 {
                    lipschitz = lipschitz.max(poly.slope(i));
                }
                if params[i] > t0 {
                    bbox.include(points[i]);
                }
                i += 1;
            }
            Bounds { lipschitz, bbox }
        }
        Node::Hilbert(h) => {
            let (lipschitz, bbox) = if t0 <= 0.0 && t1 >= 1.0 {
                (h.lipschitz(), h.hull())
            } else {
                (h.lipschitz(), h.bbox_on(t0, t1))
            };
            Bounds { lipschitz, bbox }
        }
        Node::Concat(pieces) => {
            let first = pieces.partition_point(|p| p.end < t0);
            let mut acc: Option<Bounds> = None;
            for piece in pieces[first..].iter().take_while(|p| p.start <= t1) {
                let (u0, u1) = (piece.pull(t0), piece.pull(t1));
                let child = piece.curve.bounds_on(u0, u1)?;
                let scaled = if u1 > u0 {
                    Bounds {
                        lipschitz: child.lipschitz / piece.width(),
                        bbox: child.bbox,
                    }
                } else {
                    Bounds::point(piece.curve.eval_in_domain(u0)?)
                };
                acc = Some(match acc {
                    None => scaled,
                    Some(b) => Bounds {
                        lipschitz: b.lipschitz.max(scaled.lipschitz),
                        bbox: b.bbox.union(&scaled.bbox),
                    },
                });
            }
            match acc {
                Some(b) => b,
                None => Bounds::point(node.eval(t0)?),
            }
        }
        Node::Affine {
            curve,
            scale,
            translate,
        } => {
            let c = curve.bounds_on(t0, t1)?;
            let (x_lo, x_hi) = scaled_interval(c.bbox.x_lo, c.bbox.x_hi, scale[0]);
            let (y_lo, y_hi) = scaled_interval(c.bbox.y_lo, c.bbox.y_hi, scale[1]);
            Bounds {
                lipschitz: c.lipschitz * scale[0].abs().max(scale[1].abs()),
                bbox: Rect {
                    x_lo: x_lo + translate[0],
                    x_hi: x_hi + translate[0],
                    y_lo: y_lo + translate[1],
                    y_hi: y_hi + translate[1],
                },
            }
        }
        Node::Restrict { curve, start, end } => {
            let w = end - start;
            let c = curve.bounds_on(start + t0 * w, start + t1 * w)?;
            Bounds {
                lipschitz: c.lipschitz * w,
                bbox: c.bbox,
            }
        }
        Node::Sum(a, b) => {
            let (p, q) = (a.bounds_on(t0, t1)?, b.bounds_on(t0, t1)?);
            Bounds {
                lipschitz: p.lipschitz + q.lipschitz,
                bbox: Rect {
                    x_lo: p.bbox.x_lo + q.bbox.x_lo,
                    x_hi: p.bbox.x_hi + q.bbox.x_hi,
                    y_lo: p.bbox.y_lo + q.bbox.y_lo,
                    y_hi: p.bbox.y_hi + q.bbox.y_hi,
                },
            }
        }
        Node::Product(a, b) => {
            let (p, q) = (a.bounds_on(t0, t1)?, b.bounds_on(t0, t1)?);
            let (x_lo, x_hi) =
                interval_product((p.bbox.x_lo, p.bbox.x_hi), (q.bbox.x_lo, q.bbox.x_hi));
            let (y_lo, y_hi) =
                interval_product((p.bbox.y_lo, p.bbox.y_hi), (q.bbox.y_lo, q.bbox.y_hi));
            Bounds {
                lipschitz: p.lipschitz * q.bbox.max_abs() + p.bbox.max_abs() * q.lipschitz,
                bbox: Rect {
                    x_lo,
                    x_hi,
                    y_lo,
                    y_hi,
                },
            }
        }
        Node::Scale(c, a) => {
            let p = a.bounds_on(t0, t1)?;
            let (x_lo, x_hi) = scaled_interval(p.bbox.x_lo, p.bbox.x_hi, *c);
            let (y_lo, y_hi) = scaled_interval(p.bbox.y_lo, p.bbox.y_hi, *c);
            Bounds {
                lipschitz: p.lipschitz * c.abs(),
                bbox: Rect {
                    x_lo,
                    x_hi,
                    y_lo,
                    y_hi,
                },
            }
        }
        Node::PolyApply { polynomial, curves } => {
            let children = curves
                .iter()
                .map(|c| c.bounds_on(t0, t1))
                .collect::<Result<Vec<_>>>()?;
            let xs: Vec<_> = children.iter().map(|b| (b.bbox.x_lo, b.bbox.x_hi)).collect();
            let ys: Vec<_> = children.iter().map(|b| (b.bbox.y_lo, b.bbox.y_hi)).collect();
            let (x_lo, x_hi) = polynomial.eval_interval(&xs);
            let (y_lo, y_hi) = polynomial.eval_interval(&ys);
            let mags: Vec<f64> = children.iter().map(|b| b.bbox.max_abs()).collect();
            let rates: Vec<f64> = children.iter().map(|b| b.lipschitz).collect();
            Bounds {
                lipschitz: polynomial.rate_bound(&mags, &rates),
                bbox: Rect {
                    x_lo,
                    x_hi,
                    y_lo,
                    y_hi,
                },
            }
        }
    };
    Ok(b)
}
