//! The curve kernel: an immutable combinator tree denoting a continuous map
//! `[0, 1] → ℝ²`, with exact evaluation and conservative Lipschitz tracking.

mod bounds;
mod hilbert;
mod metric;

use std::sync::Arc;

pub use bounds::Bounds;
pub use hilbert::{HilbertApprox, Orientation, MAX_ORDER};
pub use metric::{sup_norm, uniform_distance, DistanceEstimate};

use crate::error::{Error, Result};
use crate::geometry::{Point, Rect};
use crate::polynomial::Polynomial;

/// Default tolerance for endpoint matching when gluing pieces.
pub const GLUE_TOLERANCE: f64 = 1e-12;

/// A continuous plane curve on `[0, 1]`, cheap to clone and safe to share
/// between threads.
#[derive(Debug, Clone)]
pub struct Curve(Arc<Inner>);

#[derive(Debug)]
struct Inner {
    node: Node,
    bounds: Bounds,
}

/// The combinator nodes a [`Curve`] is built from.
#[derive(Debug, Clone)]
pub enum Node {
    Constant(Point),
    Polygonal(Polyline),
    Hilbert(HilbertApprox),
    /// Pieces partitioning `[0, 1]`; each piece's curve is pulled back affinely
    /// onto its subinterval.
    Concat(Vec<Piece>),
    /// `(s₁ x + t₁, s₂ y + t₂)`.
    Affine {
        curve: Curve,
        scale: [f64; 2],
        translate: [f64; 2],
    },
    /// The arc of `curve` over `[start, end]`, reparametrized onto `[0, 1]`.
    Restrict {
        curve: Curve,
        start: f64,
        end: f64,
    },
    Sum(Curve, Curve),
    /// Coordinatewise product.
    Product(Curve, Curve),
    Scale(f64, Curve),
    /// `H((a₁,b₁), …, (a_N,b_N)) = (H(a₁,…,a_N), H(b₁,…,b_N))`.
    PolyApply {
        polynomial: Polynomial,
        curves: Vec<Curve>,
    },
}

#[derive(Debug, Clone)]
pub struct Piece {
    pub start: f64,
    pub end: f64,
    pub curve: Curve,
}

impl Piece {
    /// Affine pullback of `t ∈ [start, end]` onto `[0, 1]`, exact at both ends.
    fn pull(&self, t: f64) -> f64 {
        if t <= self.start {
            0.0
        } else if t >= self.end {
            1.0
        } else {
            ((t - self.start) / (self.end - self.start)).clamp(0.0, 1.0)
        }
    }

    fn width(&self) -> f64 {
        self.end - self.start
    }
}

/// Piecewise-affine interpolant through `(params[i], points[i])`.
#[derive(Debug, Clone, PartialEq)]
pub struct Polyline {
    params: Vec<f64>,
    points: Vec<Point>,
}

impl Polyline {
    pub fn params(&self) -> &[f64] {
        &self.params
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    fn segment_of(&self, t: f64) -> usize {
        let last = self.params.len() - 2;
        self.params[1..=last].partition_point(|&p| p < t).min(last)
    }

    fn eval(&self, t: f64) -> Point {
        if t <= self.params[0] {
            return self.points[0];
        }
        if t >= self.params[self.params.len() - 1] {
            return self.points[self.points.len() - 1];
        }
        let i = self.segment_of(t);
        let (t0, t1) = (self.params[i], self.params[i + 1]);
        let s = ((t - t0) / (t1 - t0)).clamp(0.0, 1.0);
        self.points[i].lerp(self.points[i + 1], s)
    }

    fn slope(&self, i: usize) -> f64 {
        self.points[i].dist_inf(self.points[i + 1]) / (self.params[i + 1] - self.params[i])
    }
}

/// Arity up to which polynomial evaluation avoids the heap.
const INLINE_ARITY: usize = 8;

impl Node {
    pub(crate) fn eval(&self, t: f64) -> Result<Point> {
        let p = match self {
            Node::Constant(p) => *p,
            Node::Polygonal(poly) => poly.eval(t),
            Node::Hilbert(h) => h.eval(t),
            Node::Concat(pieces) => {
                let idx = pieces.partition_point(|p| p.end < t);
                let piece = pieces
                    .get(idx)
                    .filter(|p| p.start <= t)
                    .ok_or_else(|| Error::Malformed(format!("no piece covers t = {t}")))?;
                piece.curve.eval_in_domain(piece.pull(t))?
            }
            Node::Affine {
                curve,
                scale,
                translate,
            } => {
                let p = curve.eval_in_domain(t)?;
                Point::new(scale[0] * p.x + translate[0], scale[1] * p.y + translate[1])
            }
            Node::Restrict { curve, start, end } => {
                let u = if t >= 1.0 { *end } else { start + t * (end - start) };
                curve.eval_in_domain(u.clamp(0.0, 1.0))?
            }
            Node::Sum(a, b) => {
                let (p, q) = (a.eval_in_domain(t)?, b.eval_in_domain(t)?);
                Point::new(p.x + q.x, p.y + q.y)
            }
            Node::Product(a, b) => {
                let (p, q) = (a.eval_in_domain(t)?, b.eval_in_domain(t)?);
                Point::new(p.x * q.x, p.y * q.y)
            }
            Node::Scale(c, a) => {
                let p = a.eval_in_domain(t)?;
                Point::new(c * p.x, c * p.y)
            }
            Node::PolyApply { polynomial, curves } if curves.len() <= INLINE_ARITY => {
                let (mut xs, mut ys) = ([0.0; INLINE_ARITY], [0.0; INLINE_ARITY]);
                for (i, c) in curves.iter().enumerate() {
                    let p = c.eval_in_domain(t)?;
                    (xs[i], ys[i]) = (p.x, p.y);
                }
                let n = curves.len();
                Point::new(polynomial.eval(&xs[..n]), polynomial.eval(&ys[..n]))
            }
            Node::PolyApply { polynomial, curves } => {
                let mut xs = Vec::with_capacity(curves.len());
                let mut ys = Vec::with_capacity(curves.len());
                for c in curves {
                    let p = c.eval_in_domain(t)?;
                    xs.push(p.x);
                    ys.push(p.y);
                }
                Point::new(polynomial.eval(&xs), polynomial.eval(&ys))
            }
        };
        Ok(p)
    }
}

impl Curve {
    fn from_node(node: Node) -> Result<Curve> {
        let bounds = bounds::node_bounds(&node, 0.0, 1.0)?;
        Ok(Curve(Arc::new(Inner { node, bounds })))
    }

    pub fn node(&self) -> &Node {
        &self.0.node
    }

    /// Global Lipschitz bound in `d_∞` per unit parameter.
    pub fn lipschitz(&self) -> f64 {
        self.0.bounds.lipschitz
    }

    /// Conservative bounding box of the image.
    pub fn bbox(&self) -> Rect {
        self.0.bounds.bbox
    }

    /// Whether two handles share the same tree.
    pub fn ptr_eq(&self, other: &Curve) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    /// Evaluates the curve. Interior breakpoints of concatenations resolve to
    /// the left piece.
    pub fn eval(&self, t: f64) -> Result<Point> {
        if !(0.0..=1.0).contains(&t) {
            return Err(Error::Domain(t));
        }
        self.eval_in_domain(t)
    }

    pub(crate) fn eval_in_domain(&self, t: f64) -> Result<Point> {
        self.0.node.eval(t)
    }

    /// Bounds valid on the parameter window `[t0, t1] ⊆ [0, 1]`.
    pub fn bounds_on(&self, t0: f64, t1: f64) -> Result<Bounds> {
        if t0 <= 0.0 && t1 >= 1.0 {
            return Ok(self.0.bounds);
        }
        bounds::node_bounds(&self.0.node, t0.max(0.0), t1.min(1.0))
    }

    pub fn bounds(&self) -> Bounds {
        self.0.bounds
    }

    /// The constant curve.
    pub fn constant(p: Point) -> Curve {
        Curve::from_node(Node::Constant(p)).expect("constant bounds are infallible")
    }

    /// Piecewise-affine curve through `(t_i, p_i)` with `t_0 = 0`, `t_last = 1`
    /// strictly increasing.
    pub fn polygonal(vertices: Vec<(f64, Point)>) -> Result<Curve> {
        if vertices.len() < 2 {
            return Err(Error::Structure("a polygonal curve needs at least two vertices".into()));
        }
        let (params, points): (Vec<f64>, Vec<Point>) = vertices.into_iter().unzip();
        if params[0] != 0.0 || params[params.len() - 1] != 1.0 {
            return Err(Error::Structure(
                "polygonal parameters must start at 0 and end at 1".into(),
            ));
        }
        if let Some(i) = params.windows(2).position(|w| !(w[0] < w[1])) {
            return Err(Error::Structure(format!(
                "polygonal parameters not strictly increasing at index {}",
                i + 1
            )));
        }
        if points.iter().any(|p| !p.is_finite()) {
            return Err(Error::Structure("polygonal vertex is not finite".into()));
        }
        Curve::from_node(Node::Polygonal(Polyline { params, points }))
    }

    /// Straight segment from `a` to `b`.
    pub fn segment(a: Point, b: Point) -> Curve {
        Curve::polygonal(vec![(0.0, a), (1.0, b)]).expect("two-vertex polyline is valid")
    }

    pub fn hilbert_approx(order: u32, target: Rect, orientation: Orientation) -> Result<Curve> {
        if order == 0 || order > MAX_ORDER {
            return Err(Error::Precondition(format!(
                "Hilbert order must lie in 1..={MAX_ORDER}, got {order}"
            )));
        }
        target.require_non_degenerate()?;
        Curve::from_node(Node::Hilbert(HilbertApprox {
            order,
            target,
            orientation,
        }))
    }

    /// Glues curves on consecutive subintervals with the default tolerance.
    pub fn concat(pieces: Vec<(f64, f64, Curve)>) -> Result<Curve> {
        Curve::concat_with_tolerance(pieces, GLUE_TOLERANCE)
    }

    pub fn concat_with_tolerance(pieces: Vec<(f64, f64, Curve)>, tolerance: f64) -> Result<Curve> {
        if pieces.is_empty() {
            return Err(Error::Structure("concatenation needs at least one piece".into()));
        }
        let pieces: Vec<Piece> = pieces
            .into_iter()
            .map(|(start, end, curve)| Piece { start, end, curve })
            .collect();
        if pieces[0].start != 0.0 || pieces[pieces.len() - 1].end != 1.0 {
            return Err(Error::Structure(
                "concatenation intervals must cover [0, 1] exactly".into(),
            ));
        }
        for (i, p) in pieces.iter().enumerate() {
            if !(p.start < p.end) {
                return Err(Error::Structure(format!(
                    "piece {i} has empty interval [{}, {}]",
                    p.start, p.end
                )));
            }
        }
        for (i, w) in pieces.windows(2).enumerate() {
            if (w[1].start - w[0].end).abs() > tolerance {
                return Err(Error::Structure(format!(
                    "intervals {i} and {} do not abut: {} vs {}",
                    i + 1,
                    w[0].end,
                    w[1].start
                )));
            }
            let gap = w[0].curve.eval(1.0)?.dist_inf(w[1].curve.eval(0.0)?);
            if !(gap <= tolerance) {
                return Err(Error::Continuity {
                    left: i,
                    right: i + 1,
                    gap,
                    tolerance,
                });
            }
        }
        Curve::from_node(Node::Concat(pieces))
    }

    /// `(s₁ x + t₁, s₂ y + t₂)`.
    pub fn affine(&self, scale: [f64; 2], translate: [f64; 2]) -> Result<Curve> {
        if !scale.iter().chain(&translate).all(|v| v.is_finite()) {
            return Err(Error::Structure("affine coefficients must be finite".into()));
        }
        Curve::from_node(Node::Affine {
            curve: self.clone(),
            scale,
            translate,
        })
    }

    /// Affine image taking `from` onto `to`.
    pub fn map_rect(&self, from: &Rect, to: &Rect) -> Result<Curve> {
        from.require_non_degenerate()?;
        let sx = to.width() / from.width();
        let sy = to.height() / from.height();
        self.affine([sx, sy], [to.x_lo - sx * from.x_lo, to.y_lo - sy * from.y_lo])
    }

    /// The arc over `[start, end]` reparametrized onto `[0, 1]`.
    pub fn restrict(&self, start: f64, end: f64) -> Result<Curve> {
        if !(0.0 <= start && start < end && end <= 1.0) {
            return Err(Error::Structure(format!(
                "restriction window [{start}, {end}] is not a nondegenerate subinterval of [0, 1]"
            )));
        }
        Curve::from_node(Node::Restrict {
            curve: self.clone(),
            start,
            end,
        })
    }

    pub fn sum(&self, other: &Curve) -> Curve {
        Curve::from_node(Node::Sum(self.clone(), other.clone())).expect("sum bounds are infallible")
    }

    /// Coordinatewise product.
    pub fn product(&self, other: &Curve) -> Curve {
        Curve::from_node(Node::Product(self.clone(), other.clone()))
            .expect("product bounds are infallible")
    }

    pub fn scale(&self, c: f64) -> Curve {
        Curve::from_node(Node::Scale(c, self.clone())).expect("scale bounds are infallible")
    }

    /// `P(f₁, …, f_N)` evaluated coordinatewise.
    pub fn poly_apply(polynomial: Polynomial, curves: Vec<Curve>) -> Result<Curve> {
        polynomial.validate()?;
        if polynomial.arity() != curves.len() {
            return Err(Error::Structure(format!(
                "polynomial has arity {} but {} curves were supplied",
                polynomial.arity(),
                curves.len()
            )));
        }
        Curve::from_node(Node::PolyApply { polynomial, curves })
    }
}

/// Builds a Concat from pieces, dropping pieces whose interval is empty.
pub(crate) fn concat_nonempty(pieces: Vec<(f64, f64, Curve)>) -> Result<Curve> {
    let kept: Vec<_> = pieces.into_iter().filter(|(a, b, _)| a < b).collect();
    if kept.len() == 1 {
        let (a, b, c) = &kept[0];
        if *a == 0.0 && *b == 1.0 {
            return Ok(c.clone());
        }
    }
    Curve::concat(kept)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: f64, y: f64) -> Point {
        Point::new(x, y)
    }

    #[test]
    fn constant_evaluates_everywhere() {
        let c = Curve::constant(p(1.0, 1.0));
        assert_eq!(c.eval(0.37).unwrap(), p(1.0, 1.0));
        assert_eq!(c.lipschitz(), 0.0);
    }

    #[test]
    fn domain_errors() {
        let c = Curve::constant(p(0.0, 0.0));
        assert_eq!(c.eval(1.5), Err(Error::Domain(1.5)));
        assert!(matches!(c.eval(-0.1), Err(Error::Domain(_))));
        assert!(matches!(c.eval(f64::NAN), Err(Error::Domain(_))));
    }

    #[test]
    fn single_piece_concat_is_identity() {
        let f = Curve::hilbert_approx(3, Rect::UNIT, Orientation::Standard).unwrap();
        let g = Curve::concat(vec![(0.0, 1.0, f.clone())]).unwrap();
        for i in 0..=100 {
            let t = i as f64 / 100.0;
            assert_eq!(f.eval(t).unwrap(), g.eval(t).unwrap());
        }
    }

    #[test]
    fn concat_rejects_gaps_between_values() {
        let a = Curve::constant(p(0.0, 0.0));
        let b = Curve::constant(p(0.0, 1.0));
        let err = Curve::concat(vec![(0.0, 0.5, a), (0.5, 1.0, b)]).unwrap_err();
        assert!(matches!(err, Error::Continuity { gap, .. } if gap == 1.0));
    }

    #[test]
    fn concat_rejects_non_partitions() {
        let a = Curve::constant(p(0.0, 0.0));
        assert!(matches!(
            Curve::concat(vec![(0.0, 0.4, a.clone()), (0.5, 1.0, a.clone())]),
            Err(Error::Structure(_))
        ));
        assert!(matches!(
            Curve::concat(vec![(0.0, 0.9, a.clone())]),
            Err(Error::Structure(_))
        ));
        assert!(matches!(Curve::concat(vec![]), Err(Error::Structure(_))));
    }

    #[test]
    fn concat_gap_within_tolerance_is_malformed_at_eval() {
        let a = Curve::constant(p(0.0, 0.0));
        let c = Curve::concat(vec![(0.0, 0.5, a.clone()), (0.5 + 1e-13, 1.0, a)]).unwrap();
        assert!(matches!(c.eval(0.5 + 5e-14), Err(Error::Malformed(_))));
        assert_eq!(c.eval(0.5).unwrap(), p(0.0, 0.0));
    }

    #[test]
    fn breakpoints_take_left_piece() {
        let up = Curve::segment(p(0.0, 0.0), p(1.0, 0.0));
        let flat = Curve::segment(p(1.0, 0.0), p(1.0, 0.0));
        let c = Curve::concat(vec![(0.0, 0.5, up), (0.5, 1.0, flat)]).unwrap();
        assert_eq!(c.eval(0.5).unwrap(), p(1.0, 0.0));
        assert_eq!(c.eval(0.25).unwrap(), p(0.5, 0.0));
    }

    #[test]
    fn polygonal_midpoint_and_errors() {
        let s = Curve::polygonal(vec![(0.0, p(0.0, 0.0)), (1.0, p(1.0, 1.0))]).unwrap();
        assert_eq!(s.eval(0.5).unwrap(), p(0.5, 0.5));
        assert!(Curve::polygonal(vec![(0.0, p(0.0, 0.0)), (0.0, p(1.0, 1.0)), (1.0, p(0.0, 0.0))])
            .is_err());
        assert!(Curve::polygonal(vec![(0.1, p(0.0, 0.0)), (1.0, p(1.0, 1.0))]).is_err());
    }

    #[test]
    fn collinear_polygonal_matches_segment() {
        let s = Curve::segment(p(0.0, 0.0), p(2.0, 1.0));
        let c = Curve::polygonal(vec![
            (0.0, p(0.0, 0.0)),
            (0.5, p(1.0, 0.5)),
            (1.0, p(2.0, 1.0)),
        ])
        .unwrap();
        for i in 0..=64 {
            let t = i as f64 / 64.0;
            let (a, b) = (s.eval(t).unwrap(), c.eval(t).unwrap());
            assert!(a.dist_inf(b) <= 1e-15);
        }
    }

    #[test]
    fn scalar_multiple_scales_pointwise() {
        let f = Curve::hilbert_approx(4, Rect::UNIT, Orientation::Standard).unwrap();
        for n in 1..=5 {
            let c = 1.0 / n as f64;
            let g = f.scale(c);
            for i in 0..=50 {
                let t = i as f64 / 50.0;
                let (a, b) = (f.eval(t).unwrap(), g.eval(t).unwrap());
                assert_eq!(b, Point::new(c * a.x, c * a.y));
            }
        }
    }

    #[test]
    fn poly_apply_on_constants() {
        let xy = Polynomial::parse("x*y", 0).unwrap();
        let c = Curve::poly_apply(
            xy,
            vec![Curve::constant(p(2.0, 3.0)), Curve::constant(p(5.0, 7.0))],
        )
        .unwrap();
        assert_eq!(c.eval(0.3).unwrap(), p(10.0, 21.0));
    }

    #[test]
    fn poly_apply_arity_mismatch() {
        let xy = Polynomial::parse("x*y", 0).unwrap();
        assert!(matches!(
            Curve::poly_apply(xy, vec![Curve::constant(p(1.0, 1.0))]),
            Err(Error::Structure(_))
        ));
    }

    #[test]
    fn identity_polynomial_is_identity() {
        let f = Curve::hilbert_approx(3, Rect::SYMMETRIC, Orientation::Standard).unwrap();
        let g = Curve::poly_apply(Polynomial::variable(0, 1), vec![f.clone()]).unwrap();
        for i in 0..=200 {
            let t = i as f64 / 200.0;
            assert_eq!(f.eval(t).unwrap(), g.eval(t).unwrap());
        }
    }

    #[test]
    fn restrict_reparametrizes() {
        let s = Curve::segment(p(0.0, 0.0), p(1.0, 2.0));
        let r = s.restrict(0.25, 0.75).unwrap();
        assert_eq!(r.eval(0.0).unwrap(), s.eval(0.25).unwrap());
        assert_eq!(r.eval(1.0).unwrap(), s.eval(0.75).unwrap());
        assert!((r.lipschitz() - 1.0).abs() < 1e-15);
    }
}
