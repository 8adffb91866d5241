//! `CurveSpec`: the JSON exchange format for combinator trees.
//!
//! Every node is an object tagged by `"kind"`; polynomials are term lists
//! `[{"c": coefficient, "e": [exponents]}]`. Lipschitz bounds are not stored:
//! they are recomputed when a spec is turned back into a [`Curve`], which also
//! re-runs every structural and continuity check.

use serde::{Deserialize, Serialize};

use crate::curve::{Curve, Node, Orientation};
use crate::error::{Error, Result};
use crate::geometry::{Point, Rect};
use crate::polynomial::Polynomial;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum CurveSpec {
    Constant {
        point: Point,
    },
    Polygonal {
        params: Vec<f64>,
        points: Vec<Point>,
    },
    Hilbert {
        order: u32,
        target: Rect,
        #[serde(default)]
        orientation: Orientation,
    },
    Concat {
        pieces: Vec<PieceSpec>,
    },
    Affine {
        curve: Box<CurveSpec>,
        scale: [f64; 2],
        translate: [f64; 2],
    },
    Restrict {
        curve: Box<CurveSpec>,
        interval: [f64; 2],
    },
    Sum {
        left: Box<CurveSpec>,
        right: Box<CurveSpec>,
    },
    Product {
        left: Box<CurveSpec>,
        right: Box<CurveSpec>,
    },
    Scale {
        factor: f64,
        curve: Box<CurveSpec>,
    },
    PolyApply {
        polynomial: Polynomial,
        curves: Vec<CurveSpec>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PieceSpec {
    pub interval: [f64; 2],
    pub curve: CurveSpec,
}

impl CurveSpec {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("curve specs always serialize")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("curve specs always serialize")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Structure(format!("invalid curve spec: {e}")))
    }

    /// Builds the curve, validating the whole tree.
    pub fn build(&self) -> Result<Curve> {
        Ok(match self {
            CurveSpec::Constant { point } => Curve::constant(*point),
            CurveSpec::Polygonal { params, points } => {
                if params.len() != points.len() {
                    return Err(Error::Structure(format!(
                        "polygonal has {} parameters but {} points",
                        params.len(),
                        points.len()
                    )));
                }
                Curve::polygonal(params.iter().copied().zip(points.iter().copied()).collect())?
            }
            CurveSpec::Hilbert {
                order,
                target,
                orientation,
            } => Curve::hilbert_approx(*order, *target, *orientation)?,
            CurveSpec::Concat { pieces } => Curve::concat(
                pieces
                    .iter()
                    .map(|p| Ok((p.interval[0], p.interval[1], p.curve.build()?)))
                    .collect::<Result<Vec<_>>>()?,
            )?,
            CurveSpec::Affine {
                curve,
                scale,
                translate,
            } => curve.build()?.affine(*scale, *translate)?,
            CurveSpec::Restrict { curve, interval } => {
                curve.build()?.restrict(interval[0], interval[1])?
            }
            CurveSpec::Sum { left, right } => left.build()?.sum(&right.build()?),
            CurveSpec::Product { left, right } => left.build()?.product(&right.build()?),
            CurveSpec::Scale { factor, curve } => {
                if !factor.is_finite() {
                    return Err(Error::Structure("scale factor must be finite".into()));
                }
                curve.build()?.scale(*factor)
            }
            CurveSpec::PolyApply { polynomial, curves } => Curve::poly_apply(
                polynomial.clone(),
                curves.iter().map(CurveSpec::build).collect::<Result<Vec<_>>>()?,
            )?,
        })
    }
}

impl From<&Curve> for CurveSpec {
    fn from(curve: &Curve) -> Self {
        let b = |c: &Curve| Box::new(CurveSpec::from(c));
        match curve.node() {
            Node::Constant(p) => CurveSpec::Constant { point: *p },
            Node::Polygonal(poly) => CurveSpec::Polygonal {
                params: poly.params().to_vec(),
                points: poly.points().to_vec(),
            },
            Node::Hilbert(h) => CurveSpec::Hilbert {
                order: h.order(),
                target: h.target(),
                orientation: h.orientation(),
            },
            Node::Concat(pieces) => CurveSpec::Concat {
                pieces: pieces
                    .iter()
                    .map(|p| PieceSpec {
                        interval: [p.start, p.end],
                        curve: CurveSpec::from(&p.curve),
                    })
                    .collect(),
            },
            Node::Affine {
                curve,
                scale,
                translate,
            } => CurveSpec::Affine {
                curve: b(curve),
                scale: *scale,
                translate: *translate,
            },
            Node::Restrict { curve, start, end } => CurveSpec::Restrict {
                curve: b(curve),
                interval: [*start, *end],
            },
            Node::Sum(l, r) => CurveSpec::Sum {
                left: b(l),
                right: b(r),
            },
            Node::Product(l, r) => CurveSpec::Product {
                left: b(l),
                right: b(r),
            },
            Node::Scale(c, a) => CurveSpec::Scale {
                factor: *c,
                curve: b(a),
            },
            Node::PolyApply { polynomial, curves } => CurveSpec::PolyApply {
                polynomial: polynomial.clone(),
                curves: curves.iter().map(CurveSpec::from).collect(),
            },
        }
    }
}

impl Curve {
    pub fn to_spec(&self) -> CurveSpec {
        CurveSpec::from(self)
    }

    pub fn from_spec(spec: &CurveSpec) -> Result<Curve> {
        spec.build()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn node_shapes() {
        let c = Curve::constant(Point::new(0.5, -1.0));
        assert_eq!(
            c.to_spec().to_json(),
            r#"{"kind":"constant","point":[0.5,-1.0]}"#
        );
        let p = Polynomial::parse("x^2*y", 0).unwrap();
        let f = Curve::poly_apply(p, vec![c.clone(), c]).unwrap();
        let json = f.to_spec().to_json();
        assert!(json.contains(r#""terms":[{"c":1.0,"e":[2,1]}]"#), "{json}");
    }

    #[test]
    fn malformed_specs_are_rejected() {
        let gap = r#"{"kind":"concat","pieces":[
            {"interval":[0,0.5],"curve":{"kind":"constant","point":[0,0]}},
            {"interval":[0.5,1],"curve":{"kind":"constant","point":[0,1]}}]}"#;
        let spec = CurveSpec::from_json(gap).unwrap();
        assert!(matches!(spec.build(), Err(Error::Continuity { .. })));
        assert!(CurveSpec::from_json(r#"{"kind":"spiral"}"#).is_err());
        let bad_poly = r#"{"kind":"poly_apply","polynomial":{"arity":2,"constant_term_allowed":false,
            "terms":[{"c":1,"e":[0,0]}]},"curves":[{"kind":"constant","point":[0,0]},{"kind":"constant","point":[0,0]}]}"#;
        assert!(CurveSpec::from_json(bad_poly).unwrap().build().is_err());
    }
}
