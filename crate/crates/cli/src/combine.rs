use std::path::Path;

use sfcurve::constructions::{locally_constant_perturbation, porosity_witness, sf_dense_approximation};
use sfcurve::generators::polygonal_approximation;
use sfcurve::{Curve, Polynomial};

use crate::args::CombineOp;
use crate::document::{CurveDocument, Guarantee};
use crate::failure::Failure;
use crate::parse::{parse_pair, parse_point};

fn load(path: &Path) -> Result<Curve, Failure> {
    CurveDocument::read(path)?.build()
}

fn derived(builder: &str) -> Guarantee {
    Guarantee {
        builder: builder.to_string(),
        ..Guarantee::default()
    }
}

pub fn run(op: &CombineOp) -> Result<CurveDocument, Failure> {
    let (curve, guarantee) = match op {
        CombineOp::Identity { input } => return CurveDocument::read(input),
        CombineOp::Sum { left, right } => (load(left)?.sum(&load(right)?), None),
        CombineOp::Product { left, right } => (load(left)?.product(&load(right)?), None),
        CombineOp::Scale { c, input } => (load(input)?.scale(*c), None),
        CombineOp::Affine { scale, translate, input } => {
            let s = parse_point(scale).map_err(|e| e.context("--scale"))?;
            let t = parse_point(translate).map_err(|e| e.context("--translate"))?;
            (load(input)?.affine([s.x, s.y], [t.x, t.y])?, None)
        }
        CombineOp::Restrict { interval, input } => {
            let (a, b) = parse_pair(interval).map_err(|e| e.context("--interval"))?;
            (load(input)?.restrict(a, b)?, None)
        }
        CombineOp::Concat { breaks, inputs } => {
            let curves = inputs.iter().map(|p| load(p)).collect::<Result<Vec<_>, _>>()?;
            let m = curves.len();
            let mut cuts: Vec<f64> = match breaks {
                Some(s) if !s.trim().is_empty() => s
                    .split(',')
                    .map(|x| x.trim().parse::<f64>().map_err(|_| Failure::usage(format!("--breaks: `{x}` is not a number"))))
                    .collect::<Result<_, _>>()?,
                _ => (1..m).map(|i| i as f64 / m as f64).collect(),
            };
            if cuts.len() + 1 != m {
                return Err(Failure::usage(format!(
                    "--breaks needs {} values for {m} inputs, got {}",
                    m - 1,
                    cuts.len()
                )));
            }
            cuts.insert(0, 0.0);
            cuts.push(1.0);
            let pieces = curves
                .into_iter()
                .enumerate()
                .map(|(i, c)| (cuts[i], cuts[i + 1], c))
                .collect();
            (Curve::concat(pieces)?, None)
        }
        CombineOp::Poly { p, inputs } => {
            let poly = Polynomial::parse(p, inputs.len())?;
            if poly.arity() != inputs.len() {
                return Err(Failure::usage(format!(
                    "polynomial uses {} variables but {} curves were given",
                    poly.arity(),
                    inputs.len()
                )));
            }
            let curves = inputs.iter().map(|p| load(p)).collect::<Result<Vec<_>, _>>()?;
            (Curve::poly_apply(poly, curves)?, None)
        }
        CombineOp::PolygonalApprox { pieces, input } => {
            let a = polygonal_approximation(&load(input)?, *pieces)?;
            let mut g = derived("polygonal-approx");
            g.certified_distance = Some(a.certified_error);
            (a.curve, Some(g))
        }
        CombineOp::Dense { eps, k, input } => {
            let a = sf_dense_approximation(&load(input)?, *eps, *k)?;
            let mut g = derived("dense");
            g.certified_distance = Some(a.certified_distance);
            g.target = Some(a.rect);
            (a.curve, Some(g))
        }
        CombineOp::LocallyConstant { t0, eps, input } => {
            let a = locally_constant_perturbation(&load(input)?, *t0, *eps)?;
            let mut g = derived("locally-constant");
            g.certified_distance = Some(a.certified_distance);
            (a.curve, Some(g))
        }
        CombineOp::Porosity { eps, alpha, input } => {
            let w = porosity_witness(&load(input)?, *eps, *alpha)?;
            let mut g = derived("porosity");
            g.radius = Some(w.radius);
            g.bound = Some(w.bound);
            (w.center, Some(g))
        }
    };
    Ok(CurveDocument::new(&curve, guarantee))
}
