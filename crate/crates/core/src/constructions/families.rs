//! Disjoint-support families: the semigroup generators, the spaceable basis
//! and the TSF₁ generators.

use crate::constructions::{assemble, partition_index, Breakpoints};
use crate::curve::Curve;
use crate::error::{Error, Result};
use crate::generators::filler_with_endpoints;
use crate::geometry::{Point, Rect};
use crate::polynomial::Polynomial;
use crate::sampling::SamplePlan;

const ONE: Point = Point::new(1.0, 1.0);

/// `(1,1)` outside `[a_{n-1}, a_n]`, a filler of `I²` from `(1,1)` to `(1,1)`
/// inside.
pub fn semigroup_generator(n: usize, bp: &Breakpoints, order: u32) -> Result<Curve> {
    let (a, b) = bp.cell(n)?;
    let fill = filler_with_endpoints(Rect::UNIT, ONE, ONE, order)?;
    assemble(vec![(a, b, fill)], ONE)
}

/// `f_{i₁}^{m₁} ⋯ f_{i_p}^{m_p}` (coordinatewise), repeated indices merged.
pub fn semigroup_product(word: &[(usize, u32)], bp: &Breakpoints, order: u32) -> Result<Curve> {
    if word.is_empty() {
        return Err(Error::Precondition("empty semigroup word".into()));
    }
    let mut merged: Vec<(usize, u32)> = Vec::new();
    for &(i, m) in word {
        if m == 0 {
            return Err(Error::Precondition(format!("power of f_{i} must be >= 1")));
        }
        bp.cell(i)?;
        match merged.iter_mut().find(|(j, _)| *j == i) {
            Some(entry) => entry.1 += m,
            None => merged.push((i, m)),
        }
    }
    let curves = merged
        .iter()
        .map(|&(i, _)| semigroup_generator(i, bp, order))
        .collect::<Result<Vec<_>>>()?;
    let exps = merged.iter().map(|&(_, m)| m).collect();
    Curve::poly_apply(Polynomial::monomial(1.0, exps)?, curves)
}

/// A parameter on `[a_p, a_{p+1}]` where `f_{p+1}` is far from `(1,1)`, the
/// value every product of `f_1, …, f_p` takes there.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenerationWitness {
    pub t: f64,
    pub distance: f64,
}

pub fn finite_generation_witness(p: usize, bp: &Breakpoints, order: u32) -> Result<GenerationWitness> {
    let f = semigroup_generator(p + 1, bp, order)?;
    let window = bp.cell(p + 1)?;
    let tol = 1.0 / (1u64 << order.min(20)) as f64;
    let plan = SamplePlan::new(&f, window, tol, 64)?;
    let mut best = GenerationWitness {
        t: window.0,
        distance: 0.0,
    };
    plan.for_each(&f, |t, q| {
        let d = q.dist_inf(ONE);
        if d > best.distance {
            best = GenerationWitness { t, distance: d };
        }
    })?;
    Ok(best)
}

/// Filler of `[-1,1]²` from `(0,0)` to `(0,0)` on `[a_{n-1}, a_n]`, zero
/// elsewhere.
pub fn spaceable_basis(n: usize, bp: &Breakpoints, order: u32) -> Result<Curve> {
    let (a, b) = bp.cell(n)?;
    let fill = filler_with_endpoints(Rect::SYMMETRIC, Point::ORIGIN, Point::ORIGIN, order)?;
    assemble(vec![(a, b, fill)], Point::ORIGIN)
}

#[derive(Debug, Clone)]
pub struct SpaceableCombination {
    pub curve: Curve,
    /// `[-c*, c*]²` with `c* = max |c_n|`.
    pub predicted_image: Rect,
}

/// `Σ c_n f_n` over the spaceable basis.
pub fn spaceable_combination(coefs: &[f64], bp: &Breakpoints, order: u32) -> Result<SpaceableCombination> {
    if coefs.iter().any(|c| !c.is_finite()) {
        return Err(Error::Precondition("coefficients must be finite".into()));
    }
    let c_max = coefs.iter().fold(0.0f64, |m, c| m.max(c.abs()));
    if c_max == 0.0 {
        return Err(Error::Precondition(
            "at least one coefficient must be nonzero".into(),
        ));
    }
    let mut curve: Option<Curve> = None;
    for (i, &c) in coefs.iter().enumerate() {
        if c == 0.0 {
            continue;
        }
        let term = spaceable_basis(i + 1, bp, order)?.scale(c);
        curve = Some(match curve {
            None => term,
            Some(acc) => acc.sum(&term),
        });
    }
    Ok(SpaceableCombination {
        curve: curve.expect("a nonzero coefficient exists"),
        predicted_image: Rect::centered_square(c_max),
    })
}

/// `I_{n,k} = [a_{p(n,k)}, a_{p(n,k)+1}]`.
pub fn tsf1_interval(n: usize, k: usize, bp: &Breakpoints) -> Result<(f64, f64)> {
    bp.span(partition_index(n, k)?)
}

/// `Σ_{k ≤ K} g_{n,k}`, where `g_{n,k}` fills `(1/k) I²` on `I_{n,k}` with both
/// endpoints at the origin.
pub fn tsf1_generator(n: usize, truncation: usize, bp: &Breakpoints, order: u32) -> Result<Curve> {
    if n == 0 || truncation == 0 {
        return Err(Error::Precondition(
            "generator index and truncation must be >= 1".into(),
        ));
    }
    bp.span(partition_index(n, truncation)?)?;
    let mut pieces = Vec::with_capacity(truncation);
    for k in 1..=truncation {
        let (a, b) = tsf1_interval(n, k, bp)?;
        let side = 1.0 / k as f64;
        let target = Rect::new(0.0, side, 0.0, side)?;
        let g = filler_with_endpoints(target, Point::ORIGIN, Point::ORIGIN, order)?;
        pieces.push((a, b, g));
    }
    assemble(pieces, Point::ORIGIN)
}
