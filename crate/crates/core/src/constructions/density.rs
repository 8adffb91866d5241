//! Approximation builders: a space-filling curve near any given curve, and a
//! curve that is locally constant near a chosen parameter.

use crate::constructions::assemble;
use crate::curve::{concat_nonempty, Curve};
use crate::error::{Error, Result};
use crate::generators::filler_with_endpoints;
use crate::geometry::{Point, Rect};

#[derive(Debug, Clone)]
pub struct LocallyConstant {
    pub curve: Curve,
    /// `[c', d']`, on which the curve equals `f(t₀)`.
    pub plateau: (f64, f64),
    /// Upper bound on `ρ(f, φ)`, strictly below `ε`.
    pub certified_distance: f64,
}

/// Replaces `f` near `t₀` by the constant `f(t₀)`, bridging with segments.
///
/// The window `[c, d]` has half-width `w < ε / (3 L_f)`, so `f([c, d])` stays
/// within `ε/3` of `f(t₀)`; the bridges stay in the same ball, giving
/// `ρ(f, φ) ≤ 2 L_f w < ε`.
pub fn locally_constant_perturbation(f: &Curve, t0: f64, eps: f64) -> Result<LocallyConstant> {
    if !(0.0..=1.0).contains(&t0) {
        return Err(Error::Domain(t0));
    }
    if !(eps > 0.0) {
        return Err(Error::Precondition(format!("epsilon must be positive, got {eps}")));
    }
    let l = f.lipschitz();
    let w = if l > 0.0 {
        (eps / (3.0 * l) * (1.0 - 1e-9)).min(0.25)
    } else {
        0.25
    };
    let c = (t0 - w).max(0.0);
    let d = (t0 + w).min(1.0);
    let c2 = 0.5 * (c + t0);
    let d2 = 0.5 * (t0 + d);
    let centre = f.eval(t0)?;
    let (fc, fd) = (f.eval(c)?, f.eval(d)?);
    let mut pieces = Vec::with_capacity(5);
    if c > 0.0 {
        pieces.push((0.0, c, f.restrict(0.0, c)?));
    }
    pieces.push((c, c2, Curve::segment(fc, centre)));
    pieces.push((c2, d2, Curve::constant(centre)));
    pieces.push((d2, d, Curve::segment(centre, fd)));
    if d < 1.0 {
        pieces.push((d, 1.0, f.restrict(d, 1.0)?));
    }
    Ok(LocallyConstant {
        curve: concat_nonempty(pieces)?,
        plateau: (c2, d2),
        certified_distance: 2.0 * l * w,
    })
}

#[derive(Debug, Clone)]
pub struct DenseApproximation {
    pub curve: Curve,
    /// The rectangle filled on the first partition cell.
    pub rect: Rect,
    /// Number of partition cells `N`.
    pub pieces: usize,
    /// Upper bound on `ρ(f, g)`, strictly below `ε`.
    pub certified_distance: f64,
}

/// A curve within `ε` of `f` that fills a small square on `[0, 1/N]` and
/// interpolates `f` linearly on the remaining cells.
///
/// With `N > 4 L_f / ε`, `f` moves less than `ε/4` per cell. The square has side
/// `s < ε/2` and contains `f(0)` and `f(1/N)`, so on the first cell
/// `‖g - f‖ ≤ s + L_f/N`, and on the others `‖g - f‖ ≤ L_f/N`.
pub fn sf_dense_approximation(f: &Curve, eps: f64, order: u32) -> Result<DenseApproximation> {
    if !(eps > 0.0) {
        return Err(Error::Precondition(format!("epsilon must be positive, got {eps}")));
    }
    let l = f.lipschitz();
    let n_f = (4.0 * l / eps).floor() + 1.0;
    if !(n_f <= 1e7) {
        return Err(Error::Precondition(format!(
            "epsilon {eps} needs {n_f} partition cells"
        )));
    }
    let n = n_f as usize;
    let t1 = if n == 1 { 1.0 } else { 1.0 / n_f };
    let (p0, p1) = (f.eval(0.0)?, f.eval(t1)?);
    let gap = p0.dist_inf(p1);
    let side = 0.5 * eps - (0.5 * eps - gap) / 10.0;
    let centre = Point::new(0.5 * (p0.x + p1.x), 0.5 * (p0.y + p1.y));
    let rect = Rect::square_around(centre, side);
    let fill = filler_with_endpoints(rect, p0, p1, order)?;
    let mut pieces = vec![(0.0, t1, fill)];
    if n > 1 {
        let mut vertices = Vec::with_capacity(n);
        for j in 1..=n {
            let t = if j == n { 1.0 } else { j as f64 / n_f };
            vertices.push(((t - t1) / (1.0 - t1), f.eval(t)?));
        }
        vertices[0].0 = 0.0;
        vertices[n - 1].0 = 1.0;
        pieces.push((t1, 1.0, Curve::polygonal(vertices)?));
    }
    Ok(DenseApproximation {
        curve: assemble(pieces, p0)?,
        rect,
        pieces: n,
        certified_distance: side + l / n_f,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::uniform_distance;
    use crate::generators::hilbert;

    #[test]
    fn constant_curve_is_unchanged() {
        let f = Curve::constant(Point::new(0.3, 0.7));
        let g = locally_constant_perturbation(&f, 0.4, 0.1).unwrap();
        assert_eq!(uniform_distance(&f, &g.curve, 1001).unwrap().estimate, 0.0);
        assert_eq!(g.certified_distance, 0.0);
    }

    #[test]
    fn perturbation_of_hilbert_at_one() {
        let f = hilbert(5, Rect::UNIT).unwrap();
        let g = locally_constant_perturbation(&f, 1.0, 0.1).unwrap();
        let (c, d) = g.plateau;
        assert!(d - c > 0.0);
        assert_eq!(d, 1.0);
        let end = f.eval(1.0).unwrap();
        for i in 0..=100 {
            let t = c + (d - c) * i as f64 / 100.0;
            assert_eq!(g.curve.eval(t).unwrap(), end);
        }
        assert!(g.certified_distance < 0.1);
        let rho = uniform_distance(&f, &g.curve, 200_001).unwrap();
        assert!(rho.estimate <= g.certified_distance);
    }

    #[test]
    fn interior_plateau_contains_t0() {
        let f = Curve::segment(Point::ORIGIN, Point::new(1.0, 0.5));
        let g = locally_constant_perturbation(&f, 0.5, 0.3).unwrap();
        assert!(g.plateau.0 < 0.5 && 0.5 < g.plateau.1);
        assert_eq!(g.curve.eval(0.0).unwrap(), Point::ORIGIN);
        assert_eq!(g.curve.eval(1.0).unwrap(), Point::new(1.0, 0.5));
        assert!(locally_constant_perturbation(&f, 0.5, 0.0).is_err());
    }

    #[test]
    fn dense_approximation_of_constant() {
        let p = Point::new(2.0, -1.0);
        let f = Curve::constant(p);
        let g = sf_dense_approximation(&f, 0.2, 4).unwrap();
        assert_eq!(g.rect.center(), p);
        assert_eq!(g.pieces, 1);
        assert_eq!(g.curve.eval(0.0).unwrap(), p);
        assert_eq!(g.curve.eval(1.0).unwrap(), p);
    }

    #[test]
    fn dense_approximation_matches_nodes() {
        let f = Curve::polygonal(vec![
            (0.0, Point::ORIGIN),
            (0.5, Point::new(1.0, 0.0)),
            (1.0, Point::new(1.0, 1.0)),
        ])
        .unwrap();
        let g = sf_dense_approximation(&f, 0.2, 5).unwrap();
        assert!(g.certified_distance < 0.2);
        assert!(g.rect.max_side() < 0.1);
        let n = g.pieces as f64;
        for j in 1..g.pieces {
            let t = j as f64 / n;
            assert!(g.curve.eval(t).unwrap().dist_inf(f.eval(t).unwrap()) < 1e-12);
        }
        let rho = uniform_distance(&f, &g.curve, 100_001).unwrap();
        assert!(rho.estimate <= g.certified_distance);
        assert!(sf_dense_approximation(&f, -1.0, 5).is_err());
    }
}
