use crate::error::{Error, Result};

use super::Curve;

/// Sampled uniform distance with a Lipschitz-certified upper bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistanceEstimate {
    /// `max d_∞(f(t_i), g(t_i))` over the equispaced sample; a lower bound for ρ.
    pub estimate: f64,
    /// `estimate + (L_f + L_g) / (2 (n - 1))`; an upper bound for ρ.
    pub certified_upper: f64,
}

/// Estimates `ρ(f, g) = sup_t d_∞(f(t), g(t))` on `n_samples` equispaced points.
pub fn uniform_distance(f: &Curve, g: &Curve, n_samples: usize) -> Result<DistanceEstimate> {
    if n_samples < 2 {
        return Err(Error::Precondition(format!(
            "uniform distance needs at least 2 samples, got {n_samples}"
        )));
    }
    let last = (n_samples - 1) as f64;
    let mut estimate: f64 = 0.0;
    for i in 0..n_samples {
        let t = i as f64 / last;
        estimate = estimate.max(f.eval(t)?.dist_inf(g.eval(t)?));
    }
    Ok(DistanceEstimate {
        estimate,
        certified_upper: estimate + (f.lipschitz() + g.lipschitz()) / (2.0 * last),
    })
}

/// Sampled sup norm `sup_t ‖f(t)‖₁`, with the same certification scheme.
pub fn sup_norm(f: &Curve, n_samples: usize) -> Result<DistanceEstimate> {
    uniform_distance(f, &Curve::constant(crate::geometry::Point::ORIGIN), n_samples)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::Orientation;
    use crate::geometry::{Point, Rect};

    #[test]
    fn identical_curves_are_at_distance_zero() {
        let f = Curve::hilbert_approx(3, Rect::UNIT, Orientation::Standard).unwrap();
        let d = uniform_distance(&f, &f, 100).unwrap();
        assert_eq!(d.estimate, 0.0);
        assert!(d.certified_upper <= f.lipschitz() / 99.0 + 1e-15);
    }

    #[test]
    fn constants_distance_is_max_coordinate_gap() {
        let a = Curve::constant(Point::new(0.0, 0.0));
        let b = Curve::constant(Point::new(3.0, -4.0));
        let d = uniform_distance(&a, &b, 10).unwrap();
        assert_eq!((d.estimate, d.certified_upper), (4.0, 4.0));
    }

    #[test]
    fn shrink_towards_origin() {
        // ρ(f, (1 - ε/2) f) = (ε/2) sup ‖f‖₁
        let f = Curve::hilbert_approx(4, Rect::UNIT, Orientation::Standard).unwrap();
        let eps = 0.5;
        let g = f.scale(1.0 - eps / 2.0);
        let n = 4097;
        let d = uniform_distance(&f, &g, n).unwrap();
        let sup = sup_norm(&f, n).unwrap().estimate;
        assert!((d.estimate - eps / 2.0 * sup).abs() < 1e-12);
    }

    #[test]
    fn too_few_samples() {
        let f = Curve::constant(Point::ORIGIN);
        assert!(uniform_distance(&f, &f, 1).is_err());
    }
}
