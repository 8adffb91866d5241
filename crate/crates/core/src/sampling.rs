//! Lipschitz-guided sampling plans.
//!
//! A plan splits a parameter window into leaves, each sampled equispaced with a
//! step small enough that consecutive image points are less than `tolerance`
//! apart in `d_∞`. Local Lipschitz bounds keep the plan proportional to the
//! arc length actually traversed rather than to the global bound.

use rayon::prelude::*;

use crate::curve::Curve;
use crate::error::{Error, Result};
use crate::geometry::Point;

const LEAF_STEPS: u64 = 2048;
/// Hard cap on the number of samples a single plan may request.
pub const MAX_PLAN_SAMPLES: u64 = 400_000_000;

#[derive(Debug, Clone, Copy)]
struct Leaf {
    t0: f64,
    t1: f64,
    steps: u64,
}

impl Leaf {
    fn t(&self, i: u64) -> f64 {
        if i == self.steps {
            self.t1
        } else {
            self.t0 + (self.t1 - self.t0) * (i as f64 / self.steps as f64)
        }
    }
}

#[derive(Debug, Clone)]
pub struct SamplePlan {
    leaves: Vec<Leaf>,
    samples: u64,
}

impl SamplePlan {
    /// Plans samples of `curve` over `[t0, t1]` so that consecutive images move
    /// less than `tolerance`, with at least `min_samples` spread equispaced.
    pub fn new(curve: &Curve, window: (f64, f64), tolerance: f64, min_samples: u64) -> Result<Self> {
        let (start, end) = window;
        if !(0.0 <= start && start <= end && end <= 1.0) {
            return Err(Error::Precondition(format!(
                "sampling window [{start}, {end}] is not inside [0, 1]"
            )));
        }
        if !(tolerance > 0.0) {
            return Err(Error::Precondition(format!(
                "sampling tolerance must be positive, got {tolerance}"
            )));
        }
        let span = end - start;
        let mut leaves = Vec::new();
        let mut samples = 0u64;
        let mut stack = vec![(start, end)];
        while let Some((a, b)) = stack.pop() {
            let bounds = curve.bounds_on(a, b)?;
            if !bounds.lipschitz.is_finite() {
                return Err(Error::Malformed("non-finite Lipschitz bound".into()));
            }
            let width = b - a;
            let by_speed = (bounds.lipschitz * width / tolerance).floor() + 1.0;
            let by_base = if span > 0.0 {
                (min_samples as f64 * width / span).ceil()
            } else {
                1.0
            };
            let needed = by_speed.max(by_base).max(1.0);
            let mid = 0.5 * (a + b);
            let splittable = a < mid && mid < b;
            if needed <= LEAF_STEPS as f64 || !splittable {
                if needed > MAX_PLAN_SAMPLES as f64 {
                    return Err(Error::Precondition(format!(
                        "sampling plan exceeds {MAX_PLAN_SAMPLES} samples"
                    )));
                }
                let steps = needed as u64;
                samples += steps + 1;
                if samples > MAX_PLAN_SAMPLES {
                    return Err(Error::Precondition(format!(
                        "sampling plan exceeds {MAX_PLAN_SAMPLES} samples"
                    )));
                }
                leaves.push(Leaf { t0: a, t1: b, steps });
            } else {
                stack.push((mid, b));
                stack.push((a, mid));
            }
        }
        Ok(SamplePlan { leaves, samples })
    }

    /// Number of evaluations the plan performs.
    pub fn sample_count(&self) -> u64 {
        self.samples
    }

    /// Visits every sample in increasing parameter order.
    pub fn for_each<F>(&self, curve: &Curve, mut visit: F) -> Result<()>
    where
        F: FnMut(f64, Point),
    {
        for leaf in &self.leaves {
            for i in 0..=leaf.steps {
                let t = leaf.t(i);
                visit(t, curve.eval_in_domain(t)?);
            }
        }
        Ok(())
    }

    /// Folds samples in parallel chunks and merges the per-chunk accumulators.
    /// The merge must be commutative and associative.
    pub fn fold<A, I, S, M>(&self, curve: &Curve, init: I, step: S, merge: M) -> Result<A>
    where
        A: Send,
        I: Fn() -> A + Sync + Send,
        S: Fn(&mut A, f64, Point) + Sync + Send,
        M: Fn(A, A) -> A + Sync + Send,
    {
        self.leaves
            .par_iter()
            .try_fold(&init, |mut acc, leaf| {
                for i in 0..=leaf.steps {
                    let t = leaf.t(i);
                    step(&mut acc, t, curve.eval_in_domain(t)?);
                }
                Ok(acc)
            })
            .try_reduce(&init, |a, b| Ok(merge(a, b)))
    }
}

/// Dense sampled sup norm `max ‖f(t)‖₁` over a window; consecutive samples are
/// within `tolerance` of each other, so the true sup exceeds the result by at
/// most `tolerance`.
pub fn sampled_sup_norm(curve: &Curve, window: (f64, f64), tolerance: f64) -> Result<f64> {
    let plan = SamplePlan::new(curve, window, tolerance, 2)?;
    plan.fold(
        curve,
        || 0.0f64,
        |acc, _, p| *acc = acc.max(p.norm_inf()),
        f64::max,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::Orientation;
    use crate::geometry::Rect;

    #[test]
    fn consecutive_samples_move_less_than_tolerance() {
        let h = Curve::hilbert_approx(5, Rect::UNIT, Orientation::Standard).unwrap();
        let f = Curve::concat(vec![
            (0.0, 0.01, Curve::segment(Point::ORIGIN, h.eval(0.0).unwrap())),
            (0.01, 1.0, h),
        ])
        .unwrap();
        let tol = 1.0 / 256.0;
        let plan = SamplePlan::new(&f, (0.0, 1.0), tol, 10).unwrap();
        let mut prev: Option<(f64, Point)> = None;
        plan.for_each(&f, |t, p| {
            if let Some((s, q)) = prev {
                assert!(s <= t);
                assert!(q.dist_inf(p) < tol, "jump {} at t={t}", q.dist_inf(p));
            }
            prev = Some((t, p));
        })
        .unwrap();
        assert_eq!(prev.unwrap().0, 1.0);
    }

    #[test]
    fn constant_curve_needs_only_base_samples() {
        let c = Curve::constant(Point::new(1.0, 2.0));
        let plan = SamplePlan::new(&c, (0.0, 1.0), 1e-6, 5).unwrap();
        assert!(plan.sample_count() <= 6);
    }

    #[test]
    fn window_must_lie_in_domain() {
        let c = Curve::constant(Point::ORIGIN);
        assert!(SamplePlan::new(&c, (0.5, 1.5), 0.1, 2).is_err());
        assert!(SamplePlan::new(&c, (0.0, 1.0), 0.0, 2).is_err());
    }
}
