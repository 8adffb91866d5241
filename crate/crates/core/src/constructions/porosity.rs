//! Witnesses for the topological smallness of the Peano family: an empty ball
//! near any curve into `I²`, and a failure of equicontinuity.

use crate::constructions::assemble;
use crate::curve::{uniform_distance, Curve};
use crate::error::{Error, Result};
use crate::generators::filler_with_endpoints;
use crate::geometry::{Point, Rect};
use crate::sampling::SamplePlan;

#[derive(Debug, Clone)]
pub struct PorosityWitness {
    /// `f₀ = (1 - ε/2) f`.
    pub center: Curve,
    /// `α` times a sampled lower bound of `ρ(f, f₀)`.
    pub radius: f64,
    /// `α ε/2 + 1 - ε/2`: every `g` with `ρ(g, f₀) ≤ radius` has
    /// `sup ‖g‖ ≤ bound < 1`.
    pub bound: f64,
}

pub fn porosity_witness(f: &Curve, eps: f64, alpha: f64) -> Result<PorosityWitness> {
    if !(eps > 0.0 && eps <= 1.0) {
        return Err(Error::Precondition(format!("epsilon must lie in (0, 1], got {eps}")));
    }
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::Precondition(format!("alpha must lie in (0, 1), got {alpha}")));
    }
    let plan = SamplePlan::new(f, (0.0, 1.0), 1e-3, 1024)?;
    let mut outside = None;
    plan.for_each(f, |t, p| {
        if outside.is_none() && !Rect::UNIT.contains(p) {
            outside = Some((t, p));
        }
    })?;
    if let Some((t, p)) = outside {
        return Err(Error::Precondition(format!(
            "curve leaves I² at t = {t}: ({}, {})",
            p.x, p.y
        )));
    }
    let center = f.scale(1.0 - eps / 2.0);
    let rho = uniform_distance(f, &center, 4097)?.estimate;
    Ok(PorosityWitness {
        center,
        radius: alpha * rho,
        bound: alpha * eps / 2.0 + 1.0 - eps / 2.0,
    })
}

#[derive(Debug, Clone)]
pub struct EquicontinuityWitness {
    /// Fills the target on `[0, δ/2]` from and back to its lower-left corner,
    /// then stays there.
    pub curve: Curve,
    pub u: f64,
    pub v: f64,
    /// `d_∞(Φ(u), Φ(v))`.
    pub distance: f64,
}

pub fn nonequicontinuity_witness(delta: f64, target: Rect, order: u32) -> Result<EquicontinuityWitness> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::Precondition(format!("delta must lie in (0, 1), got {delta}")));
    }
    let corner = Point::new(target.x_lo, target.y_lo);
    let fill = filler_with_endpoints(target, corner, corner, order)?;
    let half = delta / 2.0;
    let curve = assemble(vec![(0.0, half, fill)], corner)?;
    let tol = target.max_side() / (1u64 << order.min(30)) as f64;
    let plan = SamplePlan::new(&curve, (0.0, half), tol, 64)?;
    let mut best = (0.0, 0.0);
    plan.for_each(&curve, |t, p| {
        let d = p.dist_inf(corner);
        if d > best.1 {
            best = (t, d);
        }
    })?;
    Ok(EquicontinuityWitness {
        curve,
        u: 0.0,
        v: best.0,
        distance: best.1,
    })
}
