//! Basic-sequence checks: the Nikolskii prefix-norm ratio and the coefficient
//! argmax used by the spaceability argument.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};

use crate::curve::Curve;
use crate::error::{Error, Result};
use crate::geometry::Point;
use crate::sampling::SamplePlan;

/// Default allowance over 1 for disjoint-support bases.
pub const TAU_NORM: f64 = 1e-9;

/// `max ‖Σ_{n≤r} a_n x_n‖ / ‖Σ_{n≤s} a_n x_n‖` over random coefficient vectors
/// (entries uniform in `[-1, 1]`, length at most `max_len`) and all `r ≤ s`,
/// with sup norms taken over one shared sample set.
pub fn nikolskii_ratio(basis: &[Curve], trials: usize, max_len: usize, seed: u64) -> Result<f64> {
    if basis.is_empty() {
        return Err(Error::Precondition("basis is empty".into()));
    }
    if trials == 0 || max_len == 0 {
        return Err(Error::Precondition("trials and max_len must be >= 1".into()));
    }
    let ts = shared_samples(basis)?;
    let values: Vec<Vec<Point>> = basis
        .iter()
        .map(|f| ts.iter().map(|&t| f.eval(t)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    for (i, v) in values.iter().enumerate() {
        if v.iter().all(|p| *p == Point::ORIGIN) {
            return Err(Error::Precondition(format!(
                "basis member {} vanishes at every sample",
                i + 1
            )));
        }
    }
    let max_len = max_len.min(basis.len());
    let mut rng = StdRng::seed_from_u64(seed);
    let mut ratio = 1.0f64;
    let mut acc = vec![Point::ORIGIN; ts.len()];
    let mut prefix = Vec::with_capacity(max_len);
    for _ in 0..trials {
        let len = rng.gen_range(1..=max_len);
        acc.iter_mut().for_each(|p| *p = Point::ORIGIN);
        prefix.clear();
        for row in values.iter().take(len) {
            let a: f64 = rng.gen_range(-1.0..=1.0);
            let mut norm = 0.0f64;
            for (s, v) in acc.iter_mut().zip(row) {
                s.x += a * v.x;
                s.y += a * v.y;
                norm = norm.max(s.norm_inf());
            }
            prefix.push(norm);
        }
        for s in 0..len {
            for r in 0..=s {
                let (num, den) = (prefix[r], prefix[s]);
                if num == 0.0 {
                    continue;
                }
                ratio = ratio.max(if den == 0.0 { f64::INFINITY } else { num / den });
            }
        }
    }
    Ok(ratio)
}

/// Union of the members' sampling plans at a resolution of 1/256 of the
/// largest member's extent.
fn shared_samples(basis: &[Curve]) -> Result<Vec<f64>> {
    let scale = basis
        .iter()
        .map(|f| f.bbox().max_abs())
        .fold(0.0f64, f64::max)
        .max(f64::MIN_POSITIVE);
    let mut ts = Vec::new();
    for f in basis {
        let plan = SamplePlan::new(f, (0.0, 1.0), scale / 256.0, 1024)?;
        plan.for_each(f, |t, _| ts.push(t))?;
    }
    ts.sort_by(f64::total_cmp);
    ts.dedup();
    Ok(ts)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecayReport {
    /// Every `|c_n| · sup ‖f_n‖` is finite.
    pub non_divergent: bool,
    /// 1-based index of the first coefficient of largest modulus.
    pub argmax: Option<usize>,
}

pub fn coefficient_decay_check(coefs: &[f64], basis_sup_norms: &[f64]) -> Result<DecayReport> {
    if coefs.len() != basis_sup_norms.len() {
        return Err(Error::Precondition(format!(
            "{} coefficients but {} norms",
            coefs.len(),
            basis_sup_norms.len()
        )));
    }
    let non_divergent = coefs
        .iter()
        .zip(basis_sup_norms)
        .all(|(c, s)| (c.abs() * s).is_finite());
    let mut argmax: Option<usize> = None;
    for (i, c) in coefs.iter().enumerate() {
        if argmax.map_or(true, |j| c.abs() > coefs[j].abs()) {
            argmax = Some(i);
        }
    }
    Ok(DecayReport {
        non_divergent,
        argmax: argmax.map(|i| i + 1),
    })
}
