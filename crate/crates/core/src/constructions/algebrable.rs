//! The free-algebra generators and the cumulative family whose algebra is not
//! free.

use crate::constructions::{assemble, partition_index, rational_seq, Breakpoints};
use crate::curve::Curve;
use crate::error::{Error, Result};
use crate::generators::filler_with_endpoints;
use crate::geometry::{Point, Rect};

/// `I_{m,k} = [a_{p(m,k)}, a_{p(m,k)+1}]`.
pub fn algebrable_interval(m: usize, k: usize, bp: &Breakpoints) -> Result<(f64, f64)> {
    bp.span(partition_index(m, k)?)
}

/// The generator `f_n` of the free algebra, truncated to `k ≤ truncation` and
/// to the intervals `I_{m,k}` with `m ≤ family`.
///
/// On its own middle thirds `I_{n,k,2}` it is `k⁻¹ φ` (φ a filler of `[-1,1]²`
/// vanishing at both ends) and zero on the outer thirds. On a foreign interval
/// `I_{m,k}` it ramps linearly from the origin to the plateau
/// `k⁻¹ (q_n, q_n)`, `q_n` the `n`-th entry of `σ_k`, and back.
pub fn algebrable_generator(
    n: usize,
    family: usize,
    truncation: usize,
    bp: &Breakpoints,
    order: u32,
) -> Result<Curve> {
    if n == 0 || truncation == 0 || n > family {
        return Err(Error::Precondition(format!(
            "need 1 <= n <= family and truncation >= 1, got n = {n}, family = {family}, truncation = {truncation}"
        )));
    }
    let needed = (1..=family)
        .map(|m| partition_index(m, truncation))
        .collect::<Result<Vec<_>>>()?;
    bp.span(needed.into_iter().max().expect("family >= 1"))?;
    let phi = filler_with_endpoints(Rect::SYMMETRIC, Point::ORIGIN, Point::ORIGIN, order)?;
    let mut pieces = Vec::new();
    for k in 1..=truncation {
        let inv_k = 1.0 / k as f64;
        let q = rational_seq(k as u64)?.get(n).value() * inv_k;
        let plateau = Point::new(q, q);
        for m in 1..=family {
            let (a, b) = algebrable_interval(m, k, bp)?;
            let a1 = a + (b - a) / 3.0;
            let a2 = a + 2.0 * (b - a) / 3.0;
            if m == n {
                pieces.push((a1, a2, phi.scale(inv_k)));
            } else if q != 0.0 {
                pieces.push((a, a1, Curve::segment(Point::ORIGIN, plateau)));
                pieces.push((a1, a2, Curve::constant(plateau)));
                pieces.push((a2, b, Curve::segment(plateau, Point::ORIGIN)));
            }
        }
    }
    assemble(pieces, Point::ORIGIN)
}

/// `g_j` on `I_j = [a_{j-1}, a_j]` for every `j ≤ n`, zero afterwards; each
/// `g_j` fills `I²` with both endpoints at the origin.
pub fn cumulative_generator(n: usize, bp: &Breakpoints, order: u32) -> Result<Curve> {
    if n == 0 {
        return Err(Error::OutOfRange { index: 0, max: bp.len() });
    }
    let g = filler_with_endpoints(Rect::UNIT, Point::ORIGIN, Point::ORIGIN, order)?;
    let pieces = (1..=n)
        .map(|j| {
            let (a, b) = bp.cell(j)?;
            Ok((a, b, g.clone()))
        })
        .collect::<Result<Vec<_>>>()?;
    assemble(pieces, Point::ORIGIN)
}
