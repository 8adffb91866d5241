//! Builders for the curve families: each takes explicit truncation parameters
//! and returns curves (plus, where the argument provides one, a certified
//! quantity) whose claimed properties the verification module can check.

mod algebrable;
mod breakpoints;
mod density;
mod families;
mod porosity;
mod rational;

pub use algebrable::{algebrable_generator, algebrable_interval, cumulative_generator};
pub use breakpoints::{partition_index, partition_inverse, Breakpoints, MAX_DYADIC};
pub use density::{
    locally_constant_perturbation, sf_dense_approximation, DenseApproximation, LocallyConstant,
};
pub use families::{
    finite_generation_witness, semigroup_generator, semigroup_product, spaceable_basis,
    spaceable_combination, tsf1_generator, tsf1_interval, GenerationWitness,
    SpaceableCombination,
};
pub use porosity::{nonequicontinuity_witness, porosity_witness, EquicontinuityWitness, PorosityWitness};
pub use rational::{rational_at, rational_index, rational_seq, rational_seq_index, Rational, RationalSeq};

use crate::curve::{concat_nonempty, Curve};
use crate::error::Result;
use crate::geometry::Point;

/// Places curves on disjoint subintervals of `[0, 1]` and fills the rest with
/// the constant `background`.
pub(crate) fn assemble(mut pieces: Vec<(f64, f64, Curve)>, background: Point) -> Result<Curve> {
    pieces.retain(|(a, b, _)| a < b);
    pieces.sort_by(|x, y| x.0.total_cmp(&y.0));
    let filler = Curve::constant(background);
    let mut out = Vec::with_capacity(2 * pieces.len() + 1);
    let mut at = 0.0;
    for (a, b, c) in pieces {
        if at < a {
            out.push((at, a, filler.clone()));
        }
        out.push((a, b, c));
        at = b;
    }
    if at < 1.0 {
        out.push((at, 1.0, filler));
    }
    concat_nonempty(out)
}
