//! Constructive space-filling curves.
//!
//! Curves are immutable combinator trees ([`curve::Curve`]) built from Hilbert
//! approximants, polygons and constants. The [`generators`] and
//! [`constructions`] modules assemble the families studied for Peano and
//! space-filling curves (semigroups, spaceable and algebrable families, porosity
//! and density witnesses); [`verification`] rasterizes images to certify
//! δ-density, bound Jordan content and check basic-sequence inequalities.

pub mod constructions;
pub mod curve;
pub mod error;
pub mod generators;
pub mod geometry;
pub mod polynomial;
pub mod sampling;
pub mod spec;
pub mod verification;

pub use curve::Curve;
pub use error::{Error, Result};
pub use geometry::{Point, Rect};
pub use polynomial::Polynomial;
