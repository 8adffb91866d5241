//! Numerical verification: rasterization, content bounds, δ-density,
//! classification and basic-sequence checks.

mod content;
mod grid;
mod nikolskii;

pub use content::{
    certify_delta_dense, certify_delta_dense_with, classify, classify_window, content_bounds,
    image_frame, non_degenerate_frame, Classification, ClassifyConfig, ContentReport, Verdict,
};
pub use grid::{rasterize, rasterize_multi, rasterize_window, CellState, CoverageGrid};
pub use nikolskii::{coefficient_decay_check, nikolskii_ratio, DecayReport, TAU_NORM};
