//! Jordan-content bounds, δ-density certificates and SF/TSF classification.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

use crate::curve::Curve;
use crate::error::{Error, Result};
use crate::geometry::{Point, Rect};
use crate::verification::grid::{rasterize_multi, CellState, CoverageGrid};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContentReport {
    /// Area of interior-certified cells.
    pub inner: f64,
    /// Area of hit cells.
    pub outer: f64,
    pub boundary_mass: f64,
    /// `boundary_mass / area(frame)`.
    pub boundary_fraction: f64,
    #[serde(rename = "witness_cell")]
    pub interior_witness: Option<[usize; 2]>,
    pub grid: usize,
    pub frame: Rect,
}

pub fn content_bounds(grid: &CoverageGrid) -> ContentReport {
    let area = grid.cell_area();
    let interior = grid.count(CellState::Interior);
    let hit = grid.hit_count();
    let inner = interior as f64 * area;
    let outer = hit as f64 * area;
    let boundary_mass = (hit - interior) as f64 * area;
    ContentReport {
        inner,
        outer,
        boundary_mass,
        boundary_fraction: boundary_mass / grid.frame().area(),
        interior_witness: grid.first_interior(),
        grid: grid.n(),
        frame: grid.frame(),
    }
}

/// Whether every cell of the `⌈side/δ⌉`-grid over `target` holds a point of
/// the image. Cells the samples miss are searched with local bounding boxes.
pub fn certify_delta_dense(curve: &Curve, target: Rect, delta: f64) -> Result<bool> {
    certify_delta_dense_with(curve, target, delta, 4)
}

/// As [`certify_delta_dense`], with an explicit number of base samples.
pub fn certify_delta_dense_with(curve: &Curve, target: Rect, delta: f64, n_samples: u64) -> Result<bool> {
    if !(delta > 0.0) {
        return Err(Error::Precondition(format!("delta must be positive, got {delta}")));
    }
    target.require_non_degenerate()?;
    let n = (target.max_side() / delta * (1.0 - 1e-12)).ceil().max(1.0) as usize;
    let grid = rasterize_multi(curve, (0.0, 1.0), target, &[n], n_samples)?.remove(0);
    for j in 0..n {
        for i in 0..n {
            if grid.state(i, j) == CellState::Untouched && !find_in_cell(curve, &grid, i, j)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Window evaluations spent looking for an image point in one missed cell.
const CELL_SEARCH_NODES: usize = 1 << 14;

/// Searches for a parameter whose image lies in cell `(i, j)`. Samples can
/// step over a cell the curve only clips at a corner; local bounding boxes
/// locate such points or rule the cell out.
fn find_in_cell(curve: &Curve, grid: &CoverageGrid, i: usize, j: usize) -> Result<bool> {
    let (w, h, frame) = (grid.cell_width(), grid.cell_height(), grid.frame());
    let cell = Rect {
        x_lo: frame.x_lo + w * i as f64,
        x_hi: frame.x_lo + w * (i + 1) as f64,
        y_lo: frame.y_lo + h * j as f64,
        y_hi: frame.y_lo + h * (j + 1) as f64,
    };
    let mut stack = vec![(0.0, 1.0)];
    let mut budget = CELL_SEARCH_NODES;
    while let Some((a, b)) = stack.pop() {
        let bbox = curve.bounds_on(a, b)?.bbox;
        if bbox.x_hi < cell.x_lo || bbox.x_lo > cell.x_hi || bbox.y_hi < cell.y_lo || bbox.y_lo > cell.y_hi {
            continue;
        }
        let mid = 0.5 * (a + b);
        if grid.cell_of(curve.eval_in_domain(mid)?) == Some((i, j)) {
            return Ok(true);
        }
        if budget == 0 || !(a < mid && mid < b) {
            continue;
        }
        budget -= 1;
        stack.push((mid, b));
        stack.push((a, mid));
    }
    Ok(false)
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct Candidate {
    lower: f64,
    t0: f64,
    t1: f64,
}

impl Eq for Candidate {}

impl Ord for Candidate {
    fn cmp(&self, other: &Self) -> Ordering {
        other.lower.total_cmp(&self.lower)
    }
}

impl PartialOrd for Candidate {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

const FRAME_ITERATIONS: usize = 200_000;

/// A lower bound within `tol` of `min_t key(curve(t))`, by best-first
/// branch and bound on local bounding boxes.
fn minimize(
    curve: &Curve,
    window: (f64, f64),
    key: impl Fn(Point) -> f64,
    lower: impl Fn(&Rect) -> f64,
    tol: f64,
) -> Result<f64> {
    let mut best = key(curve.eval(window.0)?).min(key(curve.eval(window.1)?));
    let mut heap = BinaryHeap::new();
    heap.push(Candidate {
        lower: lower(&curve.bounds_on(window.0, window.1)?.bbox),
        t0: window.0,
        t1: window.1,
    });
    let mut iterations = 0;
    while let Some(c) = heap.pop() {
        iterations += 1;
        if c.lower >= best - tol || iterations > FRAME_ITERATIONS {
            return Ok(c.lower.min(best));
        }
        let mid = 0.5 * (c.t0 + c.t1);
        if !(c.t0 < mid && mid < c.t1) {
            continue;
        }
        best = best.min(key(curve.eval(mid)?));
        for (a, b) in [(c.t0, mid), (mid, c.t1)] {
            let lo = lower(&curve.bounds_on(a, b)?.bbox);
            if lo < best - tol {
                heap.push(Candidate { lower: lo, t0: a, t1: b });
            }
        }
    }
    Ok(best)
}

/// A rectangle containing the image of the window, each edge within a small
/// relative tolerance of the tight bounding box.
pub fn image_frame(curve: &Curve, window: (f64, f64)) -> Result<Rect> {
    let (t0, t1) = window;
    if !(0.0 <= t0 && t0 <= t1 && t1 <= 1.0) {
        return Err(Error::Precondition(format!(
            "window [{t0}, {t1}] is not inside [0, 1]"
        )));
    }
    let mut probe = Rect::point(curve.eval(t0)?);
    for i in 1..=256 {
        probe.include(curve.eval(t0 + (t1 - t0) * i as f64 / 256.0)?);
    }
    let tol = (1e-4 * probe.max_side()).max(1e-12 * (1.0 + probe.max_abs()));
    Ok(Rect {
        x_lo: minimize(curve, window, |p| p.x, |r| r.x_lo, tol)?,
        x_hi: -minimize(curve, window, |p| -p.x, |r| -r.x_hi, tol)?,
        y_lo: minimize(curve, window, |p| p.y, |r| r.y_lo, tol)?,
        y_hi: -minimize(curve, window, |p| -p.y, |r| -r.y_hi, tol)?,
    })
}

/// Widens a degenerate frame to a square: a segment to the square on its
/// longer side, a point to the unit square centred on it.
pub fn non_degenerate_frame(frame: Rect) -> Rect {
    let side = frame.max_side();
    if side == 0.0 {
        Rect::square_around(frame.center(), 1.0)
    } else if frame.width() == 0.0 || frame.height() == 0.0 {
        Rect::square_around(frame.center(), side)
    } else {
        frame
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    SfCertifiedAtResolution,
    TsfEvidence,
    Thin,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::SfCertifiedAtResolution => "sf-certified-at-resolution",
            Verdict::TsfEvidence => "tsf-evidence",
            Verdict::Thin => "thin",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassifyConfig {
    /// Increasing grid sizes.
    pub grid_sizes: Vec<usize>,
    /// Threshold on the boundary fraction at the largest grid.
    pub tau_sf: f64,
    /// Minimum equispaced samples per pass.
    pub n_samples: u64,
}

impl Default for ClassifyConfig {
    fn default() -> Self {
        ClassifyConfig {
            grid_sizes: vec![64, 128, 256, 512],
            tau_sf: 0.05,
            n_samples: 1024,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Classification {
    pub verdict: Verdict,
    pub frame: Rect,
    pub reports: Vec<ContentReport>,
}

impl Classification {
    /// The report at the largest grid.
    pub fn finest(&self) -> &ContentReport {
        self.reports.last().expect("at least one grid")
    }
}

/// Classifies the image over the tight frame of the curve.
pub fn classify(curve: &Curve, config: &ClassifyConfig) -> Result<Classification> {
    classify_window(curve, (0.0, 1.0), config)
}

/// SF-certified when the largest grid has an interior witness and the boundary
/// fraction is non-increasing across grids and below `τ_SF` at the largest;
/// TSF evidence for a witness without the boundary test; thin when no grid has
/// interior cells.
pub fn classify_window(curve: &Curve, window: (f64, f64), config: &ClassifyConfig) -> Result<Classification> {
    let sizes = &config.grid_sizes;
    if sizes.is_empty() || sizes.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Precondition(
            "grid sizes must be nonempty and strictly increasing".into(),
        ));
    }
    let frame = non_degenerate_frame(image_frame(curve, window)?);
    let grids = rasterize_multi(curve, window, frame, sizes, config.n_samples)?;
    let reports: Vec<ContentReport> = grids.iter().map(content_bounds).collect();
    let last = reports.last().expect("nonempty");
    let shrinking = reports
        .windows(2)
        .all(|w| w[1].boundary_fraction <= w[0].boundary_fraction + 1e-12);
    let verdict = if last.interior_witness.is_some() {
        if shrinking && last.boundary_fraction < config.tau_sf {
            Verdict::SfCertifiedAtResolution
        } else {
            Verdict::TsfEvidence
        }
    } else if reports.iter().all(|r| r.inner == 0.0) {
        Verdict::Thin
    } else {
        Verdict::Inconclusive
    };
    Ok(Classification {
        verdict,
        frame,
        reports,
    })
}
