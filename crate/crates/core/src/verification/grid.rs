//! Coverage grids over a reference rectangle.

use serde::{Deserialize, Serialize};

use crate::curve::Curve;
use crate::error::{Error, Result};
use crate::geometry::{Point, Rect};
use crate::sampling::SamplePlan;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CellState {
    Untouched,
    Hit,
    /// Hit, together with all eight neighbours.
    Interior,
}

/// An `n × n` occupancy map of `frame`. Cell `[i, j]` is column `i` from the
/// left and row `j` from the bottom.
#[derive(Debug, Clone, PartialEq)]
pub struct CoverageGrid {
    frame: Rect,
    n: usize,
    cells: Vec<CellState>,
    sample_count: u64,
    out_of_frame: u64,
}

impl CoverageGrid {
    pub fn new(frame: Rect, n: usize) -> Result<Self> {
        frame.require_non_degenerate()?;
        if n == 0 || n > 1 << 14 {
            return Err(Error::Precondition(format!(
                "grid size must lie in 1..=16384, got {n}"
            )));
        }
        Ok(CoverageGrid {
            frame,
            n,
            cells: vec![CellState::Untouched; n * n],
            sample_count: 0,
            out_of_frame: 0,
        })
    }

    pub fn frame(&self) -> Rect {
        self.frame
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn sample_count(&self) -> u64 {
        self.sample_count
    }

    /// Samples that fell outside the frame.
    pub fn out_of_frame(&self) -> u64 {
        self.out_of_frame
    }

    pub fn cell_width(&self) -> f64 {
        self.frame.width() / self.n as f64
    }

    pub fn cell_height(&self) -> f64 {
        self.frame.height() / self.n as f64
    }

    pub fn cell_area(&self) -> f64 {
        self.cell_width() * self.cell_height()
    }

    /// The closed cell containing `p`; points on the upper and right edges of
    /// the frame belong to the last row or column.
    pub fn cell_of(&self, p: Point) -> Option<(usize, usize)> {
        if !self.frame.contains(p) {
            return None;
        }
        let n = self.n as f64;
        let i = ((p.x - self.frame.x_lo) / self.frame.width() * n).floor();
        let j = ((p.y - self.frame.y_lo) / self.frame.height() * n).floor();
        let last = self.n - 1;
        Some(((i as usize).min(last), (j as usize).min(last)))
    }

    pub fn state(&self, i: usize, j: usize) -> CellState {
        self.cells[j * self.n + i]
    }

    pub fn mark(&mut self, p: Point) {
        self.sample_count += 1;
        match self.cell_of(p) {
            Some((i, j)) => {
                let c = &mut self.cells[j * self.n + i];
                if *c == CellState::Untouched {
                    *c = CellState::Hit;
                }
            }
            None => self.out_of_frame += 1,
        }
    }

    /// Cellwise maximum of two grids over the same frame.
    pub fn merge(&mut self, other: &CoverageGrid) {
        assert!(self.n == other.n && self.frame == other.frame, "merging unlike grids");
        for (a, &b) in self.cells.iter_mut().zip(&other.cells) {
            *a = (*a).max(b);
        }
        self.sample_count += other.sample_count;
        self.out_of_frame += other.out_of_frame;
    }

    /// Applies the 3×3 rule: a hit cell is interior when its eight neighbours
    /// are hit. Cells on the frame edge never qualify.
    pub fn certify_interior(&mut self) {
        let n = self.n;
        let hit = |c: CellState| c != CellState::Untouched;
        let mut interior = Vec::new();
        for j in 1..n.saturating_sub(1) {
            for i in 1..n - 1 {
                let all = (j - 1..=j + 1)
                    .all(|jj| (i - 1..=i + 1).all(|ii| hit(self.cells[jj * n + ii])));
                if all {
                    interior.push(j * n + i);
                }
            }
        }
        for idx in interior {
            self.cells[idx] = CellState::Interior;
        }
    }

    pub fn count(&self, state: CellState) -> usize {
        self.cells.iter().filter(|&&c| c == state).count()
    }

    /// Cells in state hit or interior.
    pub fn hit_count(&self) -> usize {
        self.cells.len() - self.count(CellState::Untouched)
    }

    pub fn first_interior(&self) -> Option<[usize; 2]> {
        self.cells
            .iter()
            .position(|&c| c == CellState::Interior)
            .map(|idx| [idx % self.n, idx / self.n])
    }

    /// Binary PGM (P5) image: black untouched, grey hit, white interior, top row
    /// first.
    pub fn to_pgm(&self) -> Vec<u8> {
        let mut out = format!("P5\n{} {}\n255\n", self.n, self.n).into_bytes();
        for j in (0..self.n).rev() {
            for i in 0..self.n {
                out.push(match self.state(i, j) {
                    CellState::Untouched => 0,
                    CellState::Hit => 128,
                    CellState::Interior => 255,
                });
            }
        }
        out
    }
}

/// Rasterizes the image of `curve` over the parameter window into one grid per
/// size, all over the same frame, in a single sampling pass. Consecutive
/// samples move less than half of the finest cell, and at least `n_samples`
/// are taken; interior cells are certified afterwards.
pub fn rasterize_multi(
    curve: &Curve,
    window: (f64, f64),
    frame: Rect,
    sizes: &[usize],
    n_samples: u64,
) -> Result<Vec<CoverageGrid>> {
    if sizes.is_empty() {
        return Err(Error::Precondition("no grid sizes given".into()));
    }
    let empty = sizes
        .iter()
        .map(|&n| CoverageGrid::new(frame, n))
        .collect::<Result<Vec<_>>>()?;
    let finest = empty
        .iter()
        .map(|g| g.cell_width().min(g.cell_height()))
        .fold(f64::INFINITY, f64::min);
    let plan = SamplePlan::new(curve, window, 0.5 * finest, n_samples)?;
    let mut grids = plan.fold(
        curve,
        || empty.clone(),
        |acc, _, p| acc.iter_mut().for_each(|g| g.mark(p)),
        |mut a, b| {
            a.iter_mut().zip(&b).for_each(|(x, y)| x.merge(y));
            a
        },
    )?;
    grids.iter_mut().for_each(CoverageGrid::certify_interior);
    Ok(grids)
}

/// Rasterizes the image of `curve` into an `n × n` grid over `frame`.
pub fn rasterize(curve: &Curve, frame: Rect, n: usize, n_samples: u64) -> Result<CoverageGrid> {
    rasterize_window(curve, (0.0, 1.0), frame, n, n_samples)
}

/// Rasterizes the image of `curve` restricted to a parameter window.
pub fn rasterize_window(
    curve: &Curve,
    window: (f64, f64),
    frame: Rect,
    n: usize,
    n_samples: u64,
) -> Result<CoverageGrid> {
    Ok(rasterize_multi(curve, window, frame, &[n], n_samples)?.remove(0))
}
