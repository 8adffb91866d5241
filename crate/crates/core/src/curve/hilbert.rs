use serde::{Deserialize, Serialize};

use crate::geometry::{Point, Rect};

/// Largest supported approximant order; `4^order` vertices must index exactly.
pub const MAX_ORDER: u32 = 24;

/// Which axis the first step of the approximant moves along.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Orientation {
    /// First step goes up (`+y`), last cell is the lower-right one.
    #[default]
    Standard,
    /// Mirror image across the diagonal: first step goes right.
    Transposed,
}

/// Order-`k` Hilbert approximant: the polyline through the `4^k` cell centres of
/// the `2^k × 2^k` grid over `target`, visited in Hilbert order.
#[derive(Debug, Clone, PartialEq)]
pub struct HilbertApprox {
    pub(crate) order: u32,
    pub(crate) target: Rect,
    pub(crate) orientation: Orientation,
}

impl HilbertApprox {
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn target(&self) -> Rect {
        self.target
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub(crate) fn side_cells(&self) -> u64 {
        1u64 << self.order
    }

    pub(crate) fn vertex_count(&self) -> u64 {
        1u64 << (2 * self.order)
    }

    /// Centre of the `index`-th visited cell.
    pub(crate) fn vertex(&self, index: u64) -> Point {
        let (i, j) = index_to_cell(self.order, index);
        self.cell_centre(i, j)
    }

    /// Position along the polyline for `t ∈ [0, 1]`; vertex `i` sits at
    /// `t = i / (4^k - 1)`.
    pub(crate) fn eval(&self, t: f64) -> Point {
        let last = self.vertex_count() - 1;
        let s = t * last as f64;
        let i = (s.floor() as u64).min(last - 1);
        let frac = s - i as f64;
        self.vertex(i).lerp(self.vertex(i + 1), frac)
    }

    /// Each step moves one coordinate by one cell; this is the exact speed.
    pub(crate) fn lipschitz(&self) -> f64 {
        let n = self.side_cells() as f64;
        let step = self.target.max_side() / n;
        (self.vertex_count() - 1) as f64 * step
    }

    /// Bounding box of the cell centres.
    pub(crate) fn hull(&self) -> Rect {
        let n = self.side_cells() as f64;
        let hx = 0.5 * self.target.width() / n;
        let hy = 0.5 * self.target.height() / n;
        Rect {
            x_lo: self.target.x_lo + hx,
            x_hi: self.target.x_hi - hx,
            y_lo: self.target.y_lo + hy,
            y_hi: self.target.y_hi - hy,
        }
    }

    fn cell_centre(&self, mut i: u64, mut j: u64) -> Point {
        if self.orientation == Orientation::Transposed {
            std::mem::swap(&mut i, &mut j);
        }
        let n = self.side_cells() as f64;
        self.target
            .from_unit((i as f64 + 0.5) / n, (j as f64 + 0.5) / n)
    }

    /// Tight bounding box of the arc over `[t0, t1]`.
    ///
    /// The interior vertices split into `O(order)` aligned runs of `4^j`
    /// indices, each filling an aligned `2^j × 2^j` block of cells.
    pub(crate) fn bbox_on(&self, t0: f64, t1: f64) -> Rect {
        let last = self.vertex_count() - 1;
        let i0 = ((t0 * last as f64).floor() as u64).min(last);
        let i1 = ((t1 * last as f64).ceil() as u64).min(last);
        let mut r = Rect::point(self.eval(t0));
        r.include(self.eval(t1));
        if i1 <= i0 + 1 {
            return r;
        }
        let (mut idx, hi) = (i0 + 1, i1 - 1);
        while idx <= hi {
            let mut level = 0;
            while level < self.order
                && idx % (1u64 << (2 * (level + 1))) == 0
                && idx + (1u64 << (2 * (level + 1))) - 1 <= hi
            {
                level += 1;
            }
            let (x, y) = index_to_cell(self.order, idx);
            let mask = (1u64 << level) - 1;
            let (x0, y0) = (x & !mask, y & !mask);
            r.include(self.cell_centre(x0, y0));
            r.include(self.cell_centre(x0 + mask, y0 + mask));
            idx += 1u64 << (2 * level);
        }
        r
    }
}

/// One Hilbert level: quadrant bits and the symmetry state `swap | flip << 1`
/// after descending through digit `d` from `state`.
const fn level_step(state: u8, d: u8) -> (u8, u8, u8) {
    let (swap, flip) = (state & 1, state >> 1);
    let qx = d >> 1;
    let qy = (d ^ qx) & 1;
    let (sx, sy) = if swap == 1 { (qy, qx) } else { (qx, qy) };
    let outer = (d == 0 || d == 3) as u8;
    let next = (swap ^ outer) | ((flip ^ (d == 3) as u8) << 1);
    (sx ^ flip, sy ^ flip, next)
}

/// Two levels at once: for `state << 4 | digits`, the packed
/// `x_bits | y_bits << 2 | next_state << 4`.
const PAIR_TABLE: [u8; 64] = {
    let mut table = [0u8; 64];
    let mut i = 0;
    while i < 64 {
        let (state, hi, lo) = ((i >> 4) as u8, ((i >> 2) & 3) as u8, (i & 3) as u8);
        let (x1, y1, s1) = level_step(state, hi);
        let (x0, y0, s0) = level_step(s1, lo);
        table[i] = (x1 << 1 | x0) | (y1 << 1 | y0) << 2 | s0 << 4;
        i += 1;
    }
    table
};

/// Maps a Hilbert index to integer cell coordinates on the `2^order` grid.
///
/// Order 1 visits `(0,0), (0,1), (1,1), (1,0)`. Digits are read from the top;
/// the first quadrant recurses transposed, the last anti-transposed.
pub(crate) fn index_to_cell(order: u32, index: u64) -> (u64, u64) {
    let (mut x, mut y) = (0u64, 0u64);
    let mut state = 0u8;
    let mut level = order;
    if level % 2 == 1 {
        level -= 1;
        let (sx, sy, next) = level_step(0, ((index >> (2 * level)) & 3) as u8);
        x = sx as u64;
        y = sy as u64;
        state = next;
    }
    while level > 0 {
        level -= 2;
        let digits = ((index >> (2 * level)) & 15) as usize;
        let entry = PAIR_TABLE[(state as usize) << 4 | digits];
        x = (x << 2) | (entry & 3) as u64;
        y = (y << 2) | ((entry >> 2) & 3) as u64;
        state = entry >> 4;
    }
    (x, y)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Bottom-up construction kept as an oracle.
    fn reference_cell(order: u32, index: u64) -> (u64, u64) {
        let n = 1u64 << order;
        let (mut x, mut y) = (0u64, 0u64);
        let mut t = index;
        let mut s = 1u64;
        while s < n {
            let rx = 1 & (t / 2);
            let ry = 1 & (t ^ rx);
            if ry == 0 {
                if rx == 1 {
                    x = s - 1 - x;
                    y = s - 1 - y;
                }
                std::mem::swap(&mut x, &mut y);
            }
            x += s * rx;
            y += s * ry;
            t /= 4;
            s *= 2;
        }
        (x, y)
    }

    #[test]
    fn top_down_matches_bottom_up() {
        for order in 1..=8 {
            for d in 0..1u64 << (2 * order) {
                assert_eq!(index_to_cell(order, d), reference_cell(order, d), "order {order} index {d}");
            }
        }
        for d in [0, 1, 12345, 1 << 40, (1u64 << 48) - 1] {
            assert_eq!(index_to_cell(24, d), reference_cell(24, d));
        }
    }

    #[test]
    fn consecutive_cells_are_adjacent() {
        for order in 1..=6 {
            let mut seen = std::collections::HashSet::new();
            let count = 1u64 << (2 * order);
            let mut prev = index_to_cell(order, 0);
            seen.insert(prev);
            for d in 1..count {
                let c = index_to_cell(order, d);
                let step = prev.0.abs_diff(c.0) + prev.1.abs_diff(c.1);
                assert_eq!(step, 1, "order {order} index {d}");
                assert!(seen.insert(c));
                prev = c;
            }
            assert_eq!(index_to_cell(order, 0), (0, 0));
            assert_eq!(index_to_cell(order, count - 1), ((1 << order) - 1, 0));
        }
    }

    #[test]
    fn local_bbox_matches_brute_force() {
        let target = Rect::new(-1.0, 2.0, 0.5, 1.5).unwrap();
        for orientation in [Orientation::Standard, Orientation::Transposed] {
            let h = HilbertApprox { order: 5, target, orientation };
            let last = (h.vertex_count() - 1) as f64;
            for (a, b) in [(0.0, 1.0), (0.013, 0.77), (0.25, 0.5), (0.3001, 0.3002), (0.9, 1.0)] {
                let mut expect = Rect::point(h.eval(a));
                expect.include(h.eval(b));
                for i in 0..h.vertex_count() {
                    let t = i as f64 / last;
                    if a < t && t < b {
                        expect.include(h.vertex(i));
                    }
                }
                assert_eq!(h.bbox_on(a, b), expect, "window [{a}, {b}]");
            }
        }
    }
}
