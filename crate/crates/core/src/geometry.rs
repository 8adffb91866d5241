use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point of the plane. Serialized as a two-element array `[x, y]`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    /// Max-coordinate norm `‖p‖₁ = max(|x|, |y|)`.
    pub fn norm_inf(self) -> f64 {
        self.x.abs().max(self.y.abs())
    }

    /// Distance induced by the max-coordinate norm.
    pub fn dist_inf(self, other: Point) -> f64 {
        (self.x - other.x).abs().max((self.y - other.y).abs())
    }

    /// `(1 - s) a + s b`, which returns `a` at `s = 0` and `b` at `s = 1` bit-exactly.
    pub fn lerp(self, other: Point, s: f64) -> Point {
        Point::new(
            (1.0 - s) * self.x + s * other.x,
            (1.0 - s) * self.y + s * other.y,
        )
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl From<[f64; 2]> for Point {
    fn from([x, y]: [f64; 2]) -> Self {
        Point { x, y }
    }
}

impl From<Point> for [f64; 2] {
    fn from(p: Point) -> Self {
        [p.x, p.y]
    }
}

impl From<(f64, f64)> for Point {
    fn from((x, y): (f64, f64)) -> Self {
        Point { x, y }
    }
}

/// Closed axis-aligned rectangle `[x_lo, x_hi] × [y_lo, y_hi]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Rect {
    pub x_lo: f64,
    pub x_hi: f64,
    pub y_lo: f64,
    pub y_hi: f64,
}

impl Rect {
    /// The unit square `I²`.
    pub const UNIT: Rect = Rect {
        x_lo: 0.0,
        x_hi: 1.0,
        y_lo: 0.0,
        y_hi: 1.0,
    };

    /// The square `[-1, 1]²`.
    pub const SYMMETRIC: Rect = Rect {
        x_lo: -1.0,
        x_hi: 1.0,
        y_lo: -1.0,
        y_hi: 1.0,
    };

    pub fn new(x_lo: f64, x_hi: f64, y_lo: f64, y_hi: f64) -> Result<Self> {
        let r = Rect {
            x_lo,
            x_hi,
            y_lo,
            y_hi,
        };
        r.validate()?;
        Ok(r)
    }

    /// `[-h, h]²`.
    pub fn centered_square(h: f64) -> Self {
        Rect {
            x_lo: -h,
            x_hi: h,
            y_lo: -h,
            y_hi: h,
        }
    }

    /// Square of side `side` centred on `c`.
    pub fn square_around(c: Point, side: f64) -> Self {
        let h = side / 2.0;
        Rect {
            x_lo: c.x - h,
            x_hi: c.x + h,
            y_lo: c.y - h,
            y_hi: c.y + h,
        }
    }

    pub fn point(p: Point) -> Self {
        Rect {
            x_lo: p.x,
            x_hi: p.x,
            y_lo: p.y,
            y_hi: p.y,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [self.x_lo, self.x_hi, self.y_lo, self.y_hi]
            .iter()
            .all(|v| v.is_finite());
        if !finite || self.x_lo > self.x_hi || self.y_lo > self.y_hi {
            return Err(Error::Precondition(format!(
                "invalid rectangle [{}, {}] x [{}, {}]",
                self.x_lo, self.x_hi, self.y_lo, self.y_hi
            )));
        }
        Ok(())
    }

    /// Checks the rectangle can serve as a filler target.
    pub fn require_non_degenerate(&self) -> Result<()> {
        self.validate()?;
        if self.x_lo >= self.x_hi || self.y_lo >= self.y_hi {
            return Err(Error::Precondition(format!(
                "degenerate rectangle [{}, {}] x [{}, {}]",
                self.x_lo, self.x_hi, self.y_lo, self.y_hi
            )));
        }
        Ok(())
    }

    pub fn width(&self) -> f64 {
        self.x_hi - self.x_lo
    }

    pub fn height(&self) -> f64 {
        self.y_hi - self.y_lo
    }

    pub fn max_side(&self) -> f64 {
        self.width().max(self.height())
    }

    pub fn area(&self) -> f64 {
        self.width() * self.height()
    }

    pub fn center(&self) -> Point {
        Point::new(
            0.5 * (self.x_lo + self.x_hi),
            0.5 * (self.y_lo + self.y_hi),
        )
    }

    pub fn contains(&self, p: Point) -> bool {
        self.x_lo <= p.x && p.x <= self.x_hi && self.y_lo <= p.y && p.y <= self.y_hi
    }

    pub fn union(&self, other: &Rect) -> Rect {
        Rect {
            x_lo: self.x_lo.min(other.x_lo),
            x_hi: self.x_hi.max(other.x_hi),
            y_lo: self.y_lo.min(other.y_lo),
            y_hi: self.y_hi.max(other.y_hi),
        }
    }

    pub fn include(&mut self, p: Point) {
        self.x_lo = self.x_lo.min(p.x);
        self.x_hi = self.x_hi.max(p.x);
        self.y_lo = self.y_lo.min(p.y);
        self.y_hi = self.y_hi.max(p.y);
    }

    /// Largest `|coordinate|` over the rectangle.
    pub fn max_abs(&self) -> f64 {
        self.x_lo
            .abs()
            .max(self.x_hi.abs())
            .max(self.y_lo.abs())
            .max(self.y_hi.abs())
    }

    /// Maps `(u, v) ∈ I²` affinely onto the rectangle.
    pub fn from_unit(&self, u: f64, v: f64) -> Point {
        Point::new(
            self.x_lo + u * self.width(),
            self.y_lo + v * self.height(),
        )
    }
}
