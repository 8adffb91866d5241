//! Breakpoint sequences `0 = a₀ < a₁ < … < a_M < 1` and the partition index
//! `p(n, k) = 2^{n-1}(2k - 1)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest `M` for which `1 - 2^{-n}` stays exactly representable and
/// strictly increasing.
pub const MAX_DYADIC: usize = 52;

/// A finite truncation `a₁ < … < a_M` of a sequence increasing to 1, with
/// `a₀ = 0` implicit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct Breakpoints {
    a: Vec<f64>,
}

impl Breakpoints {
    pub fn new(a: Vec<f64>) -> Result<Self> {
        if a.is_empty() {
            return Err(Error::Precondition("breakpoint list is empty".into()));
        }
        let mut prev = 0.0;
        for (i, &x) in a.iter().enumerate() {
            if !(prev < x && x < 1.0) {
                return Err(Error::Precondition(format!(
                    "breakpoint a_{} = {x} breaks 0 < a_1 < a_2 < ... < 1",
                    i + 1
                )));
            }
            prev = x;
        }
        Ok(Breakpoints { a })
    }

    /// `a_n = 1 - 2^{-n}`, `n = 1..=m`.
    pub fn dyadic(m: usize) -> Result<Self> {
        if m == 0 || m > MAX_DYADIC {
            return Err(Error::Precondition(format!(
                "dyadic breakpoints support 1..={MAX_DYADIC} entries, got {m}"
            )));
        }
        Breakpoints::new((1..=m as i32).map(|n| 1.0 - 0.5f64.powi(n)).collect())
    }

    /// `a_n = n / (n + 1)`: slower approach to 1, so that long index ranges keep
    /// intervals wide enough to resolve in binary64.
    pub fn harmonic(m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::Precondition("need at least one breakpoint".into()));
        }
        Breakpoints::new((1..=m).map(|n| n as f64 / (n as f64 + 1.0)).collect())
    }

    /// Number of breakpoints `M`.
    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.a
    }

    /// `a_n` for `0 ≤ n ≤ M`.
    pub fn get(&self, n: usize) -> Result<f64> {
        match n {
            0 => Ok(0.0),
            n if n <= self.a.len() => Ok(self.a[n - 1]),
            n => Err(Error::InsufficientBreakpoints {
                required: n,
                available: self.a.len(),
            }),
        }
    }

    /// `[a_{n-1}, a_n]` for `1 ≤ n ≤ M`.
    pub fn cell(&self, n: usize) -> Result<(f64, f64)> {
        if n == 0 || n > self.a.len() {
            return Err(Error::OutOfRange {
                index: n,
                max: self.a.len(),
            });
        }
        Ok((self.get(n - 1)?, self.get(n)?))
    }

    /// `[a_m, a_{m+1}]` for `m ≥ 1`, reporting the breakpoint count needed.
    pub fn span(&self, m: usize) -> Result<(f64, f64)> {
        if m + 1 > self.a.len() {
            return Err(Error::InsufficientBreakpoints {
                required: m + 1,
                available: self.a.len(),
            });
        }
        Ok((self.get(m)?, self.get(m + 1)?))
    }
}

impl Default for Breakpoints {
    fn default() -> Self {
        Breakpoints::dyadic(MAX_DYADIC).expect("valid dyadic breakpoints")
    }
}

impl TryFrom<Vec<f64>> for Breakpoints {
    type Error = Error;

    fn try_from(a: Vec<f64>) -> Result<Self> {
        Breakpoints::new(a)
    }
}

impl From<Breakpoints> for Vec<f64> {
    fn from(b: Breakpoints) -> Self {
        b.a
    }
}

/// `p(n, k) = 2^{n-1}(2k - 1)`, a bijection `ℕ × ℕ → ℕ` increasing in `k`.
pub fn partition_index(n: usize, k: usize) -> Result<usize> {
    if n == 0 || k == 0 {
        return Err(Error::Precondition(format!(
            "partition index needs n, k >= 1, got ({n}, {k})"
        )));
    }
    1usize
        .checked_shl(n as u32 - 1)
        .and_then(|p| p.checked_mul(2 * k - 1))
        .ok_or_else(|| Error::Precondition(format!("p({n}, {k}) overflows")))
}

/// Inverse of [`partition_index`].
pub fn partition_inverse(m: usize) -> Result<(usize, usize)> {
    if m == 0 {
        return Err(Error::Precondition("partition inverse needs m >= 1".into()));
    }
    let z = m.trailing_zeros();
    Ok((z as usize + 1, ((m >> z) + 1) / 2))
}
