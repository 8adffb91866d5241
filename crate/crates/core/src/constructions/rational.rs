//! A computable bijective enumeration of `J`, the finitely supported sequences
//! with entries in `ℚ ∩ (-1, 1)`.
//!
//! Rationals are indexed through the Calkin–Wilf sequence: index 0 is `0`,
//! index `2j - 1` is `a/(a+b)` and index `2j` is `-a/(a+b)`, where `a/b` is the
//! `j`-th Calkin–Wilf term. A sequence is identified with its index vector with
//! trailing zeros stripped; sequences are grouped by height
//! `max(length, largest index)`, and ordered by length and then
//! lexicographically within a height.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Heights beyond this overflow the `u128` block counts.
const MAX_HEIGHT: u64 = 24;

/// A reduced rational `num / den` with `den > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Rational {
    pub num: i64,
    pub den: i64,
}

impl Rational {
    pub const ZERO: Rational = Rational { num: 0, den: 1 };

    pub fn new(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::Precondition("zero denominator".into()));
        }
        let g = gcd(num.unsigned_abs(), den.unsigned_abs()) as i64;
        let s = den.signum();
        Ok(Rational {
            num: s * num / g.max(1),
            den: s * den / g.max(1),
        })
    }

    pub fn value(self) -> f64 {
        self.num as f64 / self.den as f64
    }

    pub fn is_zero(self) -> bool {
        self.num == 0
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Stern's diatomic sequence: the `j`-th Calkin–Wilf term is
/// `fusc(j) / fusc(j + 1)`.
fn fusc(mut j: u64) -> u64 {
    let (mut a, mut b) = (1u64, 0u64);
    while j > 0 {
        if j & 1 == 1 {
            b += a;
        } else {
            a += b;
        }
        j >>= 1;
    }
    b
}

/// The rational in `(-1, 1)` with the given index.
pub fn rational_at(index: u64) -> Rational {
    if index == 0 {
        return Rational::ZERO;
    }
    let j = index.div_ceil(2);
    let (a, b) = (fusc(j), fusc(j + 1));
    let sign = if index % 2 == 1 { 1 } else { -1 };
    Rational {
        num: sign * a as i64,
        den: (a + b) as i64,
    }
}

/// Index of a rational in `(-1, 1)`.
pub fn rational_index(q: Rational) -> Result<u64> {
    let q = Rational::new(q.num, q.den)?;
    if q.num == 0 {
        return Ok(0);
    }
    let a = q.num.unsigned_abs();
    let den = q.den as u64;
    if a >= den {
        return Err(Error::Precondition(format!("{q} lies outside (-1, 1)")));
    }
    // Climb the Calkin–Wilf tree from a/b to the root, recording the path.
    let (mut x, mut y) = (a, den - a);
    let mut bits = Vec::new();
    while (x, y) != (1, 1) {
        if x < y {
            bits.push(0u8);
            y -= x;
        } else {
            bits.push(1u8);
            x -= y;
        }
    }
    let mut j = 1u64;
    for &bit in bits.iter().rev() {
        j = j
            .checked_mul(2)
            .and_then(|v| v.checked_add(bit as u64))
            .ok_or_else(|| Error::Precondition(format!("index of {q} overflows")))?;
    }
    let idx = if q.num > 0 { 2 * j - 1 } else { 2 * j };
    Ok(idx)
}

/// An element `σ_k` of `J`: finitely many rationals followed by zeros.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalSeq {
    /// Position `k ≥ 1` in the enumeration.
    pub index: u64,
    /// Entries up to the last nonzero one.
    pub entries: Vec<Rational>,
}

impl RationalSeq {
    /// `q_n` (1-based); zero beyond the stored entries.
    pub fn get(&self, n: usize) -> Rational {
        if n == 0 {
            return Rational::ZERO;
        }
        self.entries.get(n - 1).copied().unwrap_or(Rational::ZERO)
    }
}

fn pow(b: u64, e: u64) -> u128 {
    (b as u128).pow(e as u32)
}

/// Vectors of length `r` over `0..=h`, with a nonzero last entry when
/// `last_nonzero`, that contain the value `h` when `need_h`.
fn completions(h: u64, r: u64, need_h: bool, last_nonzero: bool) -> u128 {
    let count = |alphabet: u64| -> u128 {
        if r == 0 {
            1
        } else if last_nonzero {
            pow(alphabet, r - 1) * (alphabet as u128).saturating_sub(1)
        } else {
            pow(alphabet, r)
        }
    };
    let all = count(h + 1);
    if need_h {
        all - if h == 0 { 0 } else { count(h) }
    } else {
        all
    }
}

/// Number of canonical sequences of height exactly `h` and length `l`.
fn block_len_count(h: u64, l: u64) -> u128 {
    match l {
        0 => u128::from(h == 0),
        l if l > h => 0,
        l => completions(h, l, l < h, true),
    }
}

fn block_count(h: u64) -> u128 {
    (0..=h).map(|l| block_len_count(h, l)).sum()
}

/// `σ_k`, the `k`-th element of `J` (`k ≥ 1`).
pub fn rational_seq(k: u64) -> Result<RationalSeq> {
    if k == 0 {
        return Err(Error::Precondition("sequence index starts at 1".into()));
    }
    let mut rank = (k - 1) as u128;
    let mut h = 0;
    loop {
        let size = block_count(h);
        if rank < size {
            break;
        }
        rank -= size;
        h += 1;
    }
    let mut l = 0;
    loop {
        let size = block_len_count(h, l);
        if rank < size {
            break;
        }
        rank -= size;
        l += 1;
    }
    let mut idx = Vec::with_capacity(l as usize);
    let mut has_h = false;
    for i in 0..l {
        let rest = l - i - 1;
        let lo = if rest == 0 { 1 } else { 0 };
        let mut chosen = None;
        for c in lo..=h {
            let n = completions(h, rest, l < h && !(has_h || c == h), rest > 0);
            if rank < n {
                chosen = Some(c);
                break;
            }
            rank -= n;
        }
        let c = chosen.expect("rank lies inside its block");
        has_h |= c == h;
        idx.push(c);
    }
    Ok(RationalSeq {
        index: k,
        entries: idx.into_iter().map(rational_at).collect(),
    })
}

/// The position `k` with `σ_k = entries` (trailing zeros ignored).
pub fn rational_seq_index(entries: &[Rational]) -> Result<u64> {
    let mut idx = entries
        .iter()
        .map(|&q| rational_index(q))
        .collect::<Result<Vec<_>>>()?;
    while idx.last() == Some(&0) {
        idx.pop();
    }
    let l = idx.len() as u64;
    let h = idx.iter().copied().max().unwrap_or(0).max(l);
    if h > MAX_HEIGHT {
        return Err(Error::Precondition(format!(
            "sequence height {h} exceeds the supported {MAX_HEIGHT}"
        )));
    }
    let mut rank: u128 = (0..h).map(block_count).sum();
    rank += (0..l).map(|m| block_len_count(h, m)).sum::<u128>();
    let mut has_h = false;
    for (i, &v) in idx.iter().enumerate() {
        let rest = l - i as u64 - 1;
        let lo = if rest == 0 { 1 } else { 0 };
        for c in lo..v {
            rank += completions(h, rest, l < h && !(has_h || c == h), rest > 0);
        }
        has_h |= v == h;
    }
    u64::try_from(rank + 1)
        .map_err(|_| Error::Precondition("sequence index overflows u64".into()))
}
