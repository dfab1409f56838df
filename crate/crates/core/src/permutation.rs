//! One-line permutations of `{0, .., m-1}`.
//!
//! Positions are 0-based internally; [`Permutation`]'s `Display` and
//! [`Permutation::cycles_one_based`] render them 1-based.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Mul, Neg};

use crate::error::{Error, Result};

/// Sign of a permutation, `+1` for even and `-1` for odd.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    /// `(-1)^e`.
    #[inline]
    pub fn from_exponent(e: u64) -> Self {
        if e.is_multiple_of(2) {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    /// Maps `+1`/`-1` to a sign; anything else is `None`.
    pub fn from_int(v: i64) -> Option<Self> {
        match v {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }

    /// Interprets a residue `x` modulo `p` as a sign: `1 -> +1`, `p-1 -> -1`.
    pub fn from_residue(x: u64, p: u64) -> Option<Self> {
        if x == 1 % p {
            Some(Sign::Plus)
        } else if x + 1 == p {
            Some(Sign::Minus)
        } else {
            None
        }
    }

    /// The residue of `+1`/`-1` modulo `p`.
    pub fn to_residue(self, p: u64) -> u64 {
        match self {
            Sign::Plus => 1 % p,
            Sign::Minus => p - 1,
        }
    }

    #[inline]
    pub fn to_i8(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        self * Sign::Minus
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+1",
            Sign::Minus => "-1",
        })
    }
}

/// A bijection of `{0, .., m-1}` stored as its list of images.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    map: Vec<usize>,
}

impl Permutation {
    /// Validates that `map` hits every position exactly once.
    pub fn new(map: Vec<usize>) -> Result<Self> {
        let m = map.len();
        let mut seen = vec![false; m];
        for (t, &x) in map.iter().enumerate() {
            if x >= m {
                return Err(Error::NotAPermutation(format!(
                    "image {x} of position {t} is out of range for size {m}"
                )));
            }
            if std::mem::replace(&mut seen[x], true) {
                return Err(Error::NotAPermutation(format!("image {x} appears twice")));
            }
        }
        Ok(Self { map })
    }

    pub fn identity(m: usize) -> Self {
        Self {
            map: (0..m).collect(),
        }
    }

    /// The permutation `s` with `b[t] = a[s(t)]` for every position `t`.
    pub fn from_sequences(a: &[u64], b: &[u64]) -> Result<Self> {
        if a.len() != b.len() {
            return Err(Error::LengthMismatch {
                left: a.len(),
                right: b.len(),
            });
        }
        let mut position = HashMap::with_capacity(a.len());
        for (t, &x) in a.iter().enumerate() {
            if position.insert(x, t).is_some() {
                return Err(Error::NotAPermutation(format!("{x} repeated in sequence")));
            }
        }
        let map = b
            .iter()
            .map(|x| position.get(x).copied().ok_or(Error::SetMismatch(*x)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(map)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.map.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    #[inline]
    pub fn images(&self) -> &[usize] {
        &self.map
    }

    #[inline]
    pub fn apply(&self, t: usize) -> usize {
        self.map[t]
    }

    /// Rearranges `seq` so that entry `t` of the result is `seq[self(t)]`.
    pub fn permute<T: Copy>(&self, seq: &[T]) -> Vec<T> {
        self.map.iter().map(|&s| seq[s]).collect()
    }

    /// Number of cycles, fixed points included.
    pub fn cycle_count(&self) -> usize {
        let mut seen = vec![false; self.len()];
        let mut cycles = 0;
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            cycles += 1;
            let mut t = start;
            while !seen[t] {
                seen[t] = true;
                t = self.map[t];
            }
        }
        cycles
    }

    /// `(-1)^(m - cycles)`.
    pub fn sign(&self) -> Sign {
        Sign::from_exponent((self.len() - self.cycle_count()) as u64)
    }

    /// Number of pairs `s < t` with `map[s] > map[t]`.
    pub fn inversions(&self) -> u64 {
        count_inversions(&self.map)
    }

    /// `(self o other)(t) = self(other(t))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch {
                left: self.len(),
                right: other.len(),
            });
        }
        Ok(Permutation {
            map: other.map.iter().map(|&t| self.map[t]).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut map = vec![0; self.len()];
        for (t, &x) in self.map.iter().enumerate() {
            map[x] = t;
        }
        Permutation { map }
    }

    /// Non-trivial cycles in 1-based positions, each starting at its least element.
    pub fn cycles_one_based(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for start in 0..self.len() {
            if seen[start] || self.map[start] == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut t = start;
            while !seen[t] {
                seen[t] = true;
                cycle.push(t + 1);
                t = self.map[t];
            }
            out.push(cycle);
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, x) in self.map.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}", x + 1)?;
        }
        f.write_str("]")
    }
}

/// Strict inversions `#{(s, t): s < t, seq[s] > seq[t]}` by merge sort.
///
/// Equal entries are not counted, so the sequence may contain repeats.
pub fn count_inversions<T: Ord + Copy>(seq: &[T]) -> u64 {
    let mut buf = seq.to_vec();
    let mut scratch = buf.clone();
    sort_count(&mut buf, &mut scratch)
}

fn sort_count<T: Ord + Copy>(v: &mut [T], scratch: &mut [T]) -> u64 {
    let n = v.len();
    if n < 2 {
        return 0;
    }
    let mid = n / 2;
    let mut count = {
        let (left, right) = v.split_at_mut(mid);
        let (sl, sr) = scratch.split_at_mut(mid);
        sort_count(left, sl) + sort_count(right, sr)
    };
    let (mut i, mut j, mut k) = (0, mid, 0);
    while i < mid && j < n {
        if v[i] <= v[j] {
            scratch[k] = v[i];
            i += 1;
        } else {
            scratch[k] = v[j];
            count += (mid - i) as u64;
            j += 1;
        }
        k += 1;
    }
    scratch[k..k + mid - i].copy_from_slice(&v[i..mid]);
    k += mid - i;
    scratch[k..k + n - j].copy_from_slice(&v[j..n]);
    v.copy_from_slice(&scratch[..n]);
    count
}
