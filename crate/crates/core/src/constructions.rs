//! The residue sequences and permutations whose signs are studied.
//!
//! Quadratic-residue sequences for an odd prime `p` with `m = (p-1)/2`:
//!
//! | label | entries |
//! |-------|---------|
//! | `A0`  | the quadratic residues in ascending order |
//! | `A1`  | `{i^2}_p` for `i = 1..m` |
//! | `A2`  | `{(2i)^2}_p` for `i = 1..m` |
//! | `A3`  | `{(2i-1)^2}_p` for `i = 1..m` |
//! | `A4`  | `{i (i/p)}_p` for `i = 1..m` |
//!
//! `A0..A3` always hold the same set. `A4` holds it only when `p = 3 (mod 4)`.

use std::collections::HashSet;
use std::fmt;

use crate::arith::{
    gcd, is_primitive_root, legendre_table, mod_inv, mod_reduce, mul_mod, Modulus, OddPrime,
    PrimePower,
};
use crate::error::{Error, Result};
use crate::permutation::{count_inversions, Permutation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SequenceLabel {
    A0,
    A1,
    A2,
    A3,
    A4,
    ReducedResidues,
}

impl SequenceLabel {
    pub fn quadratic(i: u8) -> Result<Self> {
        Ok(match i {
            0 => SequenceLabel::A0,
            1 => SequenceLabel::A1,
            2 => SequenceLabel::A2,
            3 => SequenceLabel::A3,
            4 => SequenceLabel::A4,
            _ => return Err(Error::Unsupported(format!("no sequence A{i}"))),
        })
    }
}

impl fmt::Display for SequenceLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SequenceLabel::A0 => "A0",
            SequenceLabel::A1 => "A1",
            SequenceLabel::A2 => "A2",
            SequenceLabel::A3 => "A3",
            SequenceLabel::A4 => "A4",
            SequenceLabel::ReducedResidues => "reduced residues",
        };
        f.write_str(s)
    }
}

/// An ordered list of distinct least nonnegative residues.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueSequence {
    entries: Vec<u64>,
    modulus: Modulus,
    label: SequenceLabel,
}

impl ResidueSequence {
    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn label(&self) -> SequenceLabel {
        self.label
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn same_set_as(&self, other: &ResidueSequence) -> bool {
        let mine: HashSet<_> = self.entries.iter().collect();
        self.len() == other.len() && other.entries.iter().all(|x| mine.contains(x))
    }
}

/// `R(k, p)`: the `r` in `[0, (p-1)/2]` with `k = r` or `k = -r (mod p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FoldedResidue(u64);

impl FoldedResidue {
    pub fn get(self) -> u64 {
        self.0
    }
}

/// `t -> {a t}_n` on `Z/nZ`.
pub fn mul_perm(n: Modulus, a: i64) -> Result<Permutation> {
    let a_red = mod_reduce(a, n);
    if gcd(a_red, n.get()) != 1 {
        return Err(Error::NotInvertible { a, n: n.get() });
    }
    let map = (0..n.get())
        .map(|t| mul_mod(a_red, t, n) as usize)
        .collect();
    Permutation::new(map)
}

/// `i -> {i^k}_p` on `1..p-1`, indexed by position in the ascending list.
pub fn power_perm(p: OddPrime, k: u64) -> Result<Permutation> {
    let not_bijective = Error::NotBijective { p: p.get(), k };
    if gcd(k, p.get() - 1) != 1 {
        return Err(not_bijective);
    }
    let n = p.modulus();
    let map = (1..p.get())
        .map(|i| (crate::arith::mod_pow(i as i64, k, n) - 1) as usize)
        .collect();
    Permutation::new(map).map_err(|_| not_bijective)
}

/// `k -> {k^3}_p` on all of `Z/pZ`, for `p = 2 (mod 3)`.
pub fn cube_perm_with_zero(p: OddPrime) -> Result<Permutation> {
    if p.modulo(3) != 2 {
        return Err(Error::Unsupported(format!(
            "cube map needs p = 2 (mod 3), got p = {p}"
        )));
    }
    let n = p.modulus();
    let map = (0..p.get())
        .map(|k| mul_mod(mul_mod(k, k, n), k, n) as usize)
        .collect();
    Permutation::new(map).map_err(|_| Error::NotBijective { p: p.get(), k: 3 })
}

/// The quadratic-residue sequence `A_i` for `i` in `0..=4`.
pub fn sequence_a(i: u8, p: OddPrime) -> Result<ResidueSequence> {
    let label = SequenceLabel::quadratic(i)?;
    let n = p.modulus();
    let m = p.half();
    let sq = |x: u64| mul_mod(x % p.get(), x % p.get(), n);
    let entries: Vec<u64> = match label {
        SequenceLabel::A0 => {
            let legendre = legendre_table(p);
            (1..p.get())
                .filter(|&x| legendre[x as usize] == 1)
                .collect()
        }
        SequenceLabel::A1 => (1..=m).map(sq).collect(),
        SequenceLabel::A2 => (1..=m).map(|x| sq(2 * x)).collect(),
        SequenceLabel::A3 => (1..=m).map(|x| sq(2 * x - 1)).collect(),
        SequenceLabel::A4 => {
            let legendre = legendre_table(p);
            (1..=m)
                .map(|x| {
                    if legendre[x as usize] == 1 {
                        x
                    } else {
                        p.get() - x
                    }
                })
                .collect()
        }
        SequenceLabel::ReducedResidues => unreachable!(),
    };
    Ok(ResidueSequence {
        entries,
        modulus: n,
        label,
    })
}

/// `sigma_{i,j}`: the permutation `s` with `A_i[t] = A_j[s(t)]`.
///
/// Its sign is the sign of `prod_{s<t} (A_i[t] - A_i[s]) / prod_{s<t} (A_j[t] - A_j[s])`.
pub fn sigma_ij(i: u8, j: u8, p: OddPrime) -> Result<Permutation> {
    let a_i = sequence_a(i, p)?;
    let a_j = sequence_a(j, p)?;
    Permutation::from_sequences(a_j.entries(), a_i.entries())
}

pub fn fold_r(k: i64, p: OddPrime) -> FoldedResidue {
    let r = mod_reduce(k, p.modulus());
    FoldedResidue(r.min(p.get() - r))
}

/// `N_p`: inversions of `R(1^2, p), .., R(m^2, p)`.
pub fn count_np(p: OddPrime) -> u64 {
    count_inversions(&folded_squares(p))
}

/// `R(i^2, p)` for `i = 1..(p-1)/2`.
pub fn folded_squares(p: OddPrime) -> Vec<u64> {
    let n = p.modulus();
    (1..=p.half())
        .map(|i| {
            let s = mul_mod(i, i, n);
            s.min(p.get() - s)
        })
        .collect()
}

/// `k -> k*` on `{1..(p-1)/2}` where `k k* = +-1 (mod p)`.
pub fn tau_p_perm(p: OddPrime) -> Permutation {
    let n = p.modulus();
    let m = p.half();
    let map = (1..=m)
        .map(|k| {
            let inv = mod_inv(k as i64, n).expect("nonzero residues are units mod p");
            let star = if inv <= m { inv } else { p.get() - inv };
            (star - 1) as usize
        })
        .collect();
    Permutation::new(map).expect("k -> k* is a bijection")
}

/// `b_1 < .. < b_n`, the residues in `[1, p^r)` coprime to `p`.
pub fn reduced_residues(pp: &PrimePower) -> ResidueSequence {
    let p = pp.p().get();
    ResidueSequence {
        entries: (1..pp.modulus().get()).filter(|b| b % p != 0).collect(),
        modulus: pp.modulus(),
        label: SequenceLabel::ReducedResidues,
    }
}

/// Position of the unit `v` in the ascending reduced residue list mod `p^r`.
#[inline]
fn reduced_position(v: u64, p: u64) -> usize {
    (v - v / p - 1) as usize
}

/// `sigma_g: b_i -> {g^i}_{p^r}`, as a permutation of positions `0..n`.
pub fn sigma_g_perm(pp: &PrimePower, g: i64) -> Result<Permutation> {
    let modulus = pp.modulus();
    let not_root = || Error::NotPrimitiveRoot {
        g,
        modulus: modulus.get(),
    };
    if !is_primitive_root(g, pp).map_err(|_| not_root())? {
        return Err(not_root());
    }
    let g = mod_reduce(g, modulus);
    let p = pp.p().get();
    let mut x = 1u64;
    let map = (0..pp.totient())
        .map(|_| {
            x = mul_mod(x, g, modulus);
            reduced_position(x, p)
        })
        .collect();
    Permutation::new(map)
}
