//! Modular arithmetic on residues below `2^40`.
//!
//! Products of two residues are formed in a 128-bit intermediate (or a 64-bit
//! one when the modulus fits in 32 bits), so nothing here needs big integers.

use crate::error::{Error, Result};

/// Exclusive upper bound for every modulus handled by the crate.
pub const MODULUS_LIMIT: u64 = 1 << 40;

/// A modulus `n` with `2 <= n < 2^40`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Modulus(u64);

impl Modulus {
    pub fn new(n: u64) -> Result<Self> {
        if (2..MODULUS_LIMIT).contains(&n) {
            Ok(Self(n))
        } else {
            Err(Error::InvalidModulus(n))
        }
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.0
    }
}

impl std::fmt::Display for Modulus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

/// An odd prime below [`MODULUS_LIMIT`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OddPrime(u64);

impl OddPrime {
    pub fn new(p: u64) -> Result<Self> {
        if p % 2 == 1 && p < MODULUS_LIMIT && is_prime(p) {
            Ok(Self(p))
        } else {
            Err(Error::NotOddPrime(p))
        }
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.0
    }

    /// `(p - 1) / 2`, the number of quadratic residues.
    #[inline]
    pub fn half(self) -> u64 {
        (self.0 - 1) / 2
    }

    #[inline]
    pub fn modulus(self) -> Modulus {
        Modulus(self.0)
    }

    /// Residue of `p` modulo `m`.
    #[inline]
    pub fn modulo(self, m: u64) -> u64 {
        self.0 % m
    }
}

impl std::fmt::Display for OddPrime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

/// `p^r` for an odd prime `p`, together with its totient `p^(r-1) (p - 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimePower {
    p: OddPrime,
    r: u32,
    modulus: Modulus,
    totient: u64,
}

impl PrimePower {
    pub fn new(p: OddPrime, r: u32) -> Result<Self> {
        let out_of_range = || Error::PrimePowerOutOfRange { p: p.get(), r };
        if r == 0 {
            return Err(out_of_range());
        }
        let value = p.get().checked_pow(r).ok_or_else(out_of_range)?;
        let modulus = Modulus::new(value).map_err(|_| out_of_range())?;
        let totient = value / p.get() * (p.get() - 1);
        Ok(Self {
            p,
            r,
            modulus,
            totient,
        })
    }

    pub fn p(&self) -> OddPrime {
        self.p
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    /// `phi(p^r)`.
    pub fn totient(&self) -> u64 {
        self.totient
    }
}

/// Least nonnegative residue of `a` modulo `n`.
#[inline]
pub fn mod_reduce(a: i64, n: Modulus) -> u64 {
    (a as i128).rem_euclid(n.0 as i128) as u64
}

/// `a * b mod n` for residues `a, b < n`.
#[inline]
pub fn mul_mod(a: u64, b: u64, n: Modulus) -> u64 {
    debug_assert!(a < n.0 && b < n.0);
    if n.0 <= u32::MAX as u64 {
        a * b % n.0
    } else {
        ((a as u128 * b as u128) % n.0 as u128) as u64
    }
}

#[inline]
fn pow_residue(mut base: u64, mut e: u64, n: Modulus) -> u64 {
    let mut acc = 1 % n.0;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, n);
        }
        base = mul_mod(base, base, n);
        e >>= 1;
    }
    acc
}

/// `{a^e}_n` by square-and-multiply.
pub fn mod_pow(a: i64, e: u64, n: Modulus) -> u64 {
    pow_residue(mod_reduce(a, n), e, n)
}

/// Inverse of `a` modulo `n`, or [`Error::NotInvertible`] when `gcd(a, n) > 1`.
pub fn mod_inv(a: i64, n: Modulus) -> Result<u64> {
    let (mut old_r, mut r) = (mod_reduce(a, n) as i128, n.0 as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return Err(Error::NotInvertible { a, n: n.0 });
    }
    Ok(old_s.rem_euclid(n.0 as i128) as u64)
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Jacobi symbol `(a/n)` for odd `n >= 1`.
///
/// Returns 0 exactly when `gcd(a, n) > 1`; `(a/1) = 1` for every `a`.
pub fn jacobi(a: i64, n: u64) -> Result<i8> {
    if n.is_multiple_of(2) {
        return Err(Error::EvenJacobiModulus(n));
    }
    let mut a = (a as i128).rem_euclid(n as i128) as u64;
    let mut n = n;
    let mut result = 1i8;
    while a != 0 {
        let twos = a.trailing_zeros();
        a >>= twos;
        // (2/n) = -1 iff n = 3, 5 (mod 8)
        if twos % 2 == 1 && matches!(n % 8, 3 | 5) {
            result = -result;
        }
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        (a, n) = (n % a, a);
    }
    Ok(if n == 1 { result } else { 0 })
}

/// Legendre symbols `(i/p)` for every `i` in `0..p`.
pub fn legendre_table(p: OddPrime) -> Vec<i8> {
    let n = p.modulus();
    let mut table = vec![-1i8; p.get() as usize];
    table[0] = 0;
    for i in 1..=p.half() {
        table[mul_mod(i, i, n) as usize] = 1;
    }
    table
}

fn mul_mod_u64(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

fn pow_mod_u64(mut base: u64, mut e: u64, n: u64) -> u64 {
    let mut acc = 1 % n;
    base %= n;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod_u64(acc, base, n);
        }
        base = mul_mod_u64(base, base, n);
        e >>= 1;
    }
    acc
}

// The first twelve primes are a deterministic witness set for all n < 3.3 * 10^24.
const MR_WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Deterministic Miller-Rabin over the full 64-bit range.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &q in &MR_WITNESSES {
        if n.is_multiple_of(q) {
            return n == q;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &MR_WITNESSES {
        let mut x = pow_mod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod_u64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Prime factorization by trial division, as `(prime, exponent)` pairs in
/// ascending order. Complete for every `n < 2^40`.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut factors = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            factors.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        factors.push((n, 1));
    }
    factors
}

/// Euler's totient. `euler_phi(0)` is defined as 0.
pub fn euler_phi(n: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    factorize(n)
        .into_iter()
        .fold(n, |acc, (q, _)| acc / q * (q - 1))
}

/// Checks `g^(phi/q) != 1` for each prime `q | phi(p^r)`.
#[derive(Debug, Clone)]
struct OrderTest {
    modulus: Modulus,
    cofactors: Vec<u64>,
}

impl OrderTest {
    fn new(pp: &PrimePower) -> Self {
        let phi = pp.totient();
        let cofactors = factorize(phi).into_iter().map(|(q, _)| phi / q).collect();
        Self {
            modulus: pp.modulus(),
            cofactors,
        }
    }

    fn is_generator(&self, g: u64) -> bool {
        self.cofactors
            .iter()
            .all(|&e| pow_residue(g, e, self.modulus) != 1)
    }
}

pub fn is_primitive_root(g: i64, pp: &PrimePower) -> Result<bool> {
    if g.rem_euclid(pp.p().get() as i64) == 0 {
        return Err(Error::DivisibleByPrime { g, p: pp.p().get() });
    }
    Ok(OrderTest::new(pp).is_generator(mod_reduce(g, pp.modulus())))
}

/// All primitive roots of `p^r` in `[1, p^r)`, ascending.
pub fn enumerate_primitive_roots(pp: &PrimePower) -> Vec<u64> {
    smallest_primitive_roots(pp, usize::MAX)
}

/// The `count` smallest primitive roots of `p^r` (fewer if there are fewer).
pub fn smallest_primitive_roots(pp: &PrimePower, count: usize) -> Vec<u64> {
    let test = OrderTest::new(pp);
    let p = pp.p().get();
    (1..pp.modulus().get())
        .filter(|g| g % p != 0 && test.is_generator(*g))
        .take(count)
        .collect()
}

/// `{((p - 1)/2)!}_p` by direct product.
pub fn half_factorial_mod_p(p: OddPrime) -> u64 {
    let n = p.modulus();
    (1..=p.half()).fold(1, |acc, i| mul_mod(acc, i, n))
}
