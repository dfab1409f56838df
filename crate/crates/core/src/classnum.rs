//! Class numbers `h(-p)` for primes `p = 3 (mod 4)` and the product
//! congruences that feed the sign formulas.

use crate::arith::{half_factorial_mod_p, legendre_table, mod_pow, mul_mod, OddPrime};
use crate::error::{Error, Result};
use crate::permutation::Sign;

/// `h(-p)` together with the two character sums it was derived from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassNumberResult {
    pub p: OddPrime,
    pub h: u64,
    /// `sum_{1 <= i <= (p-1)/2} (i/p)`
    pub character_sum: i64,
    /// `sum_{1 <= i <= p-1} i (i/p)`
    pub weighted_sum: i64,
}

fn require_three_mod_four(p: OddPrime, what: &str) -> Result<()> {
    if p.modulo(4) == 3 {
        Ok(())
    } else {
        Err(Error::Unsupported(format!(
            "{what} needs p = 3 (mod 4), got p = {p}"
        )))
    }
}

/// `h(-p)` from both Dirichlet sums:
/// `h = S / (2 - (2/p))` with `S = sum_{i <= (p-1)/2} (i/p)`, and
/// `-p h = sum_{i < p} i (i/p)`.
///
/// The two values are required to agree exactly. `p = 3` returns `h = 1`
/// without the cross-check, since the extra units of `Q(sqrt(-3))` break both
/// sums there.
pub fn class_number_neg_p(p: OddPrime) -> Result<ClassNumberResult> {
    require_three_mod_four(p, "h(-p)")?;
    let legendre = legendre_table(p);
    let half = p.half() as usize;
    let character_sum: i64 = legendre[1..=half].iter().map(|&l| l as i64).sum();
    let weighted_sum: i64 = legendre
        .iter()
        .enumerate()
        .map(|(i, &l)| i as i64 * l as i64)
        .sum();
    if p.get() == 3 {
        return Ok(ClassNumberResult {
            p,
            h: 1,
            character_sum,
            weighted_sum,
        });
    }

    let pi = p.get() as i64;
    let inconsistent = |detail: String| Error::Inconsistent { p: p.get(), detail };
    // (2/p) = +1 iff p = 7 (mod 8)
    let denominator = if p.modulo(8) == 7 { 1 } else { 3 };
    if character_sum % denominator != 0 {
        return Err(inconsistent(format!(
            "character sum {character_sum} not divisible by {denominator}"
        )));
    }
    if weighted_sum % pi != 0 {
        return Err(inconsistent(format!(
            "weighted sum {weighted_sum} not divisible by p"
        )));
    }
    let from_characters = character_sum / denominator;
    let from_weights = -weighted_sum / pi;
    if from_characters != from_weights || from_characters < 1 {
        return Err(inconsistent(format!("{from_characters} vs {from_weights}")));
    }
    Ok(ClassNumberResult {
        p,
        h: from_characters as u64,
        character_sum,
        weighted_sum,
    })
}

/// Both sides of `((p-1)/2)! = (-1)^((h(-p)+1)/2) (mod p)`, as
/// `(half-factorial sign, class-number sign)`. Requires `p = 3 (mod 4)`, `p > 3`.
pub fn mordell_check(p: OddPrime) -> Result<(Sign, Sign)> {
    require_three_mod_four(p, "Mordell's congruence")?;
    if p.get() == 3 {
        return Err(Error::Unsupported(
            "Mordell's congruence needs p > 3".into(),
        ));
    }
    let factorial = half_factorial_mod_p(p);
    let observed = Sign::from_residue(factorial, p.get()).ok_or_else(|| Error::Inconsistent {
        p: p.get(),
        detail: format!("((p-1)/2)! = {factorial} is not +-1"),
    })?;
    let h = class_number_neg_p(p)?.h;
    Ok((observed, Sign::from_exponent(h.div_ceil(2))))
}

/// `prod_{1 <= i < j <= (p-1)/2} (i^2 + j^2) mod p`, by the double loop.
pub fn sum_of_squares_product_mod_p(p: OddPrime) -> Result<u64> {
    require_three_mod_four(p, "the sum-of-squares product")?;
    let n = p.modulus();
    let m = p.half();
    let mut acc = 1u64;
    for i in 1..=m {
        let ii = mul_mod(i, i, n);
        for j in i + 1..=m {
            let mut term = ii + mul_mod(j, j, n);
            if term >= p.get() {
                term -= p.get();
            }
            acc = mul_mod(acc, term, n);
        }
    }
    Ok(acc)
}

/// [`sum_of_squares_product_mod_p`] read as a sign.
pub fn sum_of_squares_product_sign(p: OddPrime) -> Result<Sign> {
    let x = sum_of_squares_product_mod_p(p)?;
    Sign::from_residue(x, p.get()).ok_or_else(|| Error::Inconsistent {
        p: p.get(),
        detail: format!("sum-of-squares product is {x}, not +-1"),
    })
}

/// `prod_{1 <= i < j <= p-1} (j - i) mod p`.
///
/// The difference `d` occurs `p-1-d` times, so this is `prod_d d^(p-1-d)`.
pub fn vandermonde_full_product_sign(p: OddPrime) -> Result<u64> {
    require_three_mod_four(p, "the full Vandermonde product")?;
    let n = p.modulus();
    Ok((1..=p.get() - 2).fold(1 % p.get(), |acc, d| {
        mul_mod(acc, mod_pow(d as i64, p.get() - 1 - d, n), n)
    }))
}
