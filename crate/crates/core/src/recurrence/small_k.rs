use num_bigint::BigUint;
use num_traits::One;

use super::binary::BinaryExpansion;
use super::sparse::sparse_thetas;
use crate::error::{Error, Result};
use crate::symmetric::{brute_card_with, Limits};

/// `a_k(n)` for `k <= 7`: the product of `theta_L` over the maximal runs of
/// `L` consecutive 1 bits in the binary expansion of `n`.
///
/// Runs separated by at least one 0 bit contribute independent factors,
/// which fails from `k = 8` on.
pub fn fast_a_small_k(k: u32, n: u64) -> Result<BigUint> {
    match k {
        0 => return Err(Error::domain("k must be at least 1")),
        1 => return Ok(BigUint::one()),
        2..=7 => {}
        8 => {
            return Err(Error::domain(
                "block factorization does not hold for k=8; use the matrix or reduce method",
            ))
        }
        _ => {
            return Err(Error::domain(format!(
                "no fast evaluation for k={k}; only the brute-force method supports k >= 9"
            )))
        }
    }
    let runs = BinaryExpansion::new(n).one_runs();
    let longest = runs.iter().copied().max().unwrap_or(0) as usize;
    let thetas = sparse_thetas(k, longest + 1)?;
    Ok(runs.iter().map(|&len| &thetas[len as usize]).product())
}

/// Whether `a_k(alpha + beta * 2^(s+1)) = a_k(alpha) * a_k(beta)` holds, by
/// materializing all three sets. Requires `alpha < 2^s`.
pub fn lemma1_check(k: u32, alpha: u64, beta: u64, s: u32) -> Result<bool> {
    lemma1_check_with(k, alpha, beta, s, &Limits::default())
}

pub fn lemma1_check_with(k: u32, alpha: u64, beta: u64, s: u32, limits: &Limits) -> Result<bool> {
    if s >= 63 || alpha >= 1u64 << s {
        return Err(Error::domain(format!(
            "need alpha < 2^s, got alpha={alpha}, s={s}"
        )));
    }
    let n = beta
        .checked_mul(1u64 << (s + 1))
        .and_then(|hi| hi.checked_add(alpha))
        .ok_or_else(|| Error::domain("alpha + beta * 2^(s+1) overflows u64"))?;
    let whole = brute_card_with(k, n, limits)?;
    let parts = brute_card_with(k, alpha, limits)? * brute_card_with(k, beta, limits)?;
    Ok(whole == parts)
}
