use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::Serialize;

use super::matrix_word::matrix_word_a8;
use super::reduce::{reduce_value, ReduceOptions};
use super::small_k::fast_a_small_k;
use crate::error::{Error, Result};
use crate::symmetric::{brute_card_with, Limits, Powers};

/// How [`a`] evaluates `a_k(n)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// `fast` for `k <= 7`, `matrix` for `k = 8`, `brute` otherwise.
    #[default]
    Auto,
    /// Materialize `H_k^∇n`.
    Brute,
    /// Product over the 1-runs of `n` (`k <= 7`).
    Fast,
    /// Matrix word over the bits of `n` (`k = 8`).
    Matrix,
    /// Rewriting with the reduction rules (`k = 8`).
    Reduce,
}

impl Method {
    pub const ALL: [Method; 5] = [
        Method::Auto,
        Method::Brute,
        Method::Fast,
        Method::Matrix,
        Method::Reduce,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Auto => "auto",
            Method::Brute => "brute",
            Method::Fast => "fast",
            Method::Matrix => "matrix",
            Method::Reduce => "reduce",
        }
    }

    /// The concrete method `auto` picks for `k`.
    pub fn resolve(self, k: u32) -> Method {
        match (self, k) {
            (Method::Auto, 0..=7) => Method::Fast,
            (Method::Auto, 8) => Method::Matrix,
            (Method::Auto, _) => Method::Brute,
            (m, _) => m,
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| {
                Error::domain(format!(
                    "unknown method {s:?}; expected auto, brute, fast, matrix or reduce"
                ))
            })
    }
}

fn check_k(k: u32) -> Result<()> {
    if k == 0 {
        return Err(Error::domain("k must be at least 1"));
    }
    Ok(())
}

fn only_k8(k: u32, method: Method) -> Result<()> {
    if k != 8 {
        return Err(Error::domain(format!(
            "the {method} method evaluates k=8 only, got k={k}"
        )));
    }
    Ok(())
}

/// `a_k(n) = |H_k^∇n|`.
pub fn a(k: u32, n: u64, method: Method) -> Result<BigUint> {
    a_with(k, n, method, &Limits::default())
}

pub fn a_with(k: u32, n: u64, method: Method, limits: &Limits) -> Result<BigUint> {
    check_k(k)?;
    match method.resolve(k) {
        Method::Brute => brute_card_with(k, n, limits),
        Method::Fast => fast_a_small_k(k, n),
        Method::Matrix => only_k8(k, Method::Matrix).map(|_| matrix_word_a8(n)),
        Method::Reduce => {
            only_k8(k, Method::Reduce).map(|_| reduce_value(n, ReduceOptions::default()))
        }
        Method::Auto => unreachable!("resolved above"),
    }
}

/// `a_k(0), ..., a_k(limit)`.
pub fn sequence(k: u32, limit: u64, method: Method) -> Result<Vec<BigUint>> {
    sequence_with(k, limit, method, &Limits::default())
}

pub fn sequence_with(k: u32, limit: u64, method: Method, limits: &Limits) -> Result<Vec<BigUint>> {
    check_k(k)?;
    if method.resolve(k) == Method::Brute {
        // one product per term instead of a fresh power each time
        return Powers::new(k, *limits)?
            .take(
                usize::try_from(limit)
                    .unwrap_or(usize::MAX)
                    .saturating_add(1),
            )
            .map(|s| s.map(|s| BigUint::from(s.len())))
            .collect();
    }
    (0..=limit).map(|n| a_with(k, n, method, limits)).collect()
}
