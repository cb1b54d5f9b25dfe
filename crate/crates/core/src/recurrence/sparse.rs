use num_bigint::{BigInt, BigUint};

use crate::error::{Error, Result};

/// The linear recurrence satisfied by `theta_t = a_k(2^t - 1)`:
/// `theta_{t+d} = Σ coeffs[j] * theta_{t+d-1-j}` with the first `d` terms given by `seeds`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SparseRecurrence {
    pub k: u32,
    pub seeds: &'static [i64],
    pub coeffs: &'static [i64],
}

pub fn sparse_recurrence(k: u32) -> Result<SparseRecurrence> {
    let (seeds, coeffs): (&'static [i64], &'static [i64]) = match k {
        2 => (&[1], &[2]),
        3 => (&[1], &[3]),
        4 => (&[1, 4], &[2, 4]),
        5 => (&[1, 5], &[3, 6]),
        // theta_{t+1} = 5 theta_t only from t = 1 on
        6 => (&[1, 6], &[5, 0]),
        7 => (&[1, 7], &[6, 1]),
        8 => (&[1, 8, 48], &[7, -2, -24]),
        _ => {
            return Err(Error::domain(format!(
                "sparse recurrences exist for k in 2..=8, got k={k}"
            )))
        }
    };
    Ok(SparseRecurrence { k, seeds, coeffs })
}

/// `theta_0, ..., theta_{count-1}` for `k` in `2..=8`.
pub fn sparse_thetas(k: u32, count: usize) -> Result<Vec<BigUint>> {
    let rec = sparse_recurrence(k)?;
    let mut out: Vec<BigInt> = Vec::with_capacity(count);
    for t in 0..count {
        let next = match rec.seeds.get(t) {
            Some(&seed) => BigInt::from(seed),
            None => rec
                .coeffs
                .iter()
                .enumerate()
                .map(|(j, &c)| &out[t - 1 - j] * c)
                .sum(),
        };
        out.push(next);
    }
    out.into_iter()
        .map(|v| {
            v.to_biguint()
                .ok_or_else(|| Error::domain(format!("negative sparse term for k={k}")))
        })
        .collect()
}

/// `theta_t = a_k(2^t - 1)`, exact.
pub fn sparse_theta(k: u32, t: u32) -> Result<BigUint> {
    Ok(sparse_thetas(k, t as usize + 1)?.pop().expect("count >= 1"))
}
