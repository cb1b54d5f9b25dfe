use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};

/// Largest generating bound `k` the set engine accepts.
///
/// Elements are packed as 16-bit exponent slots into a `u128`, so at most
/// eight primes fit; 23 is the ninth prime.
pub const MAX_K: u32 = 22;

/// Number of exponent slots an [`ElementVec`] can carry.
pub const MAX_PRIMES: usize = 8;

pub(crate) const SLOT_BITS: u32 = 16;
pub(crate) const SLOT_MASK: u128 = 0xFFFF;

/// All primes `p <= k` in increasing order.
pub fn primes_up_to(k: u32) -> Vec<u32> {
    (2..=k)
        .filter(|&p| (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0))
        .collect()
}

/// The prime basis `(2, 3, 5, ...)` of the `k`-smooth numbers.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Basis {
    primes: Vec<u32>,
}

impl Basis {
    pub fn for_bound(k: u32) -> Result<Self> {
        if k == 0 || k > MAX_K {
            return Err(Error::domain(format!(
                "generating bound k={k} outside 1..={MAX_K}"
            )));
        }
        Ok(Basis {
            primes: primes_up_to(k),
        })
    }

    pub fn primes(&self) -> &[u32] {
        &self.primes
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }
}

/// A `k`-smooth natural number stored as its exponent vector over a [`Basis`].
///
/// `2^e0 * 3^e1 * 5^e2 * ...`; unique factorization makes the encoding
/// injective, so equality of vectors is equality of numbers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElementVec {
    exps: [u16; MAX_PRIMES],
    len: u8,
}

impl ElementVec {
    pub fn new(exponents: &[u16]) -> Result<Self> {
        if exponents.len() > MAX_PRIMES {
            return Err(Error::domain(format!(
                "{} exponent slots exceed the maximum of {MAX_PRIMES}",
                exponents.len()
            )));
        }
        let mut exps = [0u16; MAX_PRIMES];
        exps[..exponents.len()].copy_from_slice(exponents);
        Ok(ElementVec {
            exps,
            len: exponents.len() as u8,
        })
    }

    /// The number 1 over a basis of `len` primes.
    pub fn one(len: usize) -> Self {
        debug_assert!(len <= MAX_PRIMES);
        ElementVec {
            exps: [0; MAX_PRIMES],
            len: len as u8,
        }
    }

    pub fn exponents(&self) -> &[u16] {
        &self.exps[..self.len as usize]
    }

    /// Factor `value` over `basis`; `None` if it is zero or not smooth over it.
    pub fn from_natural(value: u64, basis: &Basis) -> Option<Self> {
        if value == 0 {
            return None;
        }
        let mut rest = value;
        let mut exps = [0u16; MAX_PRIMES];
        for (slot, &p) in basis.primes().iter().enumerate() {
            while rest.is_multiple_of(p as u64) {
                rest /= p as u64;
                exps[slot] += 1;
            }
        }
        (rest == 1).then_some(ElementVec {
            exps,
            len: basis.len() as u8,
        })
    }

    pub fn to_natural(&self, basis: &Basis) -> BigUint {
        debug_assert_eq!(basis.len(), self.len as usize);
        let mut acc = BigUint::one();
        for (&p, &e) in basis.primes().iter().zip(self.exponents()) {
            acc *= BigUint::from(p).pow(e as u32);
        }
        acc
    }

    /// Exponent of 2, i.e. the 2-adic valuation of the encoded number.
    pub fn two_adic(&self) -> u16 {
        if self.len == 0 {
            0
        } else {
            self.exps[0]
        }
    }

    pub(crate) fn pack(&self) -> u128 {
        self.exponents()
            .iter()
            .enumerate()
            .fold(0u128, |key, (slot, &e)| {
                key | (e as u128) << (SLOT_BITS * slot as u32)
            })
    }

    pub(crate) fn unpack(key: u128, len: usize) -> Self {
        let mut exps = [0u16; MAX_PRIMES];
        for (slot, e) in exps.iter_mut().enumerate().take(len) {
            *e = ((key >> (SLOT_BITS * slot as u32)) & SLOT_MASK) as u16;
        }
        ElementVec {
            exps,
            len: len as u8,
        }
    }
}
