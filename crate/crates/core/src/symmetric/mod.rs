//! Finite sets of `k`-smooth numbers under symmetric difference and the
//! symmetric product, and the symmetric powers `H_k^∇n`.
//!
//! Sets are the ground-truth oracle for every faster method in the crate.
//! Numbers are stored as exponent vectors over the primes `<= k`, so the
//! product of two elements is vector addition and `∇` is a parity count over
//! the product grid.

mod element;
mod set;

pub use element::{primes_up_to, Basis, ElementVec, MAX_K, MAX_PRIMES};
pub use set::{
    brute_card, brute_card_with, make_hk, sym_diff, sym_power, sym_power_with, sym_prod,
    sym_prod_with, sym_square, Limits, Powers, SymSet, DEFAULT_ELEMENT_CAP,
};
