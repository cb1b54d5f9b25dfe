//! Fast exact evaluation of `a_k(n)` from the binary expansion of `n`.
//!
//! * `k <= 7`: `a_k(n)` is the product of `theta_L = a_k(2^L - 1)` over the
//!   maximal runs of `L` ones in `n`, and `theta` obeys a short linear recurrence.
//! * `k = 8`: the block factorization fails; `a_8(n)` is evaluated either as a
//!   matrix word over the bits of `n` or by rewriting `n` with reduction rules.

mod binary;
mod dispatch;
mod identities;
mod matrix_word;
mod reduce;
mod small_k;
mod sparse;

pub use binary::{bit_len, BinaryExpansion};
pub use dispatch::{a, a_with, sequence, sequence_with, Method};
pub use identities::{annihilation_suite, wm_identity_suite, IdentityCheck, IdentityReport};
pub use matrix_word::{matrix_word_a8, structure_a8};
pub use reduce::{
    choose_rule, reduce_a8, reduce_a8_with, reduce_value, ReduceOptions, ReductionTrace, Rule,
};
pub use small_k::{fast_a_small_k, lemma1_check, lemma1_check_with};
pub use sparse::{sparse_recurrence, sparse_theta, sparse_thetas, SparseRecurrence};
