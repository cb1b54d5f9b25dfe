//! Exact computation of `a_k(n) = |H_k^∇n|`, the cardinality of the `n`-th
//! symmetric power of `{1, ..., k}`.
//!
//! Three independent routes are provided and cross-check each other:
//!
//! * [`symmetric`]: materializes the sets (any `k` up to [`symmetric::MAX_K`]).
//! * [`chain`]: splits the sparse powers `H_k^∇(2^t - 1)` into ratio-2 and
//!   ratio-4 chains and checks the integer transfer matrices that advance
//!   their structural vectors.
//! * [`recurrence`]: fast exact evaluation from the binary expansion of `n`
//!   (`k <= 8`), including two independent evaluators for `k = 8`.
//!
//! [`oeis`] reads and cross-checks OEIS b-files.

pub mod chain;
pub mod error;
pub mod oeis;
pub mod recurrence;
pub mod symmetric;

pub use error::{Error, Mismatch, Result};
pub use recurrence::{a, Method};
