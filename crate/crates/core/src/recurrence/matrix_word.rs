use num_bigint::BigUint;
use num_traits::{CheckedAdd, CheckedMul, Zero};

const TRANSFER: [[u8; 5]; 5] = [
    [2, 4, 6, 0, 6],
    [0, 3, 1, 1, 2],
    [2, 0, 0, 0, 0],
    [0, 2, 0, 0, 0],
    [0, 0, 2, 0, 2],
];

const SQUARING: [[u8; 5]; 5] = [
    [0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0],
    [1, 0, 0, 0, 0],
    [0, 1, 0, 0, 0],
    [0, 0, 1, 0, 1],
];

fn apply<T>(m: &[[u8; 5]; 5], v: &[T; 5]) -> Option<[T; 5]>
where
    T: Clone + Zero + CheckedAdd + CheckedMul + From<u8>,
{
    let mut out: [T; 5] = std::array::from_fn(|_| T::zero());
    for (row, slot) in m.iter().zip(out.iter_mut()) {
        for (&c, x) in row.iter().zip(v) {
            if c != 0 {
                *slot = slot.checked_add(&T::from(c).checked_mul(x)?)?;
            }
        }
    }
    Some(out)
}

/// Apply the word over the bits of `n`, most significant first; `None` on overflow.
fn word<T>(n: u64) -> Option<[T; 5]>
where
    T: Clone + Zero + CheckedAdd + CheckedMul + From<u8>,
{
    let mut v: [T; 5] = std::array::from_fn(|i| if i == 4 { T::from(1) } else { T::zero() });
    let len = super::binary::bit_len(n);
    for bit in (0..len).rev() {
        let m = if n >> bit & 1 == 1 {
            &TRANSFER
        } else {
            &SQUARING
        };
        v = apply(m, &v)?;
    }
    Some(v)
}

/// The structural vector `(b, c, u, v, r)` of `H_8^∇n`, from the product of
/// transfer (bit 1) and squaring (bit 0) matrices applied to that of `{1}`.
pub fn structure_a8(n: u64) -> [BigUint; 5] {
    match word::<u128>(n) {
        Some(v) => v.map(BigUint::from),
        None => word::<BigUint>(n).expect("arbitrary precision does not overflow"),
    }
}

/// `a_8(n) = b + u + r` of the matrix-word structural vector.
pub fn matrix_word_a8(n: u64) -> BigUint {
    if let Some([b, _, u, _, r]) = word::<u128>(n) {
        if let Some(sum) = b.checked_add(u).and_then(|s| s.checked_add(r)) {
            return BigUint::from(sum);
        }
    }
    let [b, _, u, _, r] = word::<BigUint>(n).expect("arbitrary precision does not overflow");
    b + u + r
}
