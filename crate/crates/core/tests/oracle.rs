mod common;

use num_bigint::BigUint;

use symnabla::chain::{decompose, structural_vector};
use symnabla::recurrence::{a, sparse_theta, structure_a8, Method};
use symnabla::symmetric::{brute_card, sym_power, Limits, Powers};

use common::naive_power;

// Values computed by an independent integer-toggling implementation.
const A8_PREFIX: [u64; 65] = [
    1, 8, 8, 48, 8, 64, 48, 296, 8, 64, 64, 368, 48, 384, 296, 1784, 8, 64, 64, 384, 64, 512, 368,
    2256, 48, 384, 384, 2216, 296, 2368, 1784, 10744, 8, 64, 64, 384, 64, 512, 384, 2368, 64, 512,
    512, 2928, 368, 2944, 2256, 13520, 48, 384, 384, 2304, 384, 3072, 2216, 13592, 296, 2368, 2368,
    13624, 1784, 14272, 10744, 64536, 8,
];

#[test]
fn a8_prefix_matches_frozen_values() {
    for (n, &expected) in A8_PREFIX.iter().enumerate() {
        for m in [Method::Brute, Method::Matrix, Method::Reduce] {
            assert_eq!(
                a(8, n as u64, m).unwrap(),
                BigUint::from(expected),
                "n={n} {m}"
            );
        }
    }
}

#[test]
fn frozen_values_beyond_eight() {
    let a9 = [1u64, 9, 9, 57, 9, 81, 57, 383, 9];
    for (n, &expected) in a9.iter().enumerate() {
        assert_eq!(
            a(9, n as u64, Method::Auto).unwrap(),
            BigUint::from(expected),
            "n={n}"
        );
    }
    assert_eq!(a(5, 15, Method::Brute).unwrap(), BigUint::from(405u32));
    for (n, expected) in [(3u64, 43u32), (7, 265), (11, 301), (15, 1633)] {
        assert_eq!(a(7, n, Method::Brute).unwrap(), BigUint::from(expected));
        assert_eq!(a(7, n, Method::Fast).unwrap(), BigUint::from(expected));
    }
    for (n, expected) in [(1u64, 6u32), (3, 30), (7, 150), (15, 750)] {
        assert_eq!(a(6, n, Method::Brute).unwrap(), BigUint::from(expected));
    }
}

#[test]
fn first_512_terms_of_a8() {
    let mut sum = BigUint::default();
    let mut max = (0, 0usize);
    for (n, set) in Powers::new(8, Limits::default())
        .unwrap()
        .take(513)
        .enumerate()
    {
        let len = set.unwrap().len();
        sum += len;
        if len > max.1 {
            max = (n, len);
        }
    }
    assert_eq!(sum, BigUint::from(70_729_641u64));
    assert_eq!(max, (511, 13_952_696));
}

#[test]
fn sparse_terms_of_a8() {
    let expected = [
        1u64, 8, 48, 296, 1784, 10744, 64536, 387448, 2325208, 13952696,
    ];
    for (t, &v) in expected.iter().enumerate() {
        assert_eq!(
            sparse_theta(8, t as u32).unwrap(),
            BigUint::from(v),
            "t={t}"
        );
    }
}

#[test]
fn naive_oracle_agrees_with_packed_sets() {
    for k in 1..=12u64 {
        let max_n = if k <= 8 { 24 } else { 12 };
        for n in 0..=max_n {
            let naive = naive_power(k, n);
            let packed = sym_power(k as u32, u64::from(n)).unwrap();
            assert_eq!(packed.len(), naive.len(), "k={k} n={n}");
            let mut naive: Vec<u128> = naive.into_iter().collect();
            naive.sort_unstable();
            let packed: Vec<u128> = packed
                .naturals()
                .into_iter()
                .map(|v| u128::try_from(v).unwrap())
                .collect();
            assert_eq!(packed, naive, "k={k} n={n}");
        }
    }
}

#[test]
fn brute_card_uses_the_same_sets() {
    for n in 0..30 {
        assert_eq!(
            brute_card(8, n).unwrap(),
            BigUint::from(naive_power(8, n as u32).len())
        );
    }
}

#[test]
fn matrix_word_structure_matches_decomposition() {
    for n in 0..=300u64 {
        let set = sym_power(8, n).unwrap();
        let sv = structural_vector(&decompose(&set).unwrap(), 8).unwrap();
        let expected: Vec<BigUint> = sv
            .components()
            .into_iter()
            .map(|x| BigUint::from(x as u64))
            .collect();
        assert_eq!(structure_a8(n).to_vec(), expected, "n={n}");
    }
}
