use num_bigint::{BigInt, BigUint};
use proptest::prelude::*;

use symnabla::oeis::{parse_bfile, BFile};
use symnabla::recurrence::{
    a, lemma1_check, reduce_a8, reduce_value, sparse_theta, Method, ReduceOptions, Rule,
};
use symnabla::symmetric::{primes_up_to, sym_diff, sym_prod, sym_square, ElementVec, SymSet};

fn set_over(k: u32) -> impl Strategy<Value = SymSet> {
    let slots = primes_up_to(k).len();
    prop::collection::vec(prop::collection::vec(0u16..6, slots), 0..64).prop_map(move |exps| {
        SymSet::from_elements(k, exps.iter().map(|e| ElementVec::new(e).unwrap())).unwrap()
    })
}

fn three_sets() -> impl Strategy<Value = (SymSet, SymSet, SymSet)> {
    (2u32..=8).prop_flat_map(|k| (set_over(k), set_over(k), set_over(k)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn symmetric_difference_is_an_abelian_group((s, t, u) in three_sets()) {
        let empty = SymSet::empty(s.k()).unwrap();
        prop_assert_eq!(sym_diff(&s, &t).unwrap(), sym_diff(&t, &s).unwrap());
        prop_assert_eq!(
            sym_diff(&sym_diff(&s, &t).unwrap(), &u).unwrap(),
            sym_diff(&s, &sym_diff(&t, &u).unwrap()).unwrap()
        );
        prop_assert_eq!(sym_diff(&s, &empty).unwrap(), s.clone());
        prop_assert!(sym_diff(&s, &s).unwrap().is_empty());
    }

    #[test]
    fn symmetric_product_is_a_commutative_monoid((s, t, u) in three_sets()) {
        let one = SymSet::one(s.k()).unwrap();
        prop_assert_eq!(sym_prod(&s, &t).unwrap(), sym_prod(&t, &s).unwrap());
        prop_assert_eq!(
            sym_prod(&sym_prod(&s, &t).unwrap(), &u).unwrap(),
            sym_prod(&s, &sym_prod(&t, &u).unwrap()).unwrap()
        );
        prop_assert_eq!(sym_prod(&s, &one).unwrap(), s.clone());
    }

    #[test]
    fn product_distributes_over_difference((s, t, u) in three_sets()) {
        let lhs = sym_prod(&s, &sym_diff(&t, &u).unwrap()).unwrap();
        let rhs = sym_diff(&sym_prod(&s, &t).unwrap(), &sym_prod(&s, &u).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn square_is_elementwise_squaring((s, _, _) in three_sets()) {
        prop_assert_eq!(sym_square(&s).unwrap(), sym_prod(&s, &s).unwrap());
    }

    #[test]
    fn doubling_invariance_fast_paths(k in 1u32..=8, n in 0u64..(1 << 40)) {
        let methods: &[Method] = if k == 8 { &[Method::Matrix, Method::Reduce] } else { &[Method::Fast] };
        for &m in methods {
            prop_assert_eq!(a(k, 2 * n, m).unwrap(), a(k, n, m).unwrap());
        }
    }

    #[test]
    fn doubling_invariance_brute(k in 1u32..=10, n in 0u64..48) {
        prop_assert_eq!(a(k, 2 * n, Method::Brute).unwrap(), a(k, n, Method::Brute).unwrap());
    }

    #[test]
    fn block_factorization_below_eight(k in 2u32..=7, s in 1u32..=4, a_bits in any::<u64>(), b_bits in any::<u64>()) {
        let alpha = a_bits % (1 << s);
        let beta = b_bits % (1 << (7 - s));
        prop_assert!(lemma1_check(k, alpha, beta, s).unwrap());
    }

    #[test]
    fn reduction_traces_are_sound(n in 0u64..(1 << 48)) {
        let (value, trace) = reduce_a8(n, true);
        let trace = trace.unwrap();
        prop_assert!(trace.is_consistent(ReduceOptions::default()));
        prop_assert!(trace.leaves().iter().all(|&(r, m)| r == Rule::Memo || [0, 1, 3].contains(&m)));
        prop_assert_eq!(&value, &a(8, n, Method::Matrix).unwrap());
        let optional = ReduceOptions { optional_rules: true };
        prop_assert_eq!(reduce_value(n, optional), value);
    }

    #[test]
    fn bfile_round_trip(
        start in -5i64..5,
        gaps in prop::collection::vec(1i64..4, 0..40),
        values in prop::collection::vec(any::<i128>(), 40),
        labelled in any::<bool>(),
    ) {
        let mut index = start;
        let entries: Vec<(i64, BigInt)> = gaps
            .iter()
            .zip(&values)
            .map(|(g, &v)| {
                let e = (index, BigInt::from(v) * BigInt::from(v));
                index += g;
                e
            })
            .collect();
        let id = labelled.then(|| "A253064".parse().unwrap());
        let b = BFile::new(id, entries).unwrap();
        prop_assert_eq!(parse_bfile(b.to_text().as_bytes()).unwrap(), b);
    }
}

#[test]
fn fast_paths_hit_the_sparse_terms() {
    for k in 2..=8u32 {
        let m = if k == 8 { Method::Matrix } else { Method::Fast };
        for t in 0..=60u32 {
            let n = (1u64 << t) - 1;
            assert_eq!(
                a(k, n, m).unwrap(),
                sparse_theta(k, t).unwrap(),
                "k={k} t={t}"
            );
        }
        if k == 8 {
            assert_eq!(
                a(8, (1u64 << 60) - 1, Method::Reduce).unwrap(),
                sparse_theta(8, 60).unwrap()
            );
        }
    }
    assert_eq!(a(1, 1_000_000, Method::Auto).unwrap(), BigUint::from(1u32));
}
