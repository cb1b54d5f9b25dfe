//! A deliberately naive oracle: sets of plain integers, toggled one product at a time.

use std::collections::HashSet;

pub fn naive_prod(s: &HashSet<u128>, t: &HashSet<u128>) -> HashSet<u128> {
    let mut out = HashSet::new();
    for &c in s {
        for &d in t {
            let p = c * d;
            if !out.remove(&p) {
                out.insert(p);
            }
        }
    }
    out
}

pub fn naive_power(k: u64, n: u32) -> HashSet<u128> {
    let hk: HashSet<u128> = (1..=u128::from(k)).collect();
    let mut acc: HashSet<u128> = [1].into_iter().collect();
    for _ in 0..n {
        acc = naive_prod(&acc, &hk);
    }
    acc
}
