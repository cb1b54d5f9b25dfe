use std::cmp::Ordering;

use num_bigint::BigUint;

use super::element::{Basis, ElementVec, SLOT_BITS, SLOT_MASK};
use crate::error::{Error, Result};

/// Default bound on the number of elements any materialized set may reach.
pub const DEFAULT_ELEMENT_CAP: usize = 1 << 24;

/// Resource guard for operations that materialize sets.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub element_cap: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            element_cap: DEFAULT_ELEMENT_CAP,
        }
    }
}

/// A finite set of `k`-smooth numbers.
///
/// Elements are kept as packed exponent keys in strictly increasing key
/// order. Key order groups elements by odd part (all slots above the
/// 2-slot) and, inside a group, orders them by the exponent of 2; the chain
/// decomposition relies on this.
#[derive(Clone, Debug)]
pub struct SymSet {
    k: u32,
    basis: Basis,
    keys: Vec<u128>,
}

impl PartialEq for SymSet {
    fn eq(&self, other: &Self) -> bool {
        self.basis == other.basis && self.keys == other.keys
    }
}

impl Eq for SymSet {}

impl SymSet {
    pub fn empty(k: u32) -> Result<Self> {
        Ok(SymSet {
            k,
            basis: Basis::for_bound(k)?,
            keys: Vec::new(),
        })
    }

    /// The multiplicative identity `{1}`.
    pub fn one(k: u32) -> Result<Self> {
        Ok(SymSet {
            k,
            basis: Basis::for_bound(k)?,
            keys: vec![0],
        })
    }

    /// Build a set from natural numbers; duplicates collapse.
    pub fn from_naturals(k: u32, values: impl IntoIterator<Item = u64>) -> Result<Self> {
        let basis = Basis::for_bound(k)?;
        let mut keys = values
            .into_iter()
            .map(|v| {
                ElementVec::from_natural(v, &basis)
                    .map(|e| e.pack())
                    .ok_or_else(|| Error::domain(format!("{v} is not {k}-smooth")))
            })
            .collect::<Result<Vec<_>>>()?;
        keys.sort_unstable();
        keys.dedup();
        Ok(SymSet { k, basis, keys })
    }

    pub fn from_elements(k: u32, elements: impl IntoIterator<Item = ElementVec>) -> Result<Self> {
        let basis = Basis::for_bound(k)?;
        let mut keys = Vec::new();
        for e in elements {
            if e.exponents().len() != basis.len() {
                return Err(Error::domain(format!(
                    "element with {} slots does not match the {}-prime basis",
                    e.exponents().len(),
                    basis.len()
                )));
            }
            keys.push(e.pack());
        }
        keys.sort_unstable();
        keys.dedup();
        Ok(SymSet { k, basis, keys })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn contains(&self, e: &ElementVec) -> bool {
        e.exponents().len() == self.basis.len() && self.keys.binary_search(&e.pack()).is_ok()
    }

    pub fn contains_natural(&self, value: u64) -> bool {
        ElementVec::from_natural(value, &self.basis).is_some_and(|e| self.contains(&e))
    }

    /// Elements in packed-key order (odd part major, power of two minor).
    pub fn iter(&self) -> impl ExactSizeIterator<Item = ElementVec> + '_ {
        let len = self.basis.len();
        self.keys
            .iter()
            .map(move |&key| ElementVec::unpack(key, len))
    }

    /// The encoded natural numbers, ascending.
    pub fn naturals(&self) -> Vec<BigUint> {
        let mut out: Vec<BigUint> = self.iter().map(|e| e.to_natural(&self.basis)).collect();
        out.sort_unstable();
        out
    }

    pub(crate) fn keys(&self) -> &[u128] {
        &self.keys
    }

    fn with_keys(&self, k: u32, keys: Vec<u128>) -> SymSet {
        SymSet {
            k,
            basis: self.basis.clone(),
            keys,
        }
    }

    fn slot_maxima(&self) -> Vec<u32> {
        let mut max = vec![0u32; self.basis.len()];
        for &key in &self.keys {
            for (slot, m) in max.iter_mut().enumerate() {
                let e = ((key >> (SLOT_BITS * slot as u32)) & SLOT_MASK) as u32;
                *m = (*m).max(e);
            }
        }
        max
    }
}

/// `{1, ..., k}` as exponent vectors over the primes `<= k`.
pub fn make_hk(k: u32) -> Result<SymSet> {
    SymSet::from_naturals(k, 1..=k as u64)
}

fn check_basis(s: &SymSet, t: &SymSet) -> Result<()> {
    if s.basis != t.basis {
        return Err(Error::domain(format!(
            "mismatched bases: k={} has {:?}, k={} has {:?}",
            s.k,
            s.basis.primes(),
            t.k,
            t.basis.primes()
        )));
    }
    Ok(())
}

/// Keys present in exactly one of two strictly increasing streams.
fn xor_merge(
    a: impl Iterator<Item = u128>,
    b: impl Iterator<Item = u128>,
    cap: usize,
) -> Result<Vec<u128>> {
    let mut a = a.peekable();
    let mut b = b.peekable();
    let mut out = Vec::with_capacity(a.size_hint().0.max(b.size_hint().0));
    loop {
        let next = match (a.peek(), b.peek()) {
            (Some(&x), Some(&y)) => match x.cmp(&y) {
                Ordering::Less => {
                    a.next();
                    x
                }
                Ordering::Greater => {
                    b.next();
                    y
                }
                Ordering::Equal => {
                    a.next();
                    b.next();
                    continue;
                }
            },
            (Some(&x), None) => {
                a.next();
                x
            }
            (None, Some(&y)) => {
                b.next();
                y
            }
            (None, None) => break,
        };
        if out.len() == cap {
            return Err(Error::SizeLimit(format!(
                "intermediate set exceeds the element cap of {cap}"
            )));
        }
        out.push(next);
    }
    Ok(out)
}

/// `big ∇ multipliers` as toggled products, split recursively over the multipliers.
fn product_keys(big: &[u128], multipliers: &[u128], cap: usize) -> Result<Vec<u128>> {
    let shifted = |d: u128| big.iter().map(move |&x| x + d);
    match multipliers {
        [] => Ok(Vec::new()),
        [d] => {
            if big.len() > cap {
                return Err(Error::SizeLimit(format!(
                    "intermediate set exceeds the element cap of {cap}"
                )));
            }
            Ok(shifted(*d).collect())
        }
        [d0, d1] => xor_merge(shifted(*d0), shifted(*d1), cap),
        _ => {
            let (left, right) = multipliers.split_at(multipliers.len() / 2);
            let left = product_keys(big, left, cap)?;
            let right = product_keys(big, right, cap)?;
            xor_merge(left.into_iter(), right.into_iter(), cap)
        }
    }
}

/// Symmetric difference `s △ t`.
pub fn sym_diff(s: &SymSet, t: &SymSet) -> Result<SymSet> {
    check_basis(s, t)?;
    let keys = xor_merge(s.keys.iter().copied(), t.keys.iter().copied(), usize::MAX)?;
    Ok(s.with_keys(s.k.max(t.k), keys))
}

/// Symmetric product `s ∇ t` under the default [`Limits`].
pub fn sym_prod(s: &SymSet, t: &SymSet) -> Result<SymSet> {
    sym_prod_with(s, t, &Limits::default())
}

/// Symmetric product: every product `c*d` is toggled in, so products hit an
/// even number of times cancel.
pub fn sym_prod_with(s: &SymSet, t: &SymSet, limits: &Limits) -> Result<SymSet> {
    check_basis(s, t)?;
    let k = s.k.max(t.k);
    if s.is_empty() || t.is_empty() {
        return Ok(s.with_keys(k, Vec::new()));
    }
    let (ms, mt) = (s.slot_maxima(), t.slot_maxima());
    if ms.iter().zip(&mt).any(|(a, b)| a + b > SLOT_MASK as u32) {
        return Err(Error::SizeLimit(
            "exponent exceeds the 16-bit slot width".to_string(),
        ));
    }
    let (big, small) = if s.len() >= t.len() { (s, t) } else { (t, s) };
    let keys = product_keys(&big.keys, &small.keys, limits.element_cap)?;
    Ok(s.with_keys(k, keys))
}

/// `{x^2 : x in s}`: every exponent doubles, which preserves key order.
pub fn sym_square(s: &SymSet) -> Result<SymSet> {
    if s.slot_maxima().iter().any(|&m| 2 * m > SLOT_MASK as u32) {
        return Err(Error::SizeLimit(
            "exponent exceeds the 16-bit slot width".to_string(),
        ));
    }
    Ok(s.with_keys(s.k, s.keys.iter().map(|&key| key << 1).collect()))
}

/// `H_k^∇n` under the default [`Limits`].
pub fn sym_power(k: u32, n: u64) -> Result<SymSet> {
    sym_power_with(k, n, &Limits::default())
}

/// `H_k^∇n` by square-and-multiply over the bits of `n`, most significant first.
pub fn sym_power_with(k: u32, n: u64, limits: &Limits) -> Result<SymSet> {
    let hk = make_hk(k)?;
    let mut acc = SymSet::one(k)?;
    if n == 0 {
        return Ok(acc);
    }
    for bit in (0..64 - n.leading_zeros()).rev() {
        acc = sym_square(&acc)?;
        if n >> bit & 1 == 1 {
            acc = sym_prod_with(&acc, &hk, limits)?;
        }
        if acc.len() > limits.element_cap {
            return Err(Error::SizeLimit(format!(
                "set exceeds the element cap of {}",
                limits.element_cap
            )));
        }
    }
    Ok(acc)
}

/// `a_k(n) = |H_k^∇n|` by materializing the set.
pub fn brute_card(k: u32, n: u64) -> Result<BigUint> {
    brute_card_with(k, n, &Limits::default())
}

pub fn brute_card_with(k: u32, n: u64, limits: &Limits) -> Result<BigUint> {
    Ok(BigUint::from(sym_power_with(k, n, limits)?.len()))
}

/// Successive powers `H_k^∇0, H_k^∇1, ...`, each one `∇ H_k` away from the last.
///
/// The step `S ∇ H_k` can pass through partial sums far larger than both
/// operands. When that hits the element cap the power is recomputed by
/// square-and-multiply instead. After the first error that persists the
/// iterator is exhausted.
pub struct Powers {
    hk: SymSet,
    last: Option<SymSet>,
    next_n: u64,
    limits: Limits,
}

impl Powers {
    pub fn new(k: u32, limits: Limits) -> Result<Self> {
        Ok(Powers {
            hk: make_hk(k)?,
            last: None,
            next_n: 0,
            limits,
        })
    }
}

impl Iterator for Powers {
    type Item = Result<SymSet>;

    fn next(&mut self) -> Option<Self::Item> {
        let n = self.next_n;
        let next = match (n, &self.last) {
            (0, _) => SymSet::one(self.hk.k),
            (_, None) => return None,
            (_, Some(prev)) => match sym_prod_with(prev, &self.hk, &self.limits) {
                Err(Error::SizeLimit(_)) => sym_power_with(self.hk.k, n, &self.limits),
                other => other,
            },
        };
        self.next_n += 1;
        match next {
            Ok(set) => {
                self.last = Some(set.clone());
                Some(Ok(set))
            }
            Err(e) => {
                self.last = None;
                self.next_n = u64::MAX;
                Some(Err(e))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nat(values: &[u64]) -> SymSet {
        SymSet::from_naturals(8, values.iter().copied()).unwrap()
    }

    fn as_u64(s: &SymSet) -> Vec<u64> {
        s.naturals()
            .into_iter()
            .map(|v| u64::try_from(v).unwrap())
            .collect()
    }

    #[test]
    fn make_hk_examples() {
        assert_eq!(as_u64(&make_hk(1).unwrap()), vec![1]);
        let h8 = make_hk(8).unwrap();
        assert_eq!(as_u64(&h8), (1..=8).collect::<Vec<_>>());
        assert_eq!(h8.basis().primes(), &[2, 3, 5, 7]);
        let h6 = make_hk(6).unwrap();
        assert_eq!(h6.basis().len(), 3);
        assert_eq!(h6.len(), 6);
        assert!(make_hk(0).is_err());
        assert!(make_hk(23).is_err());
        assert_eq!(make_hk(16).unwrap().len(), 16);
    }

    #[test]
    fn sym_diff_examples() {
        assert_eq!(
            as_u64(&sym_diff(&nat(&[1, 2]), &nat(&[2, 3])).unwrap()),
            vec![1, 3]
        );
        let s = nat(&[1, 5, 12, 49]);
        assert!(sym_diff(&s, &s).unwrap().is_empty());
        assert_eq!(sym_diff(&s, &SymSet::empty(8).unwrap()).unwrap(), s);
    }

    #[test]
    fn mismatched_basis_is_domain_error() {
        let a = make_hk(4).unwrap();
        let b = make_hk(8).unwrap();
        assert!(matches!(sym_diff(&a, &b), Err(Error::Domain(_))));
        assert!(matches!(sym_prod(&a, &b), Err(Error::Domain(_))));
        // same primes, different bound: allowed
        assert!(sym_prod(&make_hk(7).unwrap(), &b).is_ok());
    }

    #[test]
    fn sym_prod_examples() {
        let p = sym_prod(&nat(&[1, 2, 3]), &nat(&[2, 4])).unwrap();
        assert_eq!(as_u64(&p), vec![2, 6, 8, 12]);
        let s = nat(&[3, 5, 8]);
        assert!(sym_prod(&s, &SymSet::empty(8).unwrap()).unwrap().is_empty());
        assert_eq!(sym_prod(&s, &SymSet::one(8).unwrap()).unwrap(), s);
    }

    #[test]
    fn sym_square_examples() {
        assert_eq!(
            as_u64(&sym_square(&nat(&[1, 2, 3])).unwrap()),
            vec![1, 4, 9]
        );
        let h8 = make_hk(8).unwrap();
        assert_eq!(
            as_u64(&sym_square(&h8).unwrap()),
            (1..=8).map(|x| x * x).collect::<Vec<_>>()
        );
        assert!(sym_square(&SymSet::empty(8).unwrap()).unwrap().is_empty());
    }

    #[test]
    fn sym_power_examples() {
        assert_eq!(as_u64(&sym_power(8, 0).unwrap()), vec![1]);
        assert_eq!(sym_power(2, 5).unwrap().len(), 4);
        assert_eq!(brute_card(4, 7).unwrap(), BigUint::from(40u32));
        assert_eq!(brute_card(8, 11).unwrap(), BigUint::from(368u32));
        // k = 9 has no fast path; value frozen from an integer-toggling oracle
        assert_eq!(brute_card(9, 5).unwrap(), BigUint::from(81u32));
        assert_eq!(brute_card(9, 6).unwrap(), BigUint::from(57u32));
    }

    #[test]
    fn element_cap_is_enforced() {
        let limits = Limits { element_cap: 100 };
        assert!(matches!(
            sym_power_with(8, 7, &limits),
            Err(Error::SizeLimit(_))
        ));
        assert!(sym_power_with(8, 3, &limits).is_ok());
    }

    #[test]
    fn slot_overflow_is_reported() {
        // 2^(3 * 2^15) overflows a 16-bit slot
        assert!(matches!(sym_power(8, 1 << 15), Err(Error::SizeLimit(_))));
        assert_eq!(sym_power(8, 1 << 13).unwrap().len(), 8);
    }

    #[test]
    fn powers_iterator_matches_square_and_multiply() {
        for (n, set) in Powers::new(8, Limits::default())
            .unwrap()
            .take(20)
            .enumerate()
        {
            assert_eq!(set.unwrap(), sym_power(8, n as u64).unwrap(), "n={n}");
        }
    }

    #[test]
    fn powers_iterator_stops_after_cap() {
        let items: Vec<_> = Powers::new(8, Limits { element_cap: 60 })
            .unwrap()
            .collect();
        assert!(items[..items.len() - 1].iter().all(|r| r.is_ok()));
        assert!(items.last().unwrap().is_err());
    }

    #[test]
    fn powers_iterator_recovers_from_large_partial_sums() {
        // a_7(255) = 2354785 but a_7(256) = 7
        let limits = Limits {
            element_cap: 2_400_000,
        };
        let mut powers = Powers::new(7, limits).unwrap().skip(255);
        assert_eq!(powers.next().unwrap().unwrap().len(), 2_354_785);
        assert_eq!(powers.next().unwrap().unwrap().len(), 7);
    }
}
