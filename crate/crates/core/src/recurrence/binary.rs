use std::fmt;

use crate::error::{Error, Result};

/// The binary expansion `[e_l ... e_1 e_0]` of `n`, most significant bit first.
///
/// `0` is the single bit `[0]`; otherwise the leading bit is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BinaryExpansion {
    bits: Vec<bool>,
    value: u64,
}

impl BinaryExpansion {
    pub fn new(value: u64) -> Self {
        let len = bit_len(value);
        let bits = (0..len).rev().map(|i| value >> i & 1 == 1).collect();
        BinaryExpansion { bits, value }
    }

    /// Parse a string of `0`/`1` digits, most significant first.
    pub fn parse(digits: &str) -> Result<Self> {
        if digits.is_empty() || digits.len() > 64 {
            return Err(Error::domain(format!(
                "binary expansion must have 1..=64 digits, got {:?}",
                digits
            )));
        }
        let value = u64::from_str_radix(digits, 2)
            .map_err(|_| Error::domain(format!("{digits:?} is not a binary string")))?;
        Ok(Self::new(value))
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// Lengths of the maximal runs of consecutive 1 bits, most significant run first.
    pub fn one_runs(&self) -> Vec<u32> {
        self.bits
            .split(|&b| !b)
            .filter(|run| !run.is_empty())
            .map(|run| run.len() as u32)
            .collect()
    }
}

impl fmt::Display for BinaryExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Number of digits in the binary expansion of `n` (1 for `n = 0`).
pub fn bit_len(n: u64) -> u32 {
    (64 - n.leading_zeros()).max(1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expansions() {
        assert_eq!(BinaryExpansion::new(0).to_string(), "0");
        assert_eq!(BinaryExpansion::new(1).to_string(), "1");
        assert_eq!(BinaryExpansion::new(11727).to_string(), "10110111001111");
        assert_eq!(
            BinaryExpansion::parse("1011011101111").unwrap().value(),
            5871
        );
        assert_eq!(BinaryExpansion::new(1883).to_string(), "11101011011");
        assert_eq!(BinaryExpansion::parse("11011").unwrap().value(), 27);
        assert!(BinaryExpansion::parse("").is_err());
        assert!(BinaryExpansion::parse("102").is_err());
    }

    #[test]
    fn runs() {
        assert_eq!(BinaryExpansion::new(11727).one_runs(), vec![1, 2, 3, 4]);
        assert_eq!(BinaryExpansion::new(0).one_runs(), Vec::<u32>::new());
        assert_eq!(BinaryExpansion::new(16).one_runs(), vec![1]);
    }

    #[test]
    fn value_matches_bits() {
        for n in [0u64, 1, 2, 5, 1 << 40, u64::MAX] {
            let e = BinaryExpansion::new(n);
            let back = e.bits().iter().fold(0u64, |acc, &b| acc << 1 | b as u64);
            assert_eq!(back, n);
            assert_eq!(e.len() as u32, bit_len(n));
        }
    }
}
