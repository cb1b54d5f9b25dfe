//! Chain decomposition of symmetric powers and the transfer matrices that
//! advance their structural vectors.
//!
//! A set is split in three passes. Maximal doubling runs `{x, 2x, 4x, ...}`
//! of length at least 2 become type-A chains. For `k = 8`, maximal runs of
//! ratio 4 among the leftovers become type-B chains. Everything else is a
//! type-C singleton.

mod matrix;
mod verify;

use std::fmt;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::symmetric::{Basis, ElementVec, SymSet};

pub use matrix::{
    initial_vector, selector, squaring_matrix, transfer_matrix, IntMatrix, MatrixRole,
    TransferMatrix,
};
pub use verify::{
    sparse_power_sets, verify_transfer, verify_transfer_to_cap, verify_transfer_with,
    TransferReport, TransferStep,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ChainKind {
    A,
    B,
    C,
}

impl ChainKind {
    /// log2 of the ratio between consecutive members.
    pub fn ratio_log2(self) -> u16 {
        match self {
            ChainKind::A => 1,
            ChainKind::B => 2,
            ChainKind::C => 0,
        }
    }
}

impl fmt::Display for ChainKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ChainKind::A => "A",
            ChainKind::B => "B",
            ChainKind::C => "C",
        };
        f.write_str(s)
    }
}

/// A maximal geometric run `{x, rx, r^2 x, ...}` inside a set.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Chain {
    pub kind: ChainKind,
    /// The smallest member.
    pub base: ElementVec,
    pub length: usize,
}

impl Chain {
    pub fn members(&self) -> impl Iterator<Item = ElementVec> + '_ {
        let step = self.kind.ratio_log2();
        let exps = self.base.exponents();
        (0..self.length).map(move |i| {
            let mut e = exps.to_vec();
            if let Some(two) = e.first_mut() {
                *two += step * i as u16;
            }
            ElementVec::new(&e).expect("same slot count as base")
        })
    }

    /// `A base=3 len=8`
    pub fn to_line(&self, basis: &Basis) -> String {
        format!(
            "{} base={} len={}",
            self.kind,
            self.base.to_natural(basis),
            self.length
        )
    }

    pub fn to_record(&self, basis: &Basis) -> ChainRecord {
        ChainRecord {
            kind: self.kind,
            base: self.base.to_natural(basis).to_string(),
            length: self.length,
        }
    }
}

/// JSON form of a chain: `{"kind": "A", "base": "3", "length": 8}`.
///
/// `base` is a decimal string since members are unbounded integers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainRecord {
    pub kind: ChainKind,
    pub base: String,
    pub length: usize,
}

/// Parse one line of the `A base=3 len=8` text form.
pub fn parse_chain_line(line: &str) -> Result<ChainRecord> {
    let bad = || Error::Format(format!("malformed chain line {line:?}"));
    let mut parts = line.split_whitespace();
    let kind = match parts.next() {
        Some("A") => ChainKind::A,
        Some("B") => ChainKind::B,
        Some("C") => ChainKind::C,
        _ => return Err(bad()),
    };
    let base = parts
        .next()
        .and_then(|p| p.strip_prefix("base="))
        .filter(|b| b.parse::<BigUint>().is_ok())
        .ok_or_else(bad)?;
    let length = parts
        .next()
        .and_then(|p| p.strip_prefix("len="))
        .and_then(|l| l.parse().ok())
        .ok_or_else(bad)?;
    if parts.next().is_some() {
        return Err(bad());
    }
    Ok(ChainRecord {
        kind,
        base: base.to_string(),
        length,
    })
}

/// The structural vector `(b, c, u, v, r)` of a chain decomposition.
///
/// `b`/`u` count elements in A/B chains, `c`/`v` count the chains, `r`
/// counts C chains. For `k` in `4..=7` only `(b, c, r)` is meaningful and
/// `u = v = 0`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StructVec {
    pub k: u32,
    pub b: u64,
    pub c: u64,
    pub u: u64,
    pub v: u64,
    pub r: u64,
}

impl StructVec {
    pub fn has_b_components(&self) -> bool {
        self.k == 8
    }

    /// Components in matrix order: 5 for `k = 8`, 3 otherwise.
    pub fn components(&self) -> Vec<i64> {
        if self.has_b_components() {
            vec![
                self.b as i64,
                self.c as i64,
                self.u as i64,
                self.v as i64,
                self.r as i64,
            ]
        } else {
            vec![self.b as i64, self.c as i64, self.r as i64]
        }
    }

    pub fn component_names(&self) -> &'static [&'static str] {
        if self.has_b_components() {
            &["b", "c", "u", "v", "r"]
        } else {
            &["b", "c", "r"]
        }
    }

    pub fn from_components(k: u32, values: &[i64]) -> Result<Self> {
        let neg = || Error::domain(format!("negative structural component in {values:?}"));
        let get = |i: usize| u64::try_from(values[i]).map_err(|_| neg());
        match (k, values.len()) {
            (8, 5) => Ok(StructVec {
                k,
                b: get(0)?,
                c: get(1)?,
                u: get(2)?,
                v: get(3)?,
                r: get(4)?,
            }),
            (4..=7, 3) => Ok(StructVec {
                k,
                b: get(0)?,
                c: get(1)?,
                r: get(2)?,
                ..Default::default()
            }),
            _ => Err(Error::domain(format!(
                "{} components do not form a structural vector for k={k}",
                values.len()
            ))),
        }
    }

    /// Number of elements in the decomposed set: `b + u + r`.
    pub fn cardinality(&self) -> u64 {
        self.b + self.u + self.r
    }
}

impl fmt::Display for StructVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.has_b_components() {
            write!(
                f,
                "({},{},{},{},{})",
                self.b, self.c, self.u, self.v, self.r
            )
        } else {
            write!(f, "({},{},{})", self.b, self.c, self.r)
        }
    }
}

/// Chains in key order together with the owning chain of every element.
pub(crate) struct Decomposition {
    pub chains: Vec<Chain>,
    /// `owner[i]` is the chain index of the `i`-th element in key order.
    pub owner: Vec<u32>,
}

fn check_decomposable(s: &SymSet) -> Result<()> {
    if !(4..=8).contains(&s.k()) {
        return Err(Error::domain(format!(
            "chain decomposition is defined for k in 4..=8, got k={}",
            s.k()
        )));
    }
    if s.is_empty() {
        return Err(Error::domain("cannot decompose the empty set"));
    }
    Ok(())
}

pub(crate) fn decompose_raw(s: &SymSet) -> Result<Decomposition> {
    check_decomposable(s)?;
    let with_b = s.k() == 8;
    let keys = s.keys();
    let slots = s.basis().len();
    let two = |i: usize| (keys[i] & 0xFFFF) as u16;
    let mut chains = Vec::new();
    let mut owner = vec![u32::MAX; keys.len()];
    let mut push = |chains: &mut Vec<Chain>, kind, members: &[usize]| {
        let id = chains.len() as u32;
        for &m in members {
            owner[m] = id;
        }
        chains.push(Chain {
            kind,
            base: ElementVec::unpack(keys[members[0]], slots),
            length: members.len(),
        });
    };

    let mut start = 0;
    let mut leftovers = Vec::new();
    let mut run = Vec::new();
    while start < keys.len() {
        let odd = keys[start] >> 16;
        let end = start + keys[start..].partition_point(|&k| k >> 16 == odd);

        leftovers.clear();
        let mut i = start;
        while i < end {
            let mut j = i;
            while j + 1 < end && two(j + 1) == two(j) + 1 {
                j += 1;
            }
            if j > i {
                run.clear();
                run.extend(i..=j);
                push(&mut chains, ChainKind::A, &run);
            } else {
                leftovers.push(i);
            }
            i = j + 1;
        }

        let mut i = 0;
        while i < leftovers.len() {
            let mut j = i;
            if with_b {
                while j + 1 < leftovers.len() && two(leftovers[j + 1]) == two(leftovers[j]) + 2 {
                    j += 1;
                }
            }
            if j > i {
                push(&mut chains, ChainKind::B, &leftovers[i..=j]);
            } else {
                push(&mut chains, ChainKind::C, &leftovers[i..=i]);
            }
            i = j + 1;
        }
        start = end;
    }
    Ok(Decomposition { chains, owner })
}

/// Split `s` into chains, sorted by kind and then by the numeric value of the base.
pub fn decompose(s: &SymSet) -> Result<Vec<Chain>> {
    let mut chains = decompose_raw(s)?.chains;
    let basis = s.basis();
    chains.sort_by_cached_key(|c| (c.kind, c.base.to_natural(basis)));
    Ok(chains)
}

pub fn structural_vector(chains: &[Chain], k: u32) -> Result<StructVec> {
    if !(4..=8).contains(&k) {
        return Err(Error::domain(format!(
            "structural vectors are defined for k in 4..=8, got k={k}"
        )));
    }
    let mut sv = StructVec {
        k,
        ..Default::default()
    };
    for chain in chains {
        match chain.kind {
            ChainKind::A => {
                sv.b += chain.length as u64;
                sv.c += 1;
            }
            ChainKind::B if k == 8 => {
                sv.u += chain.length as u64;
                sv.v += 1;
            }
            ChainKind::B => {
                return Err(Error::domain(format!(
                    "type-B chain in a k={k} decomposition"
                )));
            }
            ChainKind::C => sv.r += 1,
        }
    }
    Ok(sv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symmetric::{make_hk, sym_power};

    fn lines(s: &SymSet) -> Vec<String> {
        decompose(s)
            .unwrap()
            .iter()
            .map(|c| c.to_line(s.basis()))
            .collect()
    }

    fn member_values(c: &Chain, basis: &Basis) -> Vec<u64> {
        c.members()
            .map(|m| u64::try_from(m.to_natural(basis)).unwrap())
            .collect()
    }

    #[test]
    fn decompose_h8() {
        assert_eq!(
            lines(&make_hk(8).unwrap()),
            vec![
                "A base=1 len=4",
                "A base=3 len=2",
                "C base=5 len=1",
                "C base=7 len=1"
            ]
        );
    }

    #[test]
    fn decompose_h8_cubed_matches_listing() {
        let s = sym_power(8, 3).unwrap();
        let chains = decompose(&s).unwrap();
        let basis = s.basis();
        let got: Vec<(ChainKind, Vec<u64>)> = chains
            .iter()
            .map(|c| (c.kind, member_values(c, basis)))
            .collect();
        let a = |v: &[u64]| (ChainKind::A, v.to_vec());
        let b = |v: &[u64]| (ChainKind::B, v.to_vec());
        let c = |v: u64| (ChainKind::C, vec![v]);
        let expected = vec![
            a(&[1, 2]),
            a(&[3, 6, 12, 24, 48, 96, 192, 384]),
            a(&[9, 18]),
            a(&[25, 50, 100, 200]),
            a(&[27, 54, 108, 216]),
            a(&[49, 98, 196, 392]),
            a(&[75, 150]),
            a(&[144, 288]),
            a(&[147, 294]),
            a(&[256, 512]),
            b(&[5, 20, 80, 320]),
            b(&[7, 28, 112, 448]),
            b(&[45, 180]),
            b(&[63, 252]),
            c(125),
            c(175),
            c(245),
            c(343),
        ];
        assert_eq!(got, expected);
        assert_eq!(s.len(), 48);
    }

    #[test]
    fn decompose_singleton_one() {
        let chains = decompose(&SymSet::one(8).unwrap()).unwrap();
        assert_eq!(chains.len(), 1);
        assert_eq!(chains[0].kind, ChainKind::C);
        assert_eq!(chains[0].length, 1);
    }

    #[test]
    fn decompose_rejects_empty_and_bad_k() {
        assert!(matches!(
            decompose(&SymSet::empty(8).unwrap()),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            decompose(&make_hk(3).unwrap()),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            decompose(&make_hk(9).unwrap()),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn small_k_uses_only_a_and_c() {
        // 1, 4, 16 would be a B chain for k = 8
        let s = SymSet::from_naturals(5, [1, 4, 16, 3, 6]).unwrap();
        let kinds: Vec<_> = decompose(&s).unwrap().iter().map(|c| c.kind).collect();
        assert_eq!(
            kinds,
            vec![ChainKind::A, ChainKind::C, ChainKind::C, ChainKind::C]
        );
    }

    #[test]
    fn structural_vectors_of_first_sparse_powers() {
        let sv = |n| {
            let s = sym_power(8, n).unwrap();
            structural_vector(&decompose(&s).unwrap(), 8).unwrap()
        };
        assert_eq!(sv(0).to_string(), "(0,0,0,0,1)");
        assert_eq!(sv(1).to_string(), "(6,2,0,0,2)");
        assert_eq!(sv(3).to_string(), "(32,10,12,4,4)");
        // the squared set H_8^∇2 = {1, 4, ..., 64}
        assert_eq!(sv(2).to_string(), "(0,0,6,2,2)");
    }

    #[test]
    fn structural_vector_small_k() {
        let s = make_hk(4).unwrap();
        let sv = structural_vector(&decompose(&s).unwrap(), 4).unwrap();
        assert_eq!(sv.to_string(), "(3,1,1)");
        assert_eq!(sv.components(), vec![3, 1, 1]);
        assert!(structural_vector(&[], 3).is_err());
    }

    #[test]
    fn chain_line_roundtrip() {
        let s = sym_power(8, 3).unwrap();
        for c in decompose(&s).unwrap() {
            let line = c.to_line(s.basis());
            assert_eq!(parse_chain_line(&line).unwrap(), c.to_record(s.basis()));
        }
        assert!(parse_chain_line("D base=1 len=1").is_err());
        assert!(parse_chain_line("A base=x len=1").is_err());
        assert!(parse_chain_line("A base=1").is_err());
    }

    #[test]
    fn chain_json_schema() {
        let s = make_hk(8).unwrap();
        let records: Vec<_> = decompose(&s)
            .unwrap()
            .iter()
            .map(|c| c.to_record(s.basis()))
            .collect();
        let json = serde_json::to_string(&records[1]).unwrap();
        assert_eq!(json, r#"{"kind":"A","base":"3","length":2}"#);
    }
}
