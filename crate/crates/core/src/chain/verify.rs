use super::{decompose_raw, structural_vector, transfer_matrix, ChainKind, StructVec};
use crate::error::{Error, Result};
use crate::symmetric::{make_hk, sym_prod_with, sym_square, Limits, SymSet};

/// One checked transfer `V_{t+1} = M V_t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransferStep {
    pub t: u32,
    pub current: StructVec,
    pub next: StructVec,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransferReport {
    pub k: u32,
    /// `V_0, V_1, ...` as decomposed from the materialized sets.
    pub vectors: Vec<StructVec>,
    pub steps: Vec<TransferStep>,
    /// Whether the run ended because the next set would exceed the element cap.
    pub reached_cap: bool,
}

impl TransferReport {
    /// Largest sparse exponent `t` whose set was materialized and checked.
    pub fn max_exponent(&self) -> u32 {
        self.vectors.len().saturating_sub(1) as u32
    }
}

/// The sparse powers `H_k^∇(2^t - 1)` for `t = 0, 1, 2, ...`.
pub fn sparse_power_sets(k: u32, limits: Limits) -> Result<impl Iterator<Item = Result<SymSet>>> {
    let hk = make_hk(k)?;
    let mut last: Option<SymSet> = None;
    let mut started = false;
    Ok(std::iter::from_fn(move || {
        let next = if !started {
            started = true;
            SymSet::one(k)
        } else {
            sym_square(last.as_ref()?).and_then(|sq| sym_prod_with(&sq, &hk, &limits))
        };
        last = next.as_ref().ok().cloned();
        Some(next)
    }))
}

/// Decompose one sparse power and check partition, chain shapes and the
/// non-concatenation gap: two elements with the same odd part from
/// different chains differ by a factor of at least `2^3` for `k = 8` and
/// `2^2` for `k <= 7`.
fn check_sparse_set(set: &SymSet, t: u32) -> Result<StructVec> {
    let k = set.k();
    let n = (1u64 << t) - 1;
    let dec = decompose_raw(set)?;
    let keys = set.keys();

    let mut members: Vec<u128> = dec
        .chains
        .iter()
        .flat_map(|c| c.members().map(|m| m.pack()).collect::<Vec<_>>())
        .collect();
    members.sort_unstable();
    if members != keys {
        return Err(Error::mismatch(
            k,
            n,
            "partition",
            format!("{} elements covered once", keys.len()),
            format!("{} chain members", members.len()),
        ));
    }

    for c in &dec.chains {
        let ok = match c.kind {
            ChainKind::A | ChainKind::B => c.length >= 2,
            ChainKind::C => c.length == 1,
        };
        if !ok {
            return Err(Error::mismatch(
                k,
                n,
                "chain length",
                "A/B of length >= 2, C of length 1",
                format!("{} of length {}", c.kind, c.length),
            ));
        }
    }

    let min_gap: u128 = if k == 8 { 3 } else { 2 };
    for i in 1..keys.len() {
        let (lo, hi) = (keys[i - 1], keys[i]);
        if lo >> 16 == hi >> 16 && dec.owner[i - 1] != dec.owner[i] {
            let gap = (hi & 0xFFFF) - (lo & 0xFFFF);
            if gap < min_gap {
                return Err(Error::mismatch(
                    k,
                    n,
                    "non-concatenation",
                    format!("2-adic gap >= {min_gap} between chains"),
                    format!("gap {gap}"),
                ));
            }
        }
    }

    let sv = structural_vector(&dec.chains, k)?;
    if sv.b < 2 * sv.c || sv.u < 2 * sv.v || sv.cardinality() != set.len() as u64 {
        return Err(Error::mismatch(
            k,
            n,
            "structural vector",
            "b >= 2c, u >= 2v, b + u + r = |set|",
            sv,
        ));
    }
    Ok(sv)
}

fn run(k: u32, max_t: Option<u32>, limits: Limits) -> Result<TransferReport> {
    let m = transfer_matrix(k)?.matrix;
    let mut report = TransferReport {
        k,
        vectors: Vec::new(),
        steps: Vec::new(),
        reached_cap: false,
    };
    for (t, set) in sparse_power_sets(k, limits)?.enumerate() {
        let t = t as u32;
        if max_t.is_some_and(|max| t > max) {
            break;
        }
        let set = match set {
            Err(Error::SizeLimit(_)) if max_t.is_none() => {
                report.reached_cap = true;
                break;
            }
            other => other?,
        };
        let sv = check_sparse_set(&set, t)?;
        if let Some(prev) = report.vectors.last().copied() {
            let predicted = m.apply(&prev.components());
            let actual = sv.components();
            if let Some(i) = (0..actual.len()).find(|&i| predicted[i] != actual[i]) {
                return Err(Error::mismatch(
                    k,
                    (1u64 << t) - 1,
                    format!("component {}", sv.component_names()[i]),
                    predicted[i],
                    actual[i],
                ));
            }
            report.steps.push(TransferStep {
                t: t - 1,
                current: prev,
                next: sv,
            });
        }
        report.vectors.push(sv);
    }
    Ok(report)
}

/// Check `V_{t+1} = M V_t` against decomposed oracle sets for every `t < max_t`.
pub fn verify_transfer(k: u32, max_t: u32) -> Result<TransferReport> {
    verify_transfer_with(k, max_t, Limits::default())
}

pub fn verify_transfer_with(k: u32, max_t: u32, limits: Limits) -> Result<TransferReport> {
    run(k, Some(max_t), limits)
}

/// Like [`verify_transfer`], continuing until the next sparse power would
/// exceed the element cap.
pub fn verify_transfer_to_cap(k: u32, limits: Limits) -> Result<TransferReport> {
    run(k, None, limits)
}
