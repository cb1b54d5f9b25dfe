//! Evaluation of `a_8(n)` by rewriting the binary expansion of `n`.
//!
//! Every rule expresses `a_8(n)` through values at integers with shorter
//! expansions. Rules are tried in a fixed order so that traces are
//! deterministic:
//!
//! | rule            | pattern in `(n)_2`           | value                                 |
//! |-----------------|------------------------------|---------------------------------------|
//! | `halve`         | `[x 0]`                      | `a(x)`                                |
//! | `gap-split`     | `[β 00.. α]`                 | `a(α) * a(β)`                         |
//! | `suffix-011011` | `[x 011011]` (optional)      | `47 a([x 011]) - 40 a(x)`             |
//! | `alternating`   | `[x 101011]`, `[10101 y]` (optional) | `9 a([x 1011]) - 8 a([x 11])`, `9 a([101 y]) - 8 a([1 y])` |
//! | `suffix-01`     | `[x 01]`                     | `8 a(x)`                              |
//! | `suffix-011`    | `[x 011]`                    | `a([x 1]) + 40 a(x)`                  |
//! | `triple-one`    | `[x 111 y]`                  | `7 a([x 11 y]) - 2 a([x 1 y]) - 24 a([x y])` |
//!
//! The gap split uses the lowest `00` pair and the triple rule the lowest
//! `111` block. Any `n` outside `{0, 1, 3}` matches some core rule, so the
//! rewriting always ends at the base values `a(0) = 1`, `a(1) = 8`, `a(3) = 48`.

use std::collections::{HashMap, HashSet};
use std::fmt::{self, Write as _};

use num_bigint::{BigInt, BigUint};
use num_traits::{CheckedAdd, CheckedMul, CheckedSub};
use serde::{Serialize, Serializer};

use super::binary::{bit_len, BinaryExpansion};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    Base,
    /// Already expanded earlier in the same trace.
    Memo,
    Halve,
    GapSplit,
    Suffix011011,
    Alternating,
    Suffix01,
    Suffix011,
    TripleOne,
}

impl Rule {
    pub fn name(self) -> &'static str {
        match self {
            Rule::Base => "base",
            Rule::Memo => "memo",
            Rule::Halve => "halve",
            Rule::GapSplit => "gap-split",
            Rule::Suffix011011 => "suffix-011011",
            Rule::Alternating => "alternating",
            Rule::Suffix01 => "suffix-01",
            Rule::Suffix011 => "suffix-011",
            Rule::TripleOne => "triple-one",
        }
    }

    pub fn is_optional(self) -> bool {
        matches!(self, Rule::Suffix011011 | Rule::Alternating)
    }

    /// Combine child values the way this rule prescribes; `None` on overflow.
    fn combine<T>(self, children: &[T]) -> Option<T>
    where
        T: Clone + From<i64> + CheckedAdd + CheckedSub + CheckedMul,
    {
        let lin = |coeffs: &[i64]| -> Option<T> {
            let mut acc = T::from(0);
            for (&c, x) in coeffs.iter().zip(children) {
                let term = T::from(c.abs()).checked_mul(x)?;
                acc = if c < 0 {
                    acc.checked_sub(&term)?
                } else {
                    acc.checked_add(&term)?
                };
            }
            Some(acc)
        };
        match self {
            Rule::Base | Rule::Memo => None,
            Rule::Halve => Some(children[0].clone()),
            Rule::GapSplit => children[0].checked_mul(&children[1]),
            Rule::Suffix011011 => lin(&[47, -40]),
            Rule::Alternating => lin(&[9, -8]),
            Rule::Suffix01 => lin(&[8]),
            Rule::Suffix011 => lin(&[1, 40]),
            Rule::TripleOne => lin(&[7, -2, -24]),
        }
    }
}

impl Serialize for Rule {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ReduceOptions {
    /// Also try the two shortcut rules `suffix-011011` and `alternating`.
    pub optional_rules: bool,
}

fn base_value(n: u64) -> Option<i64> {
    match n {
        0 => Some(1),
        1 => Some(8),
        3 => Some(48),
        _ => None,
    }
}

/// The rule that applies to `n` (outside `{0, 1, 3}`) and its child arguments.
pub fn choose_rule(n: u64, opts: ReduceOptions) -> (Rule, Vec<u64>) {
    debug_assert!(base_value(n).is_none());
    let len = bit_len(n);
    if n & 1 == 0 {
        return (Rule::Halve, vec![n >> 1]);
    }
    // lowest 00 pair with a 1 somewhere above it
    if let Some(i) = (1..len.saturating_sub(2)).find(|&i| n >> i & 3 == 0) {
        let alpha = n & ((1 << i) - 1);
        let beta = n >> (i + 2);
        return (Rule::GapSplit, vec![alpha, beta]);
    }
    if opts.optional_rules {
        if n & 63 == 0b011011 {
            let x = n >> 6;
            return (Rule::Suffix011011, vec![x << 3 | 0b011, x]);
        }
        if n & 63 == 0b101011 {
            let x = n >> 6;
            return (Rule::Alternating, vec![x << 4 | 0b1011, x << 2 | 0b11]);
        }
        if len >= 5 && n >> (len - 5) == 0b10101 {
            let rest = len - 5;
            let y = n & ((1 << rest) - 1);
            return (Rule::Alternating, vec![0b101 << rest | y, 1 << rest | y]);
        }
    }
    if n & 3 == 1 {
        return (Rule::Suffix01, vec![n >> 2]);
    }
    if n & 7 == 3 {
        let x = n >> 3;
        return (Rule::Suffix011, vec![x << 1 | 1, x]);
    }
    let i = (0..len - 2)
        .find(|&i| n >> i & 7 == 7)
        .expect("an odd n outside {0,1,3} with no 00 gap and no 01/011 suffix ends in 111");
    let high = n >> (i + 3);
    let low = n & ((1 << i) - 1);
    (
        Rule::TripleOne,
        vec![
            high << (i + 2) | 3 << i | low,
            high << (i + 1) | 1 << i | low,
            high << i | low,
        ],
    )
}

fn eval<T>(n: u64, opts: ReduceOptions, memo: &mut HashMap<u64, T>) -> Option<T>
where
    T: Clone + From<i64> + CheckedAdd + CheckedSub + CheckedMul,
{
    if let Some(v) = base_value(n) {
        return Some(T::from(v));
    }
    if let Some(v) = memo.get(&n) {
        return Some(v.clone());
    }
    let (rule, args) = choose_rule(n, opts);
    let children = args
        .iter()
        .map(|&m| eval(m, opts, memo))
        .collect::<Option<Vec<T>>>()?;
    let value = rule.combine(&children)?;
    memo.insert(n, value.clone());
    Some(value)
}

/// One node of a reduction: the rule applied to `n` and the sub-evaluations it used.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReductionTrace {
    pub n: u64,
    pub bits: String,
    pub rule: Rule,
    #[serde(serialize_with = "as_decimal")]
    pub value: BigInt,
    pub children: Vec<ReductionTrace>,
}

fn as_decimal<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

fn build_trace(
    n: u64,
    opts: ReduceOptions,
    memo: &mut HashMap<u64, BigInt>,
    expanded: &mut HashSet<u64>,
) -> ReductionTrace {
    let bits = BinaryExpansion::new(n).to_string();
    if let Some(v) = base_value(n) {
        return ReductionTrace {
            n,
            bits,
            rule: Rule::Base,
            value: BigInt::from(v),
            children: Vec::new(),
        };
    }
    if expanded.contains(&n) {
        return ReductionTrace {
            n,
            bits,
            rule: Rule::Memo,
            value: memo[&n].clone(),
            children: Vec::new(),
        };
    }
    let (rule, args) = choose_rule(n, opts);
    let children: Vec<ReductionTrace> = args
        .iter()
        .map(|&m| build_trace(m, opts, memo, expanded))
        .collect();
    let values: Vec<BigInt> = children.iter().map(|c| c.value.clone()).collect();
    let value = rule
        .combine(&values)
        .expect("arbitrary precision does not overflow");
    memo.insert(n, value.clone());
    expanded.insert(n);
    ReductionTrace {
        n,
        bits,
        rule,
        value,
        children,
    }
}

impl ReductionTrace {
    /// Check every node: base leaves lie in `{0, 1, 3}` with their known
    /// values, memo leaves refer to an earlier expansion with the same value,
    /// and each internal node follows from its children by its rule with
    /// strictly shorter binary expansions.
    pub fn is_consistent(&self, opts: ReduceOptions) -> bool {
        fn walk(t: &ReductionTrace, opts: ReduceOptions, seen: &mut HashMap<u64, BigInt>) -> bool {
            match t.rule {
                Rule::Base => base_value(t.n).is_some_and(|v| t.value == BigInt::from(v)),
                Rule::Memo => seen.get(&t.n) == Some(&t.value),
                rule => {
                    let (expected_rule, args) = choose_rule(t.n, opts);
                    let shape_ok = expected_rule == rule
                        && args.len() == t.children.len()
                        && args
                            .iter()
                            .zip(&t.children)
                            .all(|(&m, c)| c.n == m && bit_len(m) < bit_len(t.n));
                    if !shape_ok || !t.children.iter().all(|c| walk(c, opts, seen)) {
                        return false;
                    }
                    let values: Vec<BigInt> = t.children.iter().map(|c| c.value.clone()).collect();
                    let ok = rule.combine(&values).as_ref() == Some(&t.value);
                    seen.insert(t.n, t.value.clone());
                    ok
                }
            }
        }
        walk(self, opts, &mut HashMap::new())
    }

    /// All leaf arguments (base and memo nodes).
    pub fn leaves(&self) -> Vec<(Rule, u64)> {
        let mut out = Vec::new();
        let mut stack = vec![self];
        while let Some(t) = stack.pop() {
            if t.children.is_empty() {
                out.push((t.rule, t.n));
            }
            stack.extend(t.children.iter().rev());
        }
        out
    }

    /// Rules in pre-order.
    pub fn rules(&self) -> Vec<Rule> {
        let mut out = vec![self.rule];
        for c in &self.children {
            out.extend(c.rules());
        }
        out
    }

    /// Indented text: one line per node with rule, input bits, value and child values.
    pub fn to_text(&self) -> String {
        fn walk(t: &ReductionTrace, depth: usize, out: &mut String) {
            let _ = write!(
                out,
                "{:indent$}{} [{}] = {}",
                "",
                t.rule,
                t.bits,
                t.value,
                indent = 2 * depth
            );
            if !t.children.is_empty() {
                let vals: Vec<String> = t.children.iter().map(|c| c.value.to_string()).collect();
                let _ = write!(out, " <- ({})", vals.join(", "));
            }
            out.push('\n');
            for c in &t.children {
                walk(c, depth + 1, out);
            }
        }
        let mut out = String::new();
        walk(self, 0, &mut out);
        out
    }
}

/// `a_8(n)` by rewriting, with the core rules only.
pub fn reduce_a8(n: u64, want_trace: bool) -> (BigUint, Option<ReductionTrace>) {
    reduce_a8_with(n, want_trace, ReduceOptions::default())
}

pub fn reduce_a8_with(
    n: u64,
    want_trace: bool,
    opts: ReduceOptions,
) -> (BigUint, Option<ReductionTrace>) {
    if want_trace {
        let trace = build_trace(n, opts, &mut HashMap::new(), &mut HashSet::new());
        let value = trace
            .value
            .to_biguint()
            .expect("cardinalities are non-negative");
        return (value, Some(trace));
    }
    (reduce_value(n, opts), None)
}

/// Value only; machine integers first, arbitrary precision on overflow.
pub fn reduce_value(n: u64, opts: ReduceOptions) -> BigUint {
    let value = match eval::<i128>(n, opts, &mut HashMap::new()) {
        Some(v) => BigInt::from(v),
        None => eval::<BigInt>(n, opts, &mut HashMap::new())
            .expect("arbitrary precision does not overflow"),
    };
    value.to_biguint().expect("cardinalities are non-negative")
}
