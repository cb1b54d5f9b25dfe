//! OEIS b-files: parsing, serialization, fetching and cross-checking the
//! computed sequences `A_1 .. A_4` against them.
//!
//! A b-file is plain text with one `index value` pair per line. Lines whose
//! first non-blank character is `#` are comments and blank lines are ignored.
//! A leading comment of the form `# A001316` names the sequence.

use std::fmt;
use std::io::{BufRead, BufReader, Read};
use std::path::PathBuf;
use std::str::FromStr;
use std::time::Duration;

use num_bigint::{BigInt, BigUint};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::recurrence::{a, Method};

/// An OEIS A-number such as `A001316`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct SequenceId(String);

impl SequenceId {
    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// The six digits after the `A`.
    pub fn digits(&self) -> &str {
        &self.0[1..]
    }

    /// The OEIS sequence computed by `a_k` for `k` in `1..=4`.
    pub fn for_k(k: u32) -> Result<Self> {
        let id = match k {
            1 => "A000012",
            2 => "A001316",
            3 => "A048883",
            4 => "A253064",
            _ => {
                return Err(Error::domain(format!(
                    "only k in 1..=4 has an OEIS entry, got k={k}"
                )))
            }
        };
        Ok(SequenceId(id.to_string()))
    }
}

impl FromStr for SequenceId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let ok = s.len() == 7 && s.starts_with('A') && s[1..].bytes().all(|b| b.is_ascii_digit());
        if !ok {
            return Err(Error::domain(format!(
                "{s:?} is not an OEIS id (A followed by six digits)"
            )));
        }
        Ok(SequenceId(s.to_string()))
    }
}

impl fmt::Display for SequenceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BFile {
    pub sequence_id: Option<SequenceId>,
    /// Strictly increasing indices with their values.
    pub entries: Vec<(i64, BigInt)>,
}

impl BFile {
    /// Build from `(index, value)` pairs; indices must strictly increase.
    pub fn new(
        sequence_id: Option<SequenceId>,
        entries: impl IntoIterator<Item = (i64, BigInt)>,
    ) -> Result<Self> {
        let entries: Vec<(i64, BigInt)> = entries.into_iter().collect();
        if let Some(w) = entries.windows(2).find(|w| w[0].0 >= w[1].0) {
            return Err(Error::Format(format!(
                "indices must strictly increase, found {} then {}",
                w[0].0, w[1].0
            )));
        }
        Ok(BFile {
            sequence_id,
            entries,
        })
    }

    /// Terms `a(0), a(1), ...` of a sequence starting at index 0.
    pub fn from_terms(
        sequence_id: Option<SequenceId>,
        terms: impl IntoIterator<Item = BigUint>,
    ) -> Self {
        BFile {
            sequence_id,
            entries: terms
                .into_iter()
                .enumerate()
                .map(|(i, v)| (i as i64, BigInt::from(v)))
                .collect(),
        }
    }

    pub fn get(&self, index: i64) -> Option<&BigInt> {
        self.entries
            .binary_search_by_key(&index, |e| e.0)
            .ok()
            .map(|i| &self.entries[i].1)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// b-file text that [`parse_bfile`] reads back to an equal value.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if let Some(id) = &self.sequence_id {
            out.push_str(&format!("# {id}\n"));
        }
        for (i, v) in &self.entries {
            out.push_str(&format!("{i} {v}\n"));
        }
        out
    }
}

impl fmt::Display for BFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

fn parse_int<T: FromStr>(field: &str, what: &str, line: usize) -> Result<T> {
    field.parse().map_err(|_| Error::Parse {
        line,
        message: format!("{what} {field:?} is not an integer"),
    })
}

pub fn parse_bfile(reader: impl Read) -> Result<BFile> {
    let mut id = None;
    let mut entries: Vec<(i64, BigInt)> = Vec::new();
    for (i, line) in BufReader::new(reader).lines().enumerate() {
        let lineno = i + 1;
        let line = line?;
        let text = line.trim();
        if text.is_empty() {
            continue;
        }
        if let Some(comment) = text.strip_prefix('#') {
            if id.is_none() && entries.is_empty() {
                id = comment
                    .split_whitespace()
                    .next()
                    .and_then(|w| w.parse::<SequenceId>().ok());
            }
            continue;
        }
        let mut fields = text.split_whitespace();
        let (Some(index), Some(value)) = (fields.next(), fields.next()) else {
            return Err(Error::Parse {
                line: lineno,
                message: "expected two fields: index value".to_string(),
            });
        };
        if let Some(extra) = fields.next() {
            if !extra.starts_with('#') {
                return Err(Error::Parse {
                    line: lineno,
                    message: format!("unexpected third field {extra:?}"),
                });
            }
        }
        let index: i64 = parse_int(index, "index", lineno)?;
        let value: BigInt = parse_int(value, "value", lineno)?;
        if let Some(&(prev, _)) = entries.last() {
            if index <= prev {
                return Err(Error::Format(format!(
                    "line {lineno}: index {index} does not increase (previous {prev})"
                )));
            }
        }
        entries.push((index, value));
    }
    Ok(BFile {
        sequence_id: id,
        entries,
    })
}

/// First disagreement between a b-file and the computed sequence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BFileMismatch {
    pub n: u64,
    #[serde(serialize_with = "as_decimal")]
    pub expected: BigInt,
    #[serde(serialize_with = "as_decimal")]
    pub computed: BigInt,
}

fn as_decimal<S: serde::Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrosscheckReport {
    pub k: u32,
    pub sequence_id: Option<SequenceId>,
    pub limit: u64,
    pub first_mismatch: Option<BFileMismatch>,
}

impl CrosscheckReport {
    pub fn agrees(&self) -> bool {
        self.first_mismatch.is_none()
    }
}

impl fmt::Display for CrosscheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.first_mismatch {
            None => write!(f, "AGREE 0..{}", self.limit),
            Some(m) => write!(
                f,
                "MISMATCH n={}: b-file {}, computed {}",
                m.n, m.expected, m.computed
            ),
        }
    }
}

/// Compare `a_k(n)` with the b-file for `n = 0..=limit`, `k` in `1..=4`.
pub fn crosscheck(k: u32, bfile: &BFile, limit: u64) -> Result<CrosscheckReport> {
    let expected_id = SequenceId::for_k(k)?;
    if let Some(id) = &bfile.sequence_id {
        if *id != expected_id {
            log::warn!("b-file is labelled {id}, but a_{k} is {expected_id}");
        }
    }
    let mut first_mismatch = None;
    for n in 0..=limit {
        let index = i64::try_from(n).map_err(|_| Error::domain("limit exceeds i64"))?;
        let expected = bfile.get(index).ok_or_else(|| {
            Error::Coverage(format!(
                "b-file has no entry for n={n}; it must cover 0..={limit}"
            ))
        })?;
        let computed = BigInt::from(a(k, n, Method::Auto)?);
        if first_mismatch.is_none() && computed != *expected {
            first_mismatch = Some(BFileMismatch {
                n,
                expected: expected.clone(),
                computed,
            });
        }
    }
    Ok(CrosscheckReport {
        k,
        sequence_id: bfile.sequence_id.clone(),
        limit,
        first_mismatch,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FetchOptions {
    pub allow_network: bool,
    pub cache_dir: PathBuf,
    pub timeout: Duration,
}

impl Default for FetchOptions {
    /// Network allowed; cache in `$SYMNABLA_CACHE` or a temp subdirectory.
    fn default() -> Self {
        let cache_dir = std::env::var_os("SYMNABLA_CACHE")
            .map(PathBuf::from)
            .unwrap_or_else(|| std::env::temp_dir().join("symnabla-cache"));
        FetchOptions {
            allow_network: true,
            cache_dir,
            timeout: Duration::from_secs(30),
        }
    }
}

pub fn bfile_url(id: &SequenceId) -> String {
    format!("https://oeis.org/{id}/b{}.txt", id.digits())
}

/// The b-file of `id`, from the cache when present, else over HTTPS.
pub fn fetch_bfile(id: &SequenceId, opts: &FetchOptions) -> Result<BFile> {
    let path = opts.cache_dir.join(format!("b{}.txt", id.digits()));
    if let Ok(text) = std::fs::read_to_string(&path) {
        log::debug!("using cached {}", path.display());
        return with_id(parse_bfile(text.as_bytes())?, id);
    }
    if !opts.allow_network {
        return Err(Error::Transport(format!(
            "{id} is not cached in {} and network access is disabled; pass a local b-file instead",
            opts.cache_dir.display()
        )));
    }
    let url = bfile_url(id);
    log::info!("fetching {url}");
    let agent: ureq::Agent = ureq::Agent::config_builder()
        .timeout_global(Some(opts.timeout))
        .build()
        .into();
    let text = agent
        .get(&url)
        .call()
        .and_then(|mut resp| resp.body_mut().read_to_string())
        .map_err(|e| Error::Transport(format!("GET {url}: {e}")))?;
    let bfile = with_id(parse_bfile(text.as_bytes())?, id)?;
    if let Err(e) =
        std::fs::create_dir_all(&opts.cache_dir).and_then(|_| std::fs::write(&path, &text))
    {
        log::warn!("could not cache {}: {e}", path.display());
    }
    Ok(bfile)
}

fn with_id(mut bfile: BFile, id: &SequenceId) -> Result<BFile> {
    if bfile.is_empty() {
        return Err(Error::Format(format!("b-file for {id} has no entries")));
    }
    bfile.sequence_id = Some(id.clone());
    Ok(bfile)
}
