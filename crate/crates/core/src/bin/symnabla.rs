//! Command-line front end.
//!
//! Exit status: 0 success, 1 I/O or network failure, 2 usage or domain
//! error, 3 element cap exceeded, 4 verification mismatch.

use std::fs::File;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde_json::json;

use symnabla::chain::{decompose, structural_vector, verify_transfer_to_cap, verify_transfer_with};
use symnabla::oeis::{crosscheck, fetch_bfile, parse_bfile, BFile, FetchOptions, SequenceId};
use symnabla::recurrence::{
    a_with, annihilation_suite, reduce_a8_with, sequence_with, sparse_thetas, structure_a8,
    wm_identity_suite, Method, ReduceOptions,
};
use symnabla::symmetric::{sym_power_with, Limits, DEFAULT_ELEMENT_CAP};
use symnabla::{Error, Result};

#[derive(Parser)]
#[command(
    name = "symnabla",
    version,
    about = "Cardinalities a_k(n) of symmetric powers of {1..k}"
)]
struct Cli {
    /// Largest set the brute-force oracle may materialize.
    #[arg(long, global = true, default_value_t = DEFAULT_ELEMENT_CAP)]
    cap: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Plain,
    Csv,
    Json,
    Bfile,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Auto,
    Brute,
    Fast,
    Matrix,
    Reduce,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Auto => Method::Auto,
            MethodArg::Brute => Method::Brute,
            MethodArg::Fast => Method::Fast,
            MethodArg::Matrix => Method::Matrix,
            MethodArg::Reduce => Method::Reduce,
        }
    }
}

#[derive(Args)]
struct SparseIndex {
    #[arg(long)]
    k: u32,
    /// Sparse index t: the set H_k^∇(2^t - 1).
    #[arg(long)]
    n: u32,
    /// Read --n as the power itself instead of the sparse index.
    #[arg(long)]
    direct: bool,
}

impl SparseIndex {
    fn power(&self) -> Result<u64> {
        if self.direct {
            return Ok(u64::from(self.n));
        }
        if self.n > 63 {
            return Err(Error::Domain(format!("sparse index {} exceeds 63", self.n)));
        }
        Ok(((1u128 << self.n) - 1) as u64)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print a_k(n).
    Term {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        n: u64,
        #[arg(long, value_enum, default_value = "auto")]
        method: MethodArg,
        #[arg(long, value_enum, default_value = "plain")]
        format: Format,
    },
    /// Print a_k(0), ..., a_k(limit).
    Seq {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        limit: u64,
        #[arg(long, value_enum, default_value = "auto")]
        method: MethodArg,
        #[arg(long, value_enum, default_value = "plain")]
        format: Format,
    },
    /// Print theta_0, ..., theta_{count-1}, where theta_t = a_k(2^t - 1).
    Sparse {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        count: usize,
        #[arg(long, value_enum, default_value = "plain")]
        format: Format,
    },
    /// List the chains of H_k^∇(2^n - 1).
    Chains {
        #[command(flatten)]
        index: SparseIndex,
        #[arg(long, value_enum, default_value = "plain")]
        format: Format,
    },
    /// Print the structural vector of H_k^∇(2^n - 1).
    Structure {
        #[command(flatten)]
        index: SparseIndex,
        /// For k = 8, use the matrix word instead of materializing the set.
        #[arg(long)]
        matrix: bool,
        #[arg(long, value_enum, default_value = "plain")]
        format: Format,
    },
    /// Check the transfer matrix against decomposed sets.
    Verify {
        #[arg(long)]
        k: u32,
        /// Largest sparse index to check; without it, run until the element cap.
        #[arg(long)]
        max_n: Option<u32>,
        #[arg(long, value_enum, default_value = "plain")]
        format: Format,
    },
    /// Evaluate a_8(n) with the reduction rules.
    Reduce {
        #[arg(long)]
        n: u64,
        /// Print the derivation tree.
        #[arg(long)]
        trace: bool,
        /// Also use the suffix-011011 and alternating shortcut rules.
        #[arg(long)]
        optional_rules: bool,
        #[arg(long, value_enum, default_value = "plain")]
        format: Format,
    },
    /// Compare a_k (k <= 4) with an OEIS b-file.
    Oeis {
        #[arg(long)]
        k: u32,
        #[arg(long, conflicts_with = "fetch", required_unless_present = "fetch")]
        bfile: Option<PathBuf>,
        /// Download the b-file (cached in $SYMNABLA_CACHE).
        #[arg(long)]
        fetch: bool,
        /// Use only the cache when fetching.
        #[arg(long, requires = "fetch")]
        offline: bool,
        #[arg(long, default_value_t = 63)]
        limit: u64,
        #[arg(long, value_enum, default_value = "plain")]
        format: Format,
    },
    /// Check the matrix identities behind the k = 8 rules and the recurrences.
    Identities {
        #[arg(long, value_enum, default_value = "plain")]
        format: Format,
    },
}

/// Outcome of a command that ran but found a disagreement.
struct Mismatched;

fn unsupported(format: Format, what: &str) -> Error {
    let name = match format {
        Format::Plain => "plain",
        Format::Csv => "csv",
        Format::Json => "json",
        Format::Bfile => "bfile",
    };
    Error::Domain(format!("{what} has no {name} output"))
}

fn print_json(value: &serde_json::Value) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("JSON values serialize")
    );
}

fn bfile_id(k: u32) -> Option<SequenceId> {
    SequenceId::for_k(k).ok()
}

fn run(cli: Cli) -> Result<Option<Mismatched>> {
    let limits = Limits {
        element_cap: cli.cap,
    };
    match cli.command {
        Command::Term {
            k,
            n,
            method,
            format,
        } => {
            let method = Method::from(method);
            let value = a_with(k, n, method, &limits)?;
            match format {
                Format::Plain => println!("{value}"),
                Format::Csv => println!("k,n,method,value\n{k},{n},{},{value}", method.resolve(k)),
                Format::Json => print_json(&json!({
                    "k": k, "n": n, "method": method.resolve(k), "value": value.to_string()
                })),
                Format::Bfile => println!("{n} {value}"),
            }
        }
        Command::Seq {
            k,
            limit,
            method,
            format,
        } => {
            let method = Method::from(method);
            let terms = sequence_with(k, limit, method, &limits)?;
            match format {
                Format::Plain => println!("{}", join(&terms, " ")),
                Format::Csv => {
                    println!("n,value");
                    for (n, v) in terms.iter().enumerate() {
                        println!("{n},{v}");
                    }
                }
                Format::Json => print_json(&json!({
                    "k": k,
                    "method": method.resolve(k),
                    "terms": terms.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
                })),
                Format::Bfile => print!("{}", BFile::from_terms(bfile_id(k), terms)),
            }
        }
        Command::Sparse { k, count, format } => {
            let thetas: Vec<BigUint> = if k == 1 {
                vec![BigUint::from(1u32); count]
            } else {
                sparse_thetas(k, count)?
            };
            match format {
                Format::Plain => println!("{}", join(&thetas, " ")),
                Format::Csv => {
                    println!("t,theta");
                    for (t, v) in thetas.iter().enumerate() {
                        println!("{t},{v}");
                    }
                }
                Format::Json => print_json(&json!({
                    "k": k,
                    "thetas": thetas.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
                })),
                Format::Bfile => return Err(unsupported(format, "sparse")),
            }
        }
        Command::Chains { index, format } => {
            let set = sym_power_with(index.k, index.power()?, &limits)?;
            let chains = decompose(&set)?;
            match format {
                Format::Plain => {
                    for c in &chains {
                        println!("{}", c.to_line(set.basis()));
                    }
                }
                Format::Json => {
                    let records: Vec<_> = chains.iter().map(|c| c.to_record(set.basis())).collect();
                    print_json(&serde_json::to_value(records).expect("records serialize"));
                }
                Format::Csv => {
                    println!("kind,base,length");
                    for c in &chains {
                        let r = c.to_record(set.basis());
                        println!("{},{},{}", r.kind, r.base, r.length);
                    }
                }
                Format::Bfile => return Err(unsupported(format, "chains")),
            }
        }
        Command::Structure {
            index,
            matrix,
            format,
        } => {
            let n = index.power()?;
            let (names, values): (Vec<&str>, Vec<String>) = if matrix {
                if index.k != 8 {
                    return Err(Error::Domain("--matrix is available for k=8 only".into()));
                }
                let v = structure_a8(n);
                (
                    vec!["b", "c", "u", "v", "r"],
                    v.iter().map(|x| x.to_string()).collect(),
                )
            } else {
                let set = sym_power_with(index.k, n, &limits)?;
                let sv = structural_vector(&decompose(&set)?, index.k)?;
                (
                    sv.component_names().to_vec(),
                    sv.components().iter().map(|x| x.to_string()).collect(),
                )
            };
            match format {
                Format::Plain => println!("({})", values.join(",")),
                Format::Csv => println!("{}\n{}", names.join(","), values.join(",")),
                Format::Json => {
                    let mut obj = serde_json::Map::new();
                    obj.insert("k".into(), json!(index.k));
                    obj.insert("n".into(), json!(n));
                    for (name, v) in names.iter().zip(&values) {
                        obj.insert((*name).into(), json!(v));
                    }
                    print_json(&serde_json::Value::Object(obj));
                }
                Format::Bfile => return Err(unsupported(format, "structure")),
            }
        }
        Command::Verify { k, max_n, format } => {
            if matches!(format, Format::Csv | Format::Bfile) {
                return Err(unsupported(format, "verify"));
            }
            let report = match max_n {
                Some(t) => verify_transfer_with(k, t, limits),
                None => verify_transfer_to_cap(k, limits),
            };
            let report = match report {
                Ok(r) => r,
                Err(Error::Verification(m)) => {
                    match format {
                        Format::Json => print_json(&json!({
                            "k": k, "passed": false, "mismatch": m.to_string()
                        })),
                        _ => println!("FAIL {m}"),
                    }
                    return Ok(Some(Mismatched));
                }
                Err(e) => return Err(e),
            };
            for (t, v) in report.vectors.iter().enumerate() {
                log::info!("V_{t} = {v}");
            }
            match format {
                Format::Plain => println!("PASS"),
                Format::Json => print_json(&json!({
                    "k": k,
                    "passed": true,
                    "max_n": report.max_exponent(),
                    "reached_cap": report.reached_cap,
                    "vectors": report.vectors.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
                })),
                _ => return Err(unsupported(format, "verify")),
            }
        }
        Command::Reduce {
            n,
            trace,
            optional_rules,
            format,
        } => {
            let opts = ReduceOptions { optional_rules };
            let (value, tree) = reduce_a8_with(n, trace, opts);
            match format {
                Format::Plain => {
                    if let Some(tree) = &tree {
                        print!("{}", tree.to_text());
                    }
                    println!("{value}");
                }
                Format::Json => print_json(&json!({
                    "n": n,
                    "value": value.to_string(),
                    "trace": tree,
                })),
                Format::Csv => println!("n,value\n{n},{value}"),
                Format::Bfile => println!("{n} {value}"),
            }
        }
        Command::Oeis {
            k,
            bfile,
            fetch,
            offline,
            limit,
            format,
        } => {
            if matches!(format, Format::Csv | Format::Bfile) {
                return Err(unsupported(format, "oeis"));
            }
            let data = match bfile {
                Some(path) => parse_bfile(File::open(&path).map_err(|e| {
                    Error::Io(std::io::Error::new(
                        e.kind(),
                        format!("{}: {e}", path.display()),
                    ))
                })?)?,
                None => {
                    debug_assert!(fetch);
                    let opts = FetchOptions {
                        allow_network: !offline,
                        ..FetchOptions::default()
                    };
                    fetch_bfile(&SequenceId::for_k(k)?, &opts)?
                }
            };
            let report = crosscheck(k, &data, limit)?;
            match format {
                Format::Json => {
                    print_json(&serde_json::to_value(&report).expect("report serializes"))
                }
                _ => println!("{report}"),
            }
            if !report.agrees() {
                return Ok(Some(Mismatched));
            }
        }
        Command::Identities { format } => {
            if matches!(format, Format::Csv | Format::Bfile) {
                return Err(unsupported(format, "identities"));
            }
            let mut report = wm_identity_suite();
            report.extend(annihilation_suite());
            match format {
                Format::Json => {
                    print_json(&serde_json::to_value(&report).expect("report serializes"))
                }
                _ => {
                    for c in &report.checks {
                        println!("{} {}", if c.passed { "PASS" } else { "FAIL" }, c.name);
                    }
                }
            }
            if !report.all_passed() {
                return Ok(Some(Mismatched));
            }
        }
    }
    Ok(None)
}

fn join(values: &[BigUint], sep: &str) -> String {
    values
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(sep)
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Domain(_) | Error::Parse { .. } | Error::Format(_) | Error::Coverage(_) => 2,
        Error::SizeLimit(_) => 3,
        Error::Verification(_) => 4,
        Error::Io(_) | Error::Transport(_) => 1,
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(None) => ExitCode::SUCCESS,
        Ok(Some(Mismatched)) => ExitCode::from(4),
        Err(e) => {
            eprintln!("symnabla: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
