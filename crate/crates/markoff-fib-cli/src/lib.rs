//! Command-line front end for the library: one subcommand per public
//! operation, with text, JSON, and DOT output.
//!
//! Exit codes are part of the interface: 0 means the command succeeded
//! (for verification runs: no mismatches), 1 means a verification run
//! produced mismatches, and 2 means the invocation itself was invalid.

pub mod export;

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::str::FromStr;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::{BigInt, BigUint};
use num_traits::One;
use serde_json::json;

use markoff_fib::k_sequences::{self, Identity};
use markoff_fib::markoff_core::{
    markoff_value, order_triple, tree_enumerate, vieta1, vieta2, vieta3,
};
use markoff_fib::oracle_search::{
    enumerate_markoff, extend_two_fib_paths, two_fib_filter, verify_distribution,
    verify_theorem11_with_shift, SearchReport,
};
use markoff_fib::principal_branches::{alpha, branch_roots, classify, principal_branch};
use markoff_fib::Triple;

const IDENTITY_NAMES: [&str; 6] = ["vajda", "sum", "docagne", "catalan", "simson", "fib_lucas"];

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MoveArg {
    V1,
    V2,
    V3,
}

#[derive(Parser)]
#[command(
    name = "mfib",
    version,
    about = "Markoff m-triples with two k-Fibonacci components: construction, classification, and exhaustive verification"
)]
struct Cli {
    /// Output format (dot applies to `tree` only)
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Write output to this file instead of standard output
    #[arg(long, global = true, value_name = "PATH")]
    output: Option<std::path::PathBuf>,

    /// Worker threads for parallel scans (default: all available cores)
    #[arg(long, global = true, value_name = "N")]
    workers: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the k-Fibonacci number F_k(n)
    Fib {
        #[arg(long)]
        k: u64,
        /// Sequence index (at most 1000000)
        #[arg(long)]
        n: u64,
    },
    /// Print the k-Lucas number L_k(n)
    Lucas {
        #[arg(long)]
        k: u64,
        /// Sequence index (at most 1000000)
        #[arg(long)]
        n: u64,
    },
    /// Print the family constant alpha for (k, r), exactly
    Alpha {
        #[arg(long)]
        k: u64,
        #[arg(long)]
        r: u64,
    },
    /// Evaluate a^2 + b^2 + c^2 - 3abc on a triple
    Markoff {
        /// Triple as three comma-separated integers, e.g. 4,6,72
        #[arg(long)]
        triple: String,
    },
    /// Apply a Vieta move to a triple (v3 reorders and descends)
    Vieta {
        /// Triple as three comma-separated integers
        #[arg(long)]
        triple: String,
        #[arg(long = "move", value_enum)]
        mv: MoveArg,
    },
    /// Walk a principal branch: count v2 steps from family index ell0
    Branch {
        #[arg(long)]
        k: u64,
        #[arg(long)]
        r: u64,
        /// First family index of the walk; the first triple is
        /// (alpha, F_k(ell0), F_k(ell0 + 2r))
        #[arg(long)]
        ell0: u64,
        /// Number of v2 steps (at most 10000)
        #[arg(long)]
        count: u64,
    },
    /// List the branch attachment roots of the (k, r) family
    Roots {
        #[arg(long)]
        k: u64,
        #[arg(long)]
        r: u64,
    },
    /// Enumerate an m-tree fragment under a minimal root
    Tree {
        /// Root triple as three comma-separated integers; must be minimal
        #[arg(long)]
        root: String,
        /// Levels to expand (at most 60)
        #[arg(long)]
        depth: u64,
        /// Prune children whose largest component exceeds this
        #[arg(long, default_value = "1000000000000000000000000000000")]
        max_component: String,
        /// Highlight a principal branch: k,r,label (label as listed by `roots`)
        #[arg(long, value_name = "K,R,LABEL")]
        bold: Option<String>,
    },
    /// Classify the (k, r) family member at index n
    Classify {
        #[arg(long)]
        k: u64,
        #[arg(long)]
        r: u64,
        #[arg(long)]
        n: u64,
    },
    /// List all ordered m-triples with components under a bound
    Enumerate {
        /// The value of the form; non-negative, less than 2^100
        #[arg(long)]
        m: String,
        /// Component bound; at most 2^50
        #[arg(long)]
        bound: String,
        /// Keep only triples with at least two k-Fibonacci components
        #[arg(long)]
        k: Option<u64>,
    },
    /// Cross-check the family enumeration against the completion scan
    #[command(name = "verify-t11")]
    VerifyT11 {
        #[arg(long)]
        k: u64,
        #[arg(long)]
        m_max: u64,
        /// Component bound; at most 2^50
        #[arg(long)]
        bound: String,
        /// Self-test fault: shift every family triple's first component
        #[arg(long, hide = true, default_value_t = 0)]
        perturb_alpha: u64,
    },
    /// Check branch membership and root descent for the (k, r) family
    #[command(name = "verify-t12")]
    VerifyT12 {
        #[arg(long)]
        k: u64,
        #[arg(long)]
        r: u64,
        /// Largest family index to check
        #[arg(long)]
        ell_max: u64,
        /// Walk budget per branch
        #[arg(long)]
        depth: u64,
    },
    /// Check that two-Fibonacci paths stay inside principal branches
    #[command(name = "verify-t13")]
    VerifyT13 {
        #[arg(long)]
        k: u64,
        /// The value of the form; positive, less than 2^100
        #[arg(long)]
        m: String,
        /// Component bound; at most 2^50
        #[arg(long)]
        bound: String,
        /// Ignore maximal paths shorter than this
        #[arg(long, default_value_t = 3)]
        min_len: usize,
    },
    /// Evaluate one identity residual (zero means the identity holds)
    Identities {
        /// Identity name; see --list
        #[arg(long)]
        name: Option<String>,
        #[arg(long)]
        k: Option<u64>,
        /// Comma-separated identity parameters
        #[arg(long, value_delimiter = ',', num_args = 0.., allow_hyphen_values = false)]
        params: Vec<u64>,
        /// List the available identity names
        #[arg(long)]
        list: bool,
    },
}

/// Parses argv and runs one command, returning the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = e.print();
            return code;
        }
    };

    if let Some(n) = cli.workers {
        if n == 0 {
            eprintln!("error: --workers must be at least 1");
            return 2;
        }
        // Ignore the error from a pool that is already running; it can
        // only mean a previous configuration took effect.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }

    let (text, code) = match execute(&cli) {
        Ok(pair) => pair,
        Err(msg) => {
            eprintln!("error: {msg}");
            eprintln!("usage: run 'mfib --help' or 'mfib <command> --help' for details");
            return 2;
        }
    };

    match &cli.output {
        None => {
            print!("{text}");
            code
        }
        Some(path) => match std::fs::write(path, &text) {
            Ok(()) => code,
            Err(e) => {
                eprintln!("error: cannot write {}: {e}", path.display());
                2
            }
        },
    }
}

fn parse_biguint(s: &str, what: &str) -> Result<BigUint, String> {
    BigUint::from_str(s.trim())
        .map_err(|_| format!("{what} must be a non-negative integer, got '{s}'"))
}

fn parse_bigint(s: &str, what: &str) -> Result<BigInt, String> {
    BigInt::from_str(s.trim()).map_err(|_| format!("{what} must be an integer, got '{s}'"))
}

fn parse_triple(s: &str) -> Result<Triple, String> {
    let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
    let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(format!(
            "a triple must be three comma-separated integers, got '{s}'"
        ));
    }
    let a = parse_biguint(parts[0], "triple component")?;
    let b = parse_biguint(parts[1], "triple component")?;
    let c = parse_biguint(parts[2], "triple component")?;
    Ok(Triple::new(a, b, c))
}

fn check_positive(k: u64, what: &str) -> Result<(), String> {
    if k == 0 {
        Err(format!("{what} must be at least 1"))
    } else {
        Ok(())
    }
}

fn check_limit(v: u64, cap: u64, what: &str) -> Result<(), String> {
    if v > cap {
        Err(format!("{what} is limited to {cap}, got {v}"))
    } else {
        Ok(())
    }
}

fn parse_bound(s: &str) -> Result<BigUint, String> {
    let bound = parse_biguint(s, "--bound")?;
    if bound > (BigUint::one() << 50) {
        return Err("--bound is limited to 2^50".into());
    }
    Ok(bound)
}

fn require_dot_free(format: Format) -> Result<(), String> {
    if format == Format::Dot {
        Err("--format dot applies to the tree command only".into())
    } else {
        Ok(())
    }
}

/// The v2 chain of the labeled branch, truncated to the component cap.
fn bold_chain(k: u64, r: u64, label: u64, cap: &BigUint) -> Result<BTreeSet<Triple>, String> {
    let roots = branch_roots(k, r).map_err(|e| e.to_string())?;
    let entry = roots.iter().find(|b| b.ell0 == label).ok_or_else(|| {
        format!(
            "no branch labeled {label} in the (k = {k}, r = {r}) family; \
                 labels are the even values in [2, 2r], plus the odd values when k >= 4"
        )
    })?;
    let mut chain = BTreeSet::new();
    let mut cur = entry.branch_start.clone();
    while cur.components()[2] <= cap {
        chain.insert(cur.clone());
        cur = vieta2(&cur).map_err(|e| e.to_string())?;
    }
    Ok(chain)
}

fn report_output(report: &SearchReport, format: Format) -> (String, i32) {
    let code = if report.clean() { 0 } else { 1 };
    let text = match format {
        Format::Json => export::export_json(&export::report_value(report)),
        _ => {
            let mut s = format!("bound {}\n", report.bound);
            if let Some(m) = &report.m {
                s.push_str(&format!("m {m}\n"));
            }
            s.push_str(&format!("triples {}\n", report.triples.len()));
            for ct in &report.triples {
                s.push_str(&format!("{}\n", classified_line(ct)));
            }
            for mm in &report.mismatches {
                s.push_str(&format!(
                    "mismatch {}: expected {}, but {}\n",
                    mm.triple, mm.expected, mm.actual
                ));
            }
            if report.clean() {
                s.push_str("clean\n");
            } else {
                s.push_str(&format!("{} mismatches\n", report.mismatches.len()));
            }
            s
        }
    };
    (text, code)
}

fn classified_line(ct: &markoff_fib::ClassifiedTriple) -> String {
    let idx: Vec<String> = ct
        .fib_indices
        .iter()
        .map(|i| i.map_or("-".to_string(), |v| v.to_string()))
        .collect();
    format!(
        "{} m={} minimal={} phi_gap={} fib_indices=[{}]",
        ct.triple.as_triple(),
        ct.m,
        if ct.minimal { "yes" } else { "no" },
        ct.phi_gap,
        idx.join(",")
    )
}

fn scalar_output(value: String, format: Format) -> (String, i32) {
    match format {
        Format::Json => (export::export_json(&json!({ "value": value })), 0),
        _ => (format!("{value}\n"), 0),
    }
}

fn execute(cli: &Cli) -> Result<(String, i32), String> {
    match &cli.command {
        Command::Fib { k, n } => {
            require_dot_free(cli.format)?;
            check_positive(*k, "--k")?;
            check_limit(*n, 1_000_000, "--n")?;
            Ok(scalar_output(
                k_sequences::fib(*k, *n).to_string(),
                cli.format,
            ))
        }
        Command::Lucas { k, n } => {
            require_dot_free(cli.format)?;
            check_positive(*k, "--k")?;
            check_limit(*n, 1_000_000, "--n")?;
            Ok(scalar_output(
                k_sequences::lucas(*k, *n).to_string(),
                cli.format,
            ))
        }
        Command::Alpha { k, r } => {
            require_dot_free(cli.format)?;
            check_positive(*k, "--k")?;
            check_positive(*r, "--r")?;
            Ok(scalar_output(alpha(*k, *r).to_string(), cli.format))
        }
        Command::Markoff { triple } => {
            require_dot_free(cli.format)?;
            let t = parse_triple(triple)?;
            Ok(scalar_output(markoff_value(&t).to_string(), cli.format))
        }
        Command::Vieta { triple, mv } => {
            require_dot_free(cli.format)?;
            let t = parse_triple(triple)?;
            let result = match mv {
                MoveArg::V1 => vieta1(&t).map_err(|e| e.to_string())?,
                MoveArg::V2 => vieta2(&t).map_err(|e| e.to_string())?,
                MoveArg::V3 => vieta3(&t).map_err(|e| e.to_string())?.into_triple(),
            };
            match cli.format {
                Format::Json => Ok((export::export_json(&export::triple_value(&result)), 0)),
                _ => Ok((format!("{result}\n"), 0)),
            }
        }
        Command::Branch { k, r, ell0, count } => {
            require_dot_free(cli.format)?;
            check_limit(*count, 10_000, "--count")?;
            let triples = principal_branch(*k, *r, *ell0, *count).map_err(|e| e.to_string())?;
            match cli.format {
                Format::Json => {
                    let list: Vec<_> = triples.iter().map(export::triple_value).collect();
                    Ok((export::export_json(&serde_json::Value::Array(list)), 0))
                }
                _ => {
                    let mut s = String::new();
                    for t in &triples {
                        s.push_str(&format!("{t}\n"));
                    }
                    Ok((s, 0))
                }
            }
        }
        Command::Roots { k, r } => {
            require_dot_free(cli.format)?;
            let roots = branch_roots(*k, *r).map_err(|e| e.to_string())?;
            match cli.format {
                Format::Json => Ok((export::export_json(&export::roots_value(&roots)), 0)),
                _ => {
                    let mut s = String::new();
                    for b in &roots {
                        s.push_str(&format!(
                            "label {}: minimal root {}, branch start {}\n",
                            b.ell0,
                            b.minimal_root.as_triple(),
                            b.branch_start
                        ));
                    }
                    Ok((s, 0))
                }
            }
        }
        Command::Tree {
            root,
            depth,
            max_component,
            bold,
        } => {
            check_limit(*depth, 60, "--depth")?;
            let cap = parse_biguint(max_component, "--max-component")?;
            let t = parse_triple(root)?;
            let ordered = order_triple(&t);
            let nodes = tree_enumerate(&ordered, &cap, *depth).map_err(|e| e.to_string())?;
            let bold_set = match bold {
                None => BTreeSet::new(),
                Some(spec) => {
                    let parts: Vec<&str> = spec.split(',').map(str::trim).collect();
                    if parts.len() != 3 {
                        return Err(format!("--bold takes k,r,label, got '{spec}'"));
                    }
                    let parse = |s: &str, what: &str| -> Result<u64, String> {
                        s.parse::<u64>()
                            .map_err(|_| format!("{what} in --bold must be an integer, got '{s}'"))
                    };
                    let bk = parse(parts[0], "k")?;
                    let br = parse(parts[1], "r")?;
                    let bl = parse(parts[2], "label")?;
                    bold_chain(bk, br, bl, &cap)?
                }
            };
            match cli.format {
                Format::Dot => Ok((export::export_dot(&nodes, &bold_set), 0)),
                Format::Json => Ok((export::export_json(&export::tree_value(&nodes)), 0)),
                Format::Text => {
                    let mut s = String::new();
                    for (i, n) in nodes.iter().enumerate() {
                        let star = if bold_set.contains(n.triple.as_triple()) {
                            " *"
                        } else {
                            ""
                        };
                        match n.parent {
                            None => s.push_str(&format!(
                                "{i}: {} depth {} {}{star}\n",
                                n.triple.as_triple(),
                                n.depth,
                                n.produced_by.label()
                            )),
                            Some(p) => s.push_str(&format!(
                                "{i}: {} depth {} {} parent {p}{star}\n",
                                n.triple.as_triple(),
                                n.depth,
                                n.produced_by.label()
                            )),
                        }
                    }
                    Ok((s, 0))
                }
            }
        }
        Command::Classify { k, r, n } => {
            require_dot_free(cli.format)?;
            let c = classify(*k, *r, *n).map_err(|e| e.to_string())?;
            match cli.format {
                Format::Json => Ok((export::export_json(&export::classification_value(&c)), 0)),
                _ => {
                    let mut s = String::new();
                    s.push_str(&format!("k {}\n", c.k));
                    s.push_str(&format!("r {}\n", c.r));
                    s.push_str(&format!("n {}\n", c.n));
                    s.push_str(&format!("alpha {}\n", c.alpha));
                    s.push_str(&format!("b {}\n", c.b));
                    s.push_str(&format!("c {}\n", c.c));
                    s.push_str(&format!("integer_entries {}\n", c.integer_entries));
                    s.push_str(&format!("ordered {}\n", c.ordered));
                    s.push_str(&format!("minimal {}\n", c.minimal));
                    s.push_str(&format!("m {}\n", export::ratio_string(&c.m)));
                    s.push_str(&format!("m_positive {}\n", c.m_positive));
                    Ok((s, 0))
                }
            }
        }
        Command::Enumerate { m, bound, k } => {
            require_dot_free(cli.format)?;
            let m = parse_bigint(m, "--m")?;
            if m < BigInt::from(0) {
                return Err("--m must be non-negative for enumeration".into());
            }
            if m > (BigInt::one() << 100) {
                return Err("--m is limited to 2^100".into());
            }
            let bound = parse_bound(bound)?;
            let triples = enumerate_markoff(&m, &bound);
            match k {
                None => match cli.format {
                    Format::Json => {
                        let list: Vec<_> = triples
                            .iter()
                            .map(|t| export::triple_value(t.as_triple()))
                            .collect();
                        let v = json!({
                            "bound": bound.to_string(),
                            "m": m.to_string(),
                            "triples": list,
                        });
                        Ok((export::export_json(&v), 0))
                    }
                    _ => {
                        let mut s = String::new();
                        for t in &triples {
                            s.push_str(&format!("{}\n", t.as_triple()));
                        }
                        Ok((s, 0))
                    }
                },
                Some(k) => {
                    check_positive(*k, "--k")?;
                    let kept = two_fib_filter(*k, &triples);
                    match cli.format {
                        Format::Json => {
                            let list: Vec<_> = kept.iter().map(export::classified_value).collect();
                            let v = json!({
                                "bound": bound.to_string(),
                                "k": k,
                                "m": m.to_string(),
                                "triples": list,
                            });
                            Ok((export::export_json(&v), 0))
                        }
                        _ => {
                            let mut s = String::new();
                            for ct in &kept {
                                s.push_str(&format!("{}\n", classified_line(ct)));
                            }
                            Ok((s, 0))
                        }
                    }
                }
            }
        }
        Command::VerifyT11 {
            k,
            m_max,
            bound,
            perturb_alpha,
        } => {
            require_dot_free(cli.format)?;
            check_positive(*k, "--k")?;
            let bound = parse_bound(bound)?;
            let report = verify_theorem11_with_shift(*k, *m_max, &bound, *perturb_alpha);
            Ok(report_output(&report, cli.format))
        }
        Command::VerifyT12 {
            k,
            r,
            ell_max,
            depth,
        } => {
            require_dot_free(cli.format)?;
            check_limit(*ell_max, 10_000, "--ell-max")?;
            check_limit(*depth, 10_000, "--depth")?;
            let report =
                verify_distribution(*k, *r, *ell_max, *depth).map_err(|e| e.to_string())?;
            Ok(report_output(&report, cli.format))
        }
        Command::VerifyT13 {
            k,
            m,
            bound,
            min_len,
        } => {
            require_dot_free(cli.format)?;
            check_positive(*k, "--k")?;
            let m = parse_bigint(m, "--m")?;
            if m < BigInt::one() {
                return Err("--m must be positive for path containment".into());
            }
            if m > (BigInt::one() << 100) {
                return Err("--m is limited to 2^100".into());
            }
            let bound = parse_bound(bound)?;
            let report = extend_two_fib_paths(*k, &m, &bound, *min_len);
            Ok(report_output(&report, cli.format))
        }
        Command::Identities {
            name,
            k,
            params,
            list,
        } => {
            require_dot_free(cli.format)?;
            if *list {
                let text = match cli.format {
                    Format::Json => export::export_json(&json!(IDENTITY_NAMES)),
                    _ => {
                        let mut s = String::new();
                        for n in IDENTITY_NAMES {
                            s.push_str(n);
                            s.push('\n');
                        }
                        s
                    }
                };
                return Ok((text, 0));
            }
            let name = name
                .as_deref()
                .ok_or("pass --name and --k (and --params), or --list")?;
            let k = k.ok_or("pass --k alongside --name")?;
            check_positive(k, "--k")?;
            let id = Identity::parse(name, params).map_err(|e| e.to_string())?;
            let residual = k_sequences::identity_residual(k, &id).map_err(|e| e.to_string())?;
            match cli.format {
                Format::Json => {
                    let v = json!({
                        "identity": id.name(),
                        "k": k,
                        "params": params,
                        "residual": residual.to_string(),
                    });
                    Ok((export::export_json(&v), 0))
                }
                _ => Ok((format!("{residual}\n"), 0)),
            }
        }
    }
}
