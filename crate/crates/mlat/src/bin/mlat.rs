//! Command line surface for the mlat library.
//!
//! Exit codes are a stable contract: 0 success, 1 usage/IO/parse error,
//! 2 semantic negative (theorem violation found / no search hits),
//! 3 lattice validation failure.

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use mlat::construct::{
    divisor_lattice_capped, idempotent_chain, localize, localize_at_prime, product_capped,
    quotient, ConstructError, DEFAULT_SIZE_CAP,
};
use mlat::expr::{parse_predicate, ParseError};
use mlat::format::{from_file, to_file, FormatError};
use mlat::lattice::{Elem, MultLattice};
use mlat::predicates::classify;
use mlat::search::{search, shrink, FamilySpec, SearchResult};
use mlat::theorems::{run_check, TheoremId, TheoremReport, CATALOG};

const EXIT_OK: u8 = 0;
const EXIT_USAGE: u8 = 1;
const EXIT_NEGATIVE: u8 = 2;
const EXIT_INVALID: u8 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Tsv,
    Json,
}

#[derive(Parser)]
#[command(name = "mlat", version, about = "Finite multiplicative lattice toolkit")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,

    /// Highest n for degree-indexed predicates.
    #[arg(short = 'n', long = "n-max", global = true, default_value_t = 3)]
    n_max: usize,

    /// Report format for classify / theorems / search.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Tsv)]
    format: OutputFormat,

    /// Worker threads (defaults to the number of cores).
    #[arg(long, global = true)]
    workers: Option<usize>,

    /// Carrier size cap for constructions.
    #[arg(long, global = true, env = "MLAT_SIZE_CAP", default_value_t = DEFAULT_SIZE_CAP)]
    size_cap: usize,
}

#[derive(Subcommand)]
enum Cmd {
    /// Construct a lattice and write it as an MLAT file.
    Build {
        #[command(subcommand)]
        kind: BuildKind,
    },
    /// Check a lattice file against the multiplicative lattice axioms.
    Validate { file: PathBuf },
    /// Classify every proper element of a lattice.
    Classify { file: PathBuf },
    /// Run theorem checks over a lattice.
    Theorems {
        file: PathBuf,
        /// Comma-separated theorem ids, or "all".
        #[arg(long, default_value = "all")]
        ids: String,
    },
    /// Scan a lattice family for elements satisfying a predicate.
    Search {
        /// Family kind: divisor | chain.
        #[arg(long)]
        family: String,
        #[arg(long)]
        min: u64,
        #[arg(long)]
        max: u64,
        /// Predicate expression, e.g. "quasi(2) and not absorbing(2)".
        #[arg(long = "where")]
        predicate: String,
        #[arg(long, default_value_t = 10)]
        limit: usize,
    },
    /// Print the residual (q : a).
    Residual { file: PathBuf, q: String, a: String },
    /// Print the radical of an element.
    Radical { file: PathBuf, a: String },
}

#[derive(Subcommand)]
enum BuildKind {
    /// Divisor lattice of Z_n.
    Divisor {
        n: u64,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Totally ordered lattice of k elements with product = meet.
    Chain {
        k: usize,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Direct product of two or more lattice files.
    Product {
        files: Vec<PathBuf>,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Quotient interval [x, 1] of a lattice file.
    Quotient {
        file: PathBuf,
        /// Label of the cut element x.
        #[arg(long)]
        at: String,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Localization at a prime or at an explicit multiplicatively closed set.
    Localize {
        file: PathBuf,
        /// Label of a prime element p; localizes at {x : x not below p}.
        #[arg(long = "at-prime", conflicts_with = "set")]
        at_prime: Option<String>,
        /// Comma-separated labels of a multiplicatively closed set.
        #[arg(long, value_delimiter = ',')]
        set: Vec<String>,
        #[arg(short, long)]
        out: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help/version are not usage errors
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(workers) = cli.workers {
        if let Err(e) =
            rayon::ThreadPoolBuilder::new().num_threads(workers).build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    }
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

fn exit_code_for(e: &anyhow::Error) -> u8 {
    if let Some(fe) = e.downcast_ref::<FormatError>() {
        return match fe {
            FormatError::Invalid(_) => EXIT_INVALID,
            _ => EXIT_USAGE,
        };
    }
    if let Some(ce) = e.downcast_ref::<ConstructError>() {
        return match ce {
            ConstructError::Invalid(_) => EXIT_INVALID,
            _ => EXIT_USAGE,
        };
    }
    EXIT_USAGE
}

fn run(cli: &Cli) -> anyhow::Result<u8> {
    match &cli.cmd {
        Cmd::Build { kind } => cmd_build(cli, kind),
        Cmd::Validate { file } => cmd_validate(file),
        Cmd::Classify { file } => cmd_classify(cli, file),
        Cmd::Theorems { file, ids } => cmd_theorems(cli, file, ids),
        Cmd::Search { family, min, max, predicate, limit } => {
            cmd_search(cli, family, *min, *max, predicate, *limit)
        }
        Cmd::Residual { file, q, a } => {
            let lat = load(file)?;
            let q = resolve(&lat, q)?;
            let a = resolve(&lat, a)?;
            println!("{}", lat.label(lat.residual(q, a)));
            Ok(EXIT_OK)
        }
        Cmd::Radical { file, a } => {
            let lat = load(file)?;
            let a = resolve(&lat, a)?;
            println!("{}", lat.label(lat.radical(a)));
            Ok(EXIT_OK)
        }
    }
}

fn load(path: &PathBuf) -> anyhow::Result<MultLattice> {
    let bytes = fs::read(path)
        .map_err(|e| anyhow::anyhow!("cannot read {}: {e}", path.display()))?;
    Ok(from_file(&bytes)?)
}

fn resolve(lat: &MultLattice, label: &str) -> anyhow::Result<Elem> {
    lat.elem_by_label(label)
        .ok_or_else(|| anyhow::anyhow!("no element labeled {label:?} in {}", lat.name()))
}

fn cmd_build(cli: &Cli, kind: &BuildKind) -> anyhow::Result<u8> {
    let cap = cli.size_cap;
    let (lat, out) = match kind {
        BuildKind::Divisor { n, out } => (divisor_lattice_capped(*n, cap)?, out),
        BuildKind::Chain { k, out } => (idempotent_chain(*k)?, out),
        BuildKind::Product { files, out } => {
            let factors: Vec<MultLattice> =
                files.iter().map(load).collect::<Result<_, _>>()?;
            (product_capped(&factors, cap)?, out)
        }
        BuildKind::Quotient { file, at, out } => {
            let lat = load(file)?;
            let x = resolve(&lat, at)?;
            (quotient(&lat, x)?, out)
        }
        BuildKind::Localize { file, at_prime, set, out } => {
            let lat = load(file)?;
            let loc = if let Some(p) = at_prime {
                localize_at_prime(&lat, resolve(&lat, p)?)?
            } else if !set.is_empty() {
                let s: Vec<Elem> =
                    set.iter().map(|l| resolve(&lat, l)).collect::<Result<_, _>>()?;
                localize(&lat, &s)?
            } else {
                anyhow::bail!("localize needs --at-prime or --set");
            };
            (loc, out)
        }
    };
    fs::write(out, to_file(&lat))
        .map_err(|e| anyhow::anyhow!("cannot write {}: {e}", out.display()))?;
    println!(
        "{}\tsize={}\tbottom={}\ttop={}",
        lat.name(),
        lat.size(),
        lat.label(lat.bottom()),
        lat.label(lat.top())
    );
    Ok(EXIT_OK)
}

fn cmd_validate(file: &PathBuf) -> anyhow::Result<u8> {
    let bytes = fs::read(file)
        .map_err(|e| anyhow::anyhow!("cannot read {}: {e}", file.display()))?;
    match from_file(&bytes) {
        Ok(lat) => {
            println!("{}: ok ({} elements)", lat.name(), lat.size());
            Ok(EXIT_OK)
        }
        Err(FormatError::Invalid(report)) => {
            println!("invalid: {report}");
            Ok(EXIT_INVALID)
        }
        Err(e) => Err(e.into()),
    }
}

fn cmd_classify(cli: &Cli, file: &PathBuf) -> anyhow::Result<u8> {
    let lat = load(file)?;
    let rows = classify(&lat, cli.n_max)?;
    match cli.format {
        OutputFormat::Json => {
            let doc = serde_json::json!({
                "mlat_report": 1,
                "kind": "classify",
                "lattice": lat.name(),
                "n_max": cli.n_max,
                "rows": rows,
            });
            println!("{}", serde_json::to_string_pretty(&doc)?);
        }
        OutputFormat::Tsv => {
            let mut header = vec![
                "element".to_string(),
                "prime".to_string(),
                "weakly_prime".to_string(),
                "maximal".to_string(),
                "principal".to_string(),
            ];
            for n in 1..=cli.n_max {
                for p in
                    ["absorbing", "weakly_absorbing", "quasi", "weakly_quasi", "strongly_quasi"]
                {
                    header.push(format!("{p}({n})"));
                }
            }
            header.push("witnesses".to_string());
            println!("{}", header.join("\t"));
            for row in &rows {
                let mut cols = vec![
                    row.label.clone(),
                    row.prime.to_string(),
                    row.weakly_prime.to_string(),
                    row.maximal.to_string(),
                    row.principal.to_string(),
                ];
                for n in 0..cli.n_max {
                    cols.push(row.absorbing[n].to_string());
                    cols.push(row.weakly_absorbing[n].to_string());
                    cols.push(row.quasi[n].to_string());
                    cols.push(row.weakly_quasi[n].to_string());
                    cols.push(row.strongly_quasi[n].to_string());
                }
                let mut wit = String::new();
                for (name, tuple) in &row.witnesses {
                    if !wit.is_empty() {
                        wit.push(' ');
                    }
                    let _ = write!(wit, "{name}=({})", tuple.join(","));
                }
                cols.push(wit);
                println!("{}", cols.join("\t"));
            }
        }
    }
    Ok(EXIT_OK)
}

fn parse_ids(ids: &str) -> anyhow::Result<Vec<TheoremId>> {
    if ids.trim().eq_ignore_ascii_case("all") {
        return Ok(CATALOG.to_vec());
    }
    ids.split(',')
        .map(|s| s.trim().parse::<TheoremId>().map_err(Into::into))
        .collect()
}

fn cmd_theorems(cli: &Cli, file: &PathBuf, ids: &str) -> anyhow::Result<u8> {
    let ids = parse_ids(ids)?;
    let lat = load(file)?;
    let reports: Vec<TheoremReport> =
        ids.iter().map(|&id| run_check(&lat, id, cli.n_max)).collect();
    let violated = reports.iter().any(|r| !r.passed());
    match cli.format {
        OutputFormat::Json => {
            let doc = serde_json::json!({
                "mlat_report": 1,
                "kind": "theorems",
                "lattice": lat.name(),
                "n_max": cli.n_max,
                "reports": reports,
            });
            println!("{}", serde_json::to_string_pretty(&doc)?);
        }
        OutputFormat::Tsv => {
            println!("id\tstatus\tchecked\tviolations\tnote");
            for r in &reports {
                let status = if !r.passed() {
                    "FAIL"
                } else if r.skipped.is_some() {
                    "skip"
                } else {
                    "pass"
                };
                let note = r
                    .skipped
                    .clone()
                    .or_else(|| r.note.clone())
                    .unwrap_or_default();
                println!("{}\t{status}\t{}\t{}\t{note}", r.id, r.checked, r.violations.len());
                for v in &r.violations {
                    eprintln!("  violation [{}] {}: {}", r.id, v.assignment, v.clause);
                }
            }
        }
    }
    Ok(if violated { EXIT_NEGATIVE } else { EXIT_OK })
}

fn cmd_search(
    cli: &Cli,
    family: &str,
    min: u64,
    max: u64,
    predicate: &str,
    limit: usize,
) -> anyhow::Result<u8> {
    let spec = match family {
        "divisor" => FamilySpec::divisor(min, max),
        "chain" => FamilySpec::chain(min, max),
        other => anyhow::bail!("unknown family {other:?} (expected divisor | chain)"),
    };
    let spec = FamilySpec { size_cap: cli.size_cap, ..spec };
    let expr = match parse_predicate(predicate) {
        Ok(e) => e,
        Err(e) => {
            print_caret_diagnostic(predicate, &e);
            return Ok(EXIT_USAGE);
        }
    };
    let hits = search(&spec, &expr, limit)?;
    let shrunk: Vec<SearchResult> =
        hits.iter().map(|h| shrink(h, &spec, &expr)).collect::<Result<_, _>>()?;
    match cli.format {
        OutputFormat::Json => {
            let doc = serde_json::json!({
                "mlat_report": 1,
                "kind": "search",
                "family": family,
                "predicate": predicate,
                "hits": hits,
                "shrunk": shrunk,
            });
            println!("{}", serde_json::to_string_pretty(&doc)?);
        }
        OutputFormat::Tsv => {
            println!("param\telement\tshrunk_param\tatoms");
            for (h, s) in hits.iter().zip(&shrunk) {
                let atoms = h
                    .atoms
                    .iter()
                    .map(|(k, v)| format!("{k}={v}"))
                    .collect::<Vec<_>>()
                    .join(",");
                println!("{}\t{}\t{}\t{atoms}", h.param, h.element, s.param);
            }
        }
    }
    Ok(if hits.is_empty() { EXIT_NEGATIVE } else { EXIT_OK })
}

fn print_caret_diagnostic(text: &str, e: &ParseError) {
    eprintln!("error: {e}");
    eprintln!("  {text}");
    eprintln!("  {}^", " ".repeat(e.offset()));
}
