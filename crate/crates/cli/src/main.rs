//! `quasimax`: command-line access to the checks, searches and builders.
//!
//! Exit status is 0 on success, 1 when the answer is negative (a pair that
//! is not maximal, an unsupported order, an empty scan), and 2 on usage
//! errors. Reports go to stdout as JSON unless a Latin square is requested.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use quasimax::catalog::{self, CatalogMethod};
use quasimax::charn::{theorem_check_idx, SquareReading};
use quasimax::construct::{base_quasigroup_detailed, build_order_with, plan_order, ConstructError};
use quasimax::field::FiniteField;
use quasimax::ortho::{in_sigma_idx, quadratic_map, Orthomorphism, QuadraticParams};
use quasimax::quasigroup::{assoc_equation_check, quadratic_fast_check, Quasigroup, DEFAULT_WITNESS_CAP};
use quasimax::search::{scan, weil_bound, weil_threshold, Family, VerifyMethod, WeilQuery};

#[derive(Parser)]
#[command(name = "quasimax", version, about = "Maximally nonassociative quasigroups")]
struct Cli {
    /// Worker threads for scans and counts (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether Q_{a,b} over a field is maximally nonassociative.
    CheckPair {
        /// `q`, `p^k` or `p^k/c0,c1,...,1`.
        #[arg(long)]
        field: String,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long, value_enum, default_value_t = Method::Theorem)]
        method: Method,
    },
    /// List every maximal pair of a family.
    Scan {
        #[arg(long)]
        field: String,
        #[arg(long, value_enum, default_value_t = FamilyArg::General)]
        family: FamilyArg,
        #[arg(long, value_enum, default_value_t = Method::Fast)]
        verify: Method,
    },
    /// Build a maximally nonassociative quasigroup of order n.
    Build {
        #[arg(long)]
        n: u64,
        #[arg(long, value_enum, default_value_t = Format::Ls)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Injection for the first product step, as comma-separated indices.
        #[arg(long, value_delimiter = ',')]
        injection: Option<Vec<u32>>,
    },
    /// Show the factorisation used to build order n.
    Plan {
        #[arg(long)]
        n: u64,
    },
    /// Count associative triples of a Latin square read from a file.
    CountTriples {
        /// n lines of n space-separated entries; `-` reads stdin.
        #[arg(long)]
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_WITNESS_CAP)]
        cap: usize,
    },
    /// Evaluate the character-sum guarantee or its threshold.
    Weil {
        #[arg(long)]
        k: u32,
        #[arg(long, value_delimiter = ',', required = true)]
        degrees: Vec<u32>,
        #[arg(long, conflicts_with = "threshold", required_unless_present = "threshold")]
        q: Option<u64>,
        #[arg(long)]
        threshold: bool,
    },
    /// Show and verify the built-in orthomorphisms.
    Catalog {
        #[arg(long)]
        order: Option<u32>,
        #[arg(long, value_enum)]
        verify: Option<CatalogVerify>,
        /// Print the Latin square of the entry of this order.
        #[arg(long, value_name = "N", conflicts_with_all = ["order", "verify"])]
        export_ls: Option<u32>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Theorem,
    Fast,
    Equation,
    Brute,
}

impl From<Method> for VerifyMethod {
    fn from(m: Method) -> Self {
        match m {
            Method::Theorem => VerifyMethod::Theorem,
            Method::Fast => VerifyMethod::Fast,
            Method::Equation => VerifyMethod::Equation,
            Method::Brute => VerifyMethod::Brute,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    General,
    A1ma,
    A4a,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Ls,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum CatalogVerify {
    Brute,
    Fast,
}

/// Failure modes mapped to exit codes.
enum Failure {
    Negative,
    Usage(String),
}

type Outcome = Result<(), Failure>;

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Negative) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn emit_json<T: Serialize>(value: &T) -> Outcome {
    let text = serde_json::to_string_pretty(value).map_err(usage)?;
    println!("{text}");
    Ok(())
}

fn negative_unless(ok: bool) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(Failure::Negative)
    }
}

fn run(command: Command) -> Outcome {
    match command {
        Command::CheckPair { field, a, b, method } => check_pair(&field, &a, &b, method),
        Command::Scan { field, family, verify } => {
            let f = FiniteField::parse(&field).map_err(usage)?;
            let family = match family {
                FamilyArg::General => Family::General,
                FamilyArg::A1ma => Family::OneMinusA,
                FamilyArg::A4a => Family::FourA,
            };
            let result = scan(&f, family, verify.into());
            emit_json(&result)?;
            negative_unless(!result.hits.is_empty())
        }
        Command::Build {
            n,
            format,
            out,
            injection,
        } => build(n, format, out, injection),
        Command::Plan { n } => {
            let plan = plan_order(n);
            emit_json(&plan)?;
            negative_unless(plan.is_supported())
        }
        Command::CountTriples { file, cap } => {
            let text = if file.as_os_str() == "-" {
                std::io::read_to_string(std::io::stdin()).map_err(usage)?
            } else {
                fs::read_to_string(&file).map_err(|e| usage(format!("{}: {e}", file.display())))?
            };
            let q = Quasigroup::from_latin_text(&text).map_err(usage)?;
            let report = q.count_associative_triples_capped(cap);
            emit_json(&report)?;
            negative_unless(report.is_maximal)
        }
        Command::Weil {
            k,
            degrees,
            q,
            threshold,
        } => {
            if threshold {
                emit_json(&weil_threshold(k, &degrees).map_err(usage)?)
            } else {
                let query = WeilQuery::new(k, &degrees, q).map_err(usage)?;
                let report = weil_bound(&query).map_err(usage)?;
                emit_json(&report)?;
                negative_unless(report.holds)
            }
        }
        Command::Catalog {
            order,
            verify,
            export_ls,
        } => run_catalog(order, verify, export_ls),
    }
}

#[derive(Serialize)]
struct PairOutput {
    field: String,
    a: String,
    b: String,
    in_sigma: bool,
    method: VerifyMethod,
    is_maximal: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    count: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    conditions: Option<Vec<bool>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    swapped_conditions: Option<Vec<bool>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<Vec<u32>>,
}

fn check_pair(field: &str, a: &str, b: &str, method: Method) -> Outcome {
    let f = FiniteField::parse(field).map_err(usage)?;
    let a = f.parse_element(a).map_err(usage)?;
    let b = f.parse_element(b).map_err(usage)?;
    // Rejects pairs that do not define an orthomorphism at all.
    let params = QuadraticParams::new(&f, a, b).map_err(usage)?;
    let (ai, bi) = (a.index(), b.index());
    let mut out = PairOutput {
        field: f.spec_string(),
        a: f.label_idx(ai),
        b: f.label_idx(bi),
        in_sigma: in_sigma_idx(&f, ai, bi),
        method: method.into(),
        is_maximal: false,
        count: None,
        conditions: None,
        swapped_conditions: None,
        witness: None,
    };
    match method {
        Method::Theorem => {
            if let Some(r) = theorem_check_idx(&f, ai, bi, SquareReading::default()) {
                out.is_maximal = r.overall;
                out.conditions = Some(r.conditions.to_vec());
                out.swapped_conditions = Some(r.swapped.to_vec());
            }
        }
        Method::Fast => {
            if let Ok(v) = quadratic_fast_check(&params) {
                out.is_maximal = v.maximal;
                out.witness = v.witness.map(|w| w.to_vec());
            }
        }
        Method::Equation => {
            let psi = Orthomorphism::new(f.clone(), quadratic_map(&f, ai, bi)).map_err(usage)?;
            let v = assoc_equation_check(&psi).map_err(usage)?;
            out.is_maximal = v.maximal;
            out.witness = v.witness.map(|(x, y)| vec![x, y]);
        }
        Method::Brute => {
            let psi = Orthomorphism::new(f.clone(), quadratic_map(&f, ai, bi)).map_err(usage)?;
            let r = Quasigroup::from_orthomorphism(&psi).count_associative_triples();
            out.is_maximal = r.is_maximal;
            out.count = Some(r.count);
            out.witness = r.witnesses.first().map(|w| w.to_vec());
        }
    }
    emit_json(&out)?;
    negative_unless(out.is_maximal)
}

#[derive(Serialize)]
struct BuildOutput {
    n: u64,
    factors: Vec<u64>,
    base: String,
    table: Vec<Vec<u32>>,
}

fn build(n: u64, format: Format, out: Option<PathBuf>, injection: Option<Vec<u32>>) -> Outcome {
    let plan = plan_order(n);
    if !plan.is_supported() {
        emit_json(&plan)?;
        return Err(Failure::Negative);
    }
    let q = match build_order_with(n, injection.as_deref()) {
        Ok(q) => q,
        Err(e @ ConstructError::BaseNotFound(_)) => {
            eprintln!("error: {e}");
            return Err(Failure::Negative);
        }
        Err(e) => return Err(usage(e)),
    };
    let text = match format {
        Format::Ls => q.to_latin_text(),
        Format::Json => {
            let base = base_quasigroup_detailed(plan.factors[0]).map_err(usage)?;
            let size = q.order() as usize;
            let output = BuildOutput {
                n,
                factors: plan.factors.clone(),
                base: base.detail,
                table: q.table().chunks(size).map(<[u32]>::to_vec).collect(),
            };
            serde_json::to_string_pretty(&output).map_err(usage)? + "\n"
        }
    };
    match out {
        Some(path) => fs::write(&path, text).map_err(|e| usage(format!("{}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes()).map_err(usage)
        }
    }
}

#[derive(Serialize)]
struct CatalogOutput {
    order: u32,
    group: String,
    cycles: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    report: Option<catalog::EntryReport>,
}

fn run_catalog(order: Option<u32>, verify: Option<CatalogVerify>, export_ls: Option<u32>) -> Outcome {
    if let Some(n) = export_ls {
        let entry = catalog::entry(n).ok_or_else(|| usage(format!("no catalog entry of order {n}")))?;
        let q = entry.quasigroup().map_err(usage)?;
        print!("{}", q.to_latin_text());
        return Ok(());
    }
    let entries: Vec<_> = match order {
        Some(n) => vec![catalog::entry(n).ok_or_else(|| usage(format!("no catalog entry of order {n}")))?],
        None => catalog::load_catalog().iter().collect(),
    };
    let method = verify.map(|v| match v {
        CatalogVerify::Brute => CatalogMethod::Brute,
        CatalogVerify::Fast => CatalogMethod::Equation,
    });
    let out: Vec<CatalogOutput> = entries
        .iter()
        .map(|e| CatalogOutput {
            order: e.order(),
            group: e.group().spec_string(),
            cycles: e.cycles().split_whitespace().collect::<Vec<_>>().join(" "),
            report: method.map(|m| e.verify(m)),
        })
        .collect();
    emit_json(&out)?;
    negative_unless(
        out.iter()
            .all(|o| o.report.as_ref().is_none_or(|r| r.valid && r.canonical && r.maximal)),
    )
}
