//! `aac`: verify the class number congruences, scan ranges with resumable
//! checkpoints, and render reports.

mod checkpoint;
mod record;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use aac_core::congruences::{aac_conjecture_entry, PrimeContext};
use aac_core::error::Error;
use aac_core::gaac::{count_squarefree_n2m1_with, gaac_candidates, gaac_check, SieveMethod, DEFAULT_Z};
use aac_core::modmath::{primes_up_to, PrimeModulus};
use aac_core::precision::{Ext, Precision, EXTENDED_BITS};
use aac_core::quadfield::{
    cf_sqrt, class_number_dirichlet_with, form_class_number, form_class_number_wide, is_discriminant,
    is_fundamental_discriminant, pell_min_solution, regulator, regulator_extended, unit_of_discriminant,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use rayon::prelude::*;
use serde_json::json;

use checkpoint::{CheckpointError, Header};
use record::{render, Format, Record};

const EXIT_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_IO: u8 = 3;

#[derive(Parser)]
#[command(name = "aac", version, about = "Class number congruences for real quadratic fields")]
struct Cli {
    /// Floating-point precision for the analytic class number (f64 or extended).
    #[arg(long, global = true, env = "AAC_PRECISION", default_value = "f64")]
    precision: Precision,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check one congruence at one parameter choice.
    Verify(VerifyArgs),
    /// Check a congruence or conjecture over a range, with optional checkpointing.
    Scan(ScanArgs),
    /// Re-render a checkpoint file.
    Report(ReportArgs),
    /// Continued fraction, Pell solution and fundamental unit for `D`.
    Unit {
        #[arg(long)]
        d: u64,
    },
    /// Class number of discriminant `Δ` by form cycles and, when fundamental, analytically.
    ClassNumber {
        #[arg(long)]
        disc: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Stmt {
    Aac,
    Thm21,
    Thm51,
    Cor53,
    Thm54,
    Eisenstein,
    GenEisenstein,
    Thm56,
    Aac1952,
}

#[derive(Args)]
struct VerifyArgs {
    stmt: Stmt,
    #[arg(long)]
    p: u64,
    #[arg(long)]
    m: Option<u64>,
    #[arg(long)]
    n: Option<u64>,
    /// Positive lift of a non-residue (any size).
    #[arg(long = "M")]
    big_m: Option<BigInt>,
    #[arg(long)]
    r: Option<BigInt>,
    #[arg(long)]
    abar: Option<BigInt>,
    #[arg(long)]
    bbar: Option<BigInt>,
    /// Lifts of the quadratic residues, comma separated.
    #[arg(long, value_delimiter = ',')]
    a: Vec<BigInt>,
    /// Lifts of the non-residues, comma separated.
    #[arg(long, value_delimiter = ',')]
    b: Vec<BigInt>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ScanKind {
    Aac,
    Gaac,
    Eisenstein,
    Density,
}

impl ScanKind {
    fn name(self) -> &'static str {
        match self {
            ScanKind::Aac => "aac",
            ScanKind::Gaac => "gaac",
            ScanKind::Eisenstein => "eisenstein",
            ScanKind::Density => "density",
        }
    }
}

#[derive(Args)]
struct ScanArgs {
    kind: ScanKind,
    #[arg(long)]
    min: Option<u64>,
    #[arg(long)]
    max: Option<u64>,
    /// Bound for the density count.
    #[arg(long)]
    x: Option<u64>,
    /// Cutoff of the partial Euler product for the density count.
    #[arg(long, default_value_t = DEFAULT_Z)]
    z: u64,
    #[arg(long)]
    checkpoint: Option<PathBuf>,
    /// Worker threads (default: all hardware threads).
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Args)]
struct ReportArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long, value_enum, default_value = "table")]
    format: Format,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::MismatchBug(_) | Error::DivisibilityBug(_) => Failure {
                code: EXIT_FAILED,
                message: format!("internal invariant violated: {e}"),
            },
            _ => Failure::usage(format!("precondition failed: {e}")),
        }
    }
}

impl From<CheckpointError> for Failure {
    fn from(e: CheckpointError) -> Self {
        Failure {
            code: EXIT_IO,
            message: e.to_string(),
        }
    }
}

fn need<T: Clone>(v: &Option<T>, flag: &str) -> Result<T, Failure> {
    v.clone().ok_or_else(|| Failure::usage(format!("missing required --{flag}")))
}

fn verify(args: &VerifyArgs) -> Result<Vec<Record>, Failure> {
    let ctx = PrimeContext::for_prime(args.p)?;
    let reports = match args.stmt {
        Stmt::Aac => vec![ctx.verify_aac()?],
        Stmt::Thm21 => {
            if args.a.is_empty() || args.b.is_empty() {
                return Err(Failure::usage("thm21 needs --a and --b"));
            }
            vec![ctx.verify_thm21(&args.a, &args.b)?]
        }
        Stmt::Thm51 => {
            let (r, n) = ctx.verify_thm51(need(&args.m, "m")?)?;
            vec![r, n]
        }
        Stmt::Cor53 => vec![ctx.verify_cor53(need(&args.m, "m")?)?],
        Stmt::Thm54 => {
            let big_m = match (&args.big_m, args.m) {
                (Some(x), _) => x.clone(),
                (None, Some(m)) => BigInt::from(m),
                (None, None) => return Err(Failure::usage("thm54 needs --M")),
            };
            vec![ctx.verify_thm54(&big_m)?]
        }
        Stmt::Eisenstein => vec![ctx.verify_eisenstein()?],
        Stmt::GenEisenstein => vec![ctx.verify_gen_eisenstein(need(&args.m, "m")?)?],
        Stmt::Thm56 => vec![ctx.verify_thm56(&need(&args.r, "r")?, &need(&args.abar, "abar")?, &need(&args.bbar, "bbar")?)?],
        Stmt::Aac1952 => vec![ctx.verify_aac1952(need(&args.n, "n")?)?],
    };
    Ok(reports.into_iter().map(Record::from).collect())
}

fn scan_item(kind: ScanKind, key: u64, z: u64) -> Result<Record, Error> {
    match kind {
        ScanKind::Aac => {
            let p = PrimeModulus::new(key)?;
            let mut rec = Record::from(PrimeContext::new(p)?.verify_aac()?);
            let entry = aac_conjecture_entry(p)?;
            rec.params.insert("u_mod_p".into(), entry.u_mod_p.into());
            if entry.flagged {
                rec.notes.push("p-divides-u".into());
            }
            Ok(rec)
        }
        ScanKind::Eisenstein => Ok(PrimeContext::for_prime(key)?.verify_eisenstein()?.into()),
        ScanKind::Gaac => Ok(gaac_check(key)?.into()),
        ScanKind::Density => Ok(count_squarefree_n2m1_with(key, z, SieveMethod::Sieve)?.into()),
    }
}

fn scan(args: &ScanArgs) -> Result<u8, Failure> {
    let start = Instant::now();
    let (min, max, items): (u64, u64, Vec<u64>) = match args.kind {
        ScanKind::Density => {
            let x = args.x.or(args.max).ok_or_else(|| Failure::usage("density needs --x"))?;
            if x < 2 {
                return Err(Failure::usage("--x must be at least 2"));
            }
            (x, x, vec![x])
        }
        kind => {
            let max = need(&args.max, "max")?;
            let min = args.min.unwrap_or(if kind == ScanKind::Gaac { 3 } else { 5 });
            if min > max {
                return Err(Failure::usage(format!("empty range [{min}, {max}]")));
            }
            let items = match kind {
                ScanKind::Aac => primes_up_to(max).into_iter().filter(|&p| p >= min && p % 4 == 1).collect(),
                ScanKind::Eisenstein => primes_up_to(max).into_iter().filter(|&p| p >= min && p % 8 == 5).collect(),
                _ => gaac_candidates(min, max).collect(),
            };
            (min, max, items)
        }
    };
    let jobs = args
        .jobs
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    if jobs == 0 {
        return Err(Failure::usage("--jobs must be at least 1"));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Failure::usage(e.to_string()))?;

    let header = Header {
        kind: args.kind.name().into(),
        min,
        max,
        version: checkpoint::VERSION,
    };
    let mut records: Vec<Record> = Vec::new();
    let mut writer = None;
    if let Some(path) = &args.checkpoint {
        let loaded = if path.exists() { checkpoint::load(path)? } else { Default::default() };
        if let Some(h) = &loaded.header {
            if h != &header {
                return Err(Failure::usage(format!(
                    "checkpoint {} belongs to scan {} [{}, {}]",
                    path.display(),
                    h.kind,
                    h.min,
                    h.max
                )));
            }
        }
        if !loaded.records.is_empty() {
            eprintln!("resuming after {} records from {}", loaded.records.len(), path.display());
        }
        let w = checkpoint::Writer::open(path, &header, &loaded)?;
        records = loaded.records;
        writer = Some(w);
    }
    let done_through = records.last().map(|r| r.p);
    let remaining: Vec<u64> = items.into_iter().filter(|&k| done_through.is_none_or(|d| k > d)).collect();
    let batch = if args.kind == ScanKind::Gaac { 64 } else { 256 };
    for chunk in remaining.chunks(batch) {
        let out: Result<Vec<Record>, Error> = pool.install(|| chunk.par_iter().map(|&k| scan_item(args.kind, k, args.z)).collect());
        let out = out?;
        if let Some(w) = writer.as_mut() {
            w.append(&out)?;
        }
        records.extend(out);
    }

    let flagged = |r: &Record| r.notes.iter().any(|n| n == "p-divides-u");
    let failed: Vec<&Record> = records.iter().filter(|r| !r.holds || flagged(r)).collect();
    println!(
        "scan {} [{min}, {max}]: counted {}, held {}, failed {}, elapsed {:.2}s",
        args.kind.name(),
        records.len(),
        records.len() - failed.len(),
        failed.len(),
        start.elapsed().as_secs_f64()
    );
    if let Some(r) = records.first().filter(|_| args.kind == ScanKind::Density) {
        let f = |k: &str| r.params.get(k).and_then(|v| v.as_f64()).unwrap_or(f64::NAN);
        println!(
            "count {} of x = {}, ratio {:.4}, partial product {:.4}",
            r.lhs,
            r.p,
            f("ratio"),
            f("partial_constant")
        );
    }
    if !failed.is_empty() {
        let keys: Vec<String> = failed.iter().map(|r| r.p.to_string()).collect();
        println!("failures: {}", keys.join(", "));
    }
    if let Some(w) = &writer {
        println!("checkpoint: {}", w.path().display());
    }
    Ok(if failed.is_empty() { 0 } else { EXIT_FAILED })
}

fn report(args: &ReportArgs) -> Result<u8, Failure> {
    let loaded = checkpoint::load(&args.input)?;
    if loaded.torn_tail {
        eprintln!("warning: ignoring a truncated final line in {}", args.input.display());
    }
    print!("{}", render(&loaded.records, args.format));
    Ok(0)
}

fn unit(d: u64, precision: Precision) -> Result<u8, Failure> {
    let cf = cf_sqrt(d)?;
    let pell = pell_min_solution(d)?;
    let mut out = json!({
        "d": d,
        "cf": { "a0": cf.a0, "period": cf.period, "period_length": cf.period.len() },
        "pell": { "u1": pell.u1.to_string(), "v1": pell.v1.to_string() },
        "pell_regulator": regulator(&pell)?,
    });
    if is_discriminant(d) {
        let u = unit_of_discriminant(d)?;
        let mut entry = json!({
            "t": u.t.to_string(),
            "u": u.u.to_string(),
            "norm": u.norm_sign,
            "regulator": regulator(&u)?,
        });
        if precision == Precision::Extended {
            let mut ext = Ext::new(EXTENDED_BITS);
            let r = regulator_extended(&u, &mut ext)?;
            entry["regulator_extended"] = ext.to_decimal(&r).into();
        }
        out["unit"] = entry;
    }
    println!("{out}");
    Ok(0)
}

fn class_number(disc: u64, precision: Precision) -> Result<u8, Failure> {
    let mut out = json!({
        "disc": disc,
        "forms_proper": form_class_number(disc)?,
        "forms_wide": form_class_number_wide(disc)?,
    });
    if is_fundamental_discriminant(disc) {
        let est = match class_number_dirichlet_with(disc, precision) {
            Err(Error::PrecisionLoss { .. }) if precision == Precision::Double => {
                class_number_dirichlet_with(disc, Precision::Extended)?
            }
            other => other?,
        };
        out["dirichlet"] = json!({
            "h": est.h,
            "raw": est.raw,
            "distance": est.distance,
            "precision": format!("{:?}", est.precision).to_lowercase(),
        });
    }
    println!("{out}");
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Verify(args) => verify(args).map(|recs| {
            print!("{}", render(&recs, args.format));
            if recs.iter().all(|r| r.holds) { 0 } else { EXIT_FAILED }
        }),
        Command::Scan(args) => scan(args),
        Command::Report(args) => report(args),
        Command::Unit { d } => unit(*d, cli.precision),
        Command::ClassNumber { disc } => class_number(*disc, cli.precision),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("aac: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
