//! The `residue-signs` command line.
//!
//! Exit codes: 0 when every theorem-backed case matches, 1 when at least one
//! does not, 2 for usage and I/O errors.

pub mod report;

use std::ffi::OsString;
use std::fs;
use std::io::{IsTerminal, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::arith::{enumerate_primitive_roots, jacobi, OddPrime, PrimePower};
use crate::classnum::class_number_neg_p;
use crate::constructions::{
    count_np, cube_perm_with_zero, mul_perm, power_perm, sequence_a, sigma_g_perm, sigma_ij,
    tau_p_perm,
};
use crate::verifier::{
    sweep_cases, verify, verify_all, Params, RootSelection, Summary, SweepSpec, TheoremCase,
    TheoremId, UnitSelection,
};
use crate::{Modulus, Permutation};

pub use report::ReportFormat;

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "residue-signs",
    version,
    about = "Signs of permutations over residue systems"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compute a single value.
    Compute {
        #[command(subcommand)]
        what: Compute,
    },
    /// Verify one theorem instance.
    Verify(VerifyArgs),
    /// Verify a theorem over a parameter range.
    Sweep(SweepArgs),
    /// Merge previously written sweep reports.
    Report(ReportArgs),
}

#[derive(Debug, Subcommand)]
enum Compute {
    /// Sign of a constructed permutation.
    Sign(SignArgs),
    /// Jacobi symbol (a/n).
    Jacobi {
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
        #[arg(long)]
        n: u64,
    },
    /// Class number h(-p) for p = 3 (mod 4).
    Classnum {
        #[arg(long)]
        p: u64,
    },
    /// Primitive roots of p^r.
    Primroots {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        r: u32,
    },
    /// N_p, the inversion count of the folded squares.
    Np {
        #[arg(long)]
        p: u64,
    },
    /// One of the quadratic-residue sequences A0..A4.
    Sequence {
        #[arg(long)]
        i: u8,
        #[arg(long)]
        p: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum Construction {
    Mul,
    Power,
    Cube,
    SigmaIj,
    TauStar,
    SigmaG,
}

#[derive(Debug, Args)]
struct SignArgs {
    #[arg(long)]
    construction: Construction,
    #[arg(long)]
    p: Option<u64>,
    #[arg(long)]
    n: Option<u64>,
    #[arg(long, allow_hyphen_values = true)]
    a: Option<i64>,
    #[arg(long)]
    k: Option<u64>,
    #[arg(long)]
    r: Option<u32>,
    #[arg(long)]
    g: Option<i64>,
    #[arg(long)]
    i: Option<u8>,
    #[arg(long)]
    j: Option<u8>,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long)]
    theorem: String,
    #[arg(long)]
    p: Option<u64>,
    #[arg(long)]
    n: Option<u64>,
    #[arg(long, allow_hyphen_values = true)]
    a: Option<i64>,
    #[arg(long)]
    k: Option<u64>,
    /// Exponent of the prime power; defaults to 1 for primroot-sign/primroot-split.
    #[arg(long)]
    r: Option<u32>,
    #[arg(long)]
    g: Option<u64>,
    #[arg(long, value_enum, default_value_t = ReportFormat::Table)]
    format: ReportFormat,
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[arg(long)]
    theorem: String,
    /// Smallest p (or n for lerch), inclusive.
    #[arg(long, default_value_t = 3)]
    pmin: u64,
    /// Largest p (or n for lerch), inclusive.
    #[arg(long)]
    pmax: u64,
    /// Largest exponent k for kth-power.
    #[arg(long, default_value_t = 100)]
    kmax: u64,
    /// Visit every p^r up to this bound (inclusive); r = 1 only when omitted.
    #[arg(long)]
    rmax_modulus: Option<u64>,
    /// Primitive roots per prime power: `all` or the k smallest.
    #[arg(long, default_value = "8")]
    roots: String,
    /// Units per modulus for lerch: `all` or a deterministic sample of size k.
    #[arg(long, default_value = "all")]
    units: String,
    #[arg(long, value_enum, default_value_t = ReportFormat::Table)]
    format: ReportFormat,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads (0 = one per core).
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

#[derive(Debug, Args)]
struct ReportArgs {
    #[arg(long = "in", num_args = 0..)]
    inputs: Vec<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Malformed {
        path: PathBuf,
        source: report::ParseError,
    },
}

impl From<crate::Error> for CliError {
    fn from(e: crate::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(source: std::io::Error) -> Self {
        CliError::Io {
            path: PathBuf::from("<stdout>"),
            source,
        }
    }
}

type CliResult = Result<i32, CliError>;

fn color_enabled() -> bool {
    std::env::var_os("NO_COLOR").is_none() && std::io::stdout().is_terminal()
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(stdout, "{e}");
                return EXIT_OK;
            }
            let rendered = e.to_string();
            let first = rendered.lines().next().unwrap_or("invalid usage");
            let _ = writeln!(stderr, "{first}");
            return EXIT_USAGE;
        }
    };
    let result = match cli.command {
        Command::Compute { what } => compute(what, stdout),
        Command::Verify(args) => cmd_verify(args, stdout),
        Command::Sweep(args) => cmd_sweep(args, stdout, stderr),
        Command::Report(args) => cmd_report(args, stdout),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn need<T>(v: Option<T>, flag: &str) -> Result<T, CliError> {
    v.ok_or_else(|| CliError::Usage(format!("missing --{flag}")))
}

fn compute(what: Compute, out: &mut dyn Write) -> CliResult {
    match what {
        Compute::Sign(args) => {
            let perm = build_permutation(&args)?;
            let cycles: String = perm
                .cycles_one_based()
                .iter()
                .map(|c| {
                    let inner: Vec<String> = c.iter().map(ToString::to_string).collect();
                    format!("({})", inner.join(" "))
                })
                .collect();
            writeln!(out, "size = {}", perm.len())?;
            writeln!(
                out,
                "cycles = {}",
                if cycles.is_empty() { "()" } else { &cycles }
            )?;
            writeln!(out, "sign = {}", perm.sign())?;
        }
        Compute::Jacobi { a, n } => writeln!(out, "{}", jacobi(a, n)?)?,
        Compute::Classnum { p } => {
            let result = class_number_neg_p(OddPrime::new(p)?)?;
            writeln!(out, "h(-{p}) = {}", result.h)?;
        }
        Compute::Primroots { p, r } => {
            let pp = PrimePower::new(OddPrime::new(p)?, r)?;
            let roots: Vec<String> = enumerate_primitive_roots(&pp)
                .iter()
                .map(ToString::to_string)
                .collect();
            writeln!(out, "{}", roots.join(" "))?;
        }
        Compute::Np { p } => writeln!(out, "N_{p} = {}", count_np(OddPrime::new(p)?))?,
        Compute::Sequence { i, p } => {
            let seq = sequence_a(i, OddPrime::new(p)?)?;
            let entries: Vec<String> = seq.entries().iter().map(ToString::to_string).collect();
            writeln!(out, "{} = {}", seq.label(), entries.join(" "))?;
        }
    }
    Ok(EXIT_OK)
}

fn build_permutation(args: &SignArgs) -> Result<Permutation, CliError> {
    let prime = || -> Result<OddPrime, CliError> { Ok(OddPrime::new(need(args.p, "p")?)?) };
    Ok(match args.construction {
        Construction::Mul => mul_perm(Modulus::new(need(args.n, "n")?)?, need(args.a, "a")?)?,
        Construction::Power => power_perm(prime()?, need(args.k, "k")?)?,
        Construction::Cube => cube_perm_with_zero(prime()?)?,
        Construction::SigmaIj => sigma_ij(need(args.i, "i")?, need(args.j, "j")?, prime()?)?,
        Construction::TauStar => tau_p_perm(prime()?),
        Construction::SigmaG => {
            let pp = PrimePower::new(prime()?, args.r.unwrap_or(1))?;
            sigma_g_perm(&pp, need(args.g, "g")?)?
        }
    })
}

fn parse_theorem(s: &str) -> Result<TheoremId, CliError> {
    s.parse().map_err(|_| {
        let known: Vec<&str> = TheoremId::ALL.iter().map(|t| t.as_str()).collect();
        CliError::Usage(format!(
            "unknown theorem `{s}` (expected one of {})",
            known.join(", ")
        ))
    })
}

fn exit_for(summary: &Summary) -> i32 {
    if summary.has_failure() {
        EXIT_MISMATCH
    } else {
        EXIT_OK
    }
}

fn cmd_verify(args: VerifyArgs, out: &mut dyn Write) -> CliResult {
    let id = parse_theorem(&args.theorem)?;
    let r = match id {
        TheoremId::PrimrootSign | TheoremId::PrimrootSplit => Some(args.r.unwrap_or(1)),
        _ => args.r,
    };
    let case = TheoremCase::new(
        id,
        Params {
            p: args.p,
            r,
            k: args.k,
            g: args.g,
            n: args.n,
            a: args.a,
        },
    );
    let record = verify(&case)?;
    report::write_records(
        &mut *out,
        std::slice::from_ref(&record),
        args.format,
        color_enabled(),
    )?;
    Ok(exit_for(&Summary::from_records([&record])))
}

fn sweep_spec(args: &SweepArgs) -> Result<SweepSpec, CliError> {
    if args.pmin > args.pmax {
        return Err(CliError::Usage(format!(
            "--pmin {} exceeds --pmax {}",
            args.pmin, args.pmax
        )));
    }
    let roots: RootSelection = args.roots.parse()?;
    let units: UnitSelection = args.units.parse()?;
    Ok(SweepSpec {
        pmin: args.pmin,
        pmax: args.pmax,
        kmax: args.kmax,
        rmax_modulus: args.rmax_modulus,
        roots,
        units,
        jobs: args.jobs,
    })
}

fn cmd_sweep(args: SweepArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> CliResult {
    let id = parse_theorem(&args.theorem)?;
    let spec = sweep_spec(&args)?;
    let cases = sweep_cases(id, &spec)?;
    let records = verify_all(&cases, spec.jobs)?;
    let summary = Summary::from_records(&records);
    let line = format!("{id}: {}", report::summary_line(&summary));
    match &args.out {
        Some(path) => {
            let io_err = |source| CliError::Io {
                path: path.clone(),
                source,
            };
            let file = fs::File::create(path).map_err(io_err)?;
            let mut writer = std::io::BufWriter::new(file);
            report::write_records(&mut writer, &records, args.format, false).map_err(io_err)?;
            writer.flush().map_err(io_err)?;
            writeln!(stdout, "{line}")?;
        }
        None => {
            report::write_records(&mut *stdout, &records, args.format, color_enabled())?;
            writeln!(stderr, "{line}")?;
        }
    }
    Ok(exit_for(&summary))
}

fn cmd_report(args: ReportArgs, stdout: &mut dyn Write) -> CliResult {
    let mut records = Vec::new();
    for path in &args.inputs {
        let text = fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.clone(),
            source,
        })?;
        let parsed = report::read_report(path, &text).map_err(|source| CliError::Malformed {
            path: path.clone(),
            source,
        })?;
        records.extend(parsed);
    }
    let text = report::aggregate(&records);
    match &args.out {
        Some(path) => fs::write(path, &text).map_err(|source| CliError::Io {
            path: path.clone(),
            source,
        })?,
        None => write!(stdout, "{text}")?,
    }
    Ok(exit_for(&Summary::from_records(&records)))
}
