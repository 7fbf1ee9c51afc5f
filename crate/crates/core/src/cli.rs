//! Command-line front end.
//!
//! Exit codes: 0 success, 1 failed check or other error, 2 unreadable input,
//! 3 group closure failure (cap exceeded, non-invertible generator),
//! 4 generators at or past the degree bound, 5 no admissible linear forms.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::catalog;
use crate::error::{Error, Result};
use crate::group::{GroupDocument, MatrixGroup, DEFAULT_CAP};
use crate::invariants::{
    algebra_generators, cm_probe, dade_hsop, flatness_check, invariant_basis, lift_hsop_over_z, molien_series,
    secondary_generators, DadeOptions, Hsop,
};
use crate::linalg::{Prime, RingDescriptor};
use crate::poly::Polynomial;
use crate::report::{
    self, ClosureReport, FlatnessJson, GeneratorsReport, HsopInput, HsopReport, InvariantsReport, MolienReport,
    SecondaryReport,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "arithinv", version, about = "Invariant rings of finite matrix groups over Z, Q and F_p")]
pub struct Cli {
    /// Group document (JSON); `-` reads standard input.
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Maximum number of group elements produced by closure.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP, value_parser = clap::value_parser!(usize))]
    pub cap: usize,
    /// Override the document's ring: Z, Q or F<p>.
    #[arg(long, global = true)]
    pub ring: Option<RingDescriptor>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Close the generators into a group and report its order.
    Closure,
    /// Basis of the invariants of one degree.
    Invariants {
        #[arg(long)]
        degree: u32,
    },
    /// Algebra generators up to the degree bound.
    Generators {
        #[arg(long)]
        bound: Option<u32>,
        #[arg(long, default_value_t = 0)]
        extra_sweep: u32,
    },
    /// Homogeneous system of parameters from orbit products, with certificates.
    Hsop {
        /// Primes at which a Z hsop is also certified.
        #[arg(long, value_delimiter = ',')]
        primes: Vec<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Choose forms admissible modulo this prime and lift them to Z.
        #[arg(long)]
        lift: Option<u64>,
    },
    /// Secondary (module) generators over a parameter system.
    Secondary {
        /// JSON file with a `polys` array, e.g. output of `hsop --format json`;
        /// defaults to the orbit-product construction.
        #[arg(long)]
        hsop_file: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Extra degrees for the freeness probe (default: largest parameter degree).
        #[arg(long)]
        slack: Option<u32>,
    },
    /// Truncated Molien series.
    Molien {
        #[arg(long, default_value_t = 10)]
        truncate: u32,
    },
    /// Compare Z, Q and F_p invariants degree by degree.
    Flatness {
        #[arg(long)]
        max_degree: u32,
        #[arg(long, value_delimiter = ',')]
        primes: Vec<u64>,
    },
    /// Run the catalog suite.
    Verify {
        /// Only entries whose name contains this string.
        #[arg(long)]
        filter: Option<String>,
        /// Directory of `<name>.json` / `<name>.expected.json` pairs instead of
        /// the bundled catalog.
        #[arg(long)]
        catalog: Option<PathBuf>,
    },
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) => 2,
        Error::CapExceeded(_) | Error::NotInvertibleOverRing(_) => 3,
        Error::SearchBudgetExceeded | Error::ResidueFieldTooSmall(_) => 5,
        _ => 1,
    }
}

struct Output {
    text: String,
    code: i32,
}

fn emit<T: Serialize + std::fmt::Display>(format: Format, report: &T, code: i32) -> Output {
    let text = match format {
        Format::Json => report::to_json(report),
        Format::Text => report.to_string(),
    };
    Output { text, code }
}

fn read_input(path: &Option<PathBuf>) -> Result<String> {
    let path = path
        .as_ref()
        .ok_or_else(|| Error::Parse("--input is required for this command".into()))?;
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Error::Parse(format!("stdin: {e}")))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
    }
}

fn primes(list: &[u64]) -> Result<Vec<Prime>> {
    list.iter().map(|&p| Prime::new(p)).collect()
}

fn load_group(cli: &Cli) -> Result<(GroupDocument, MatrixGroup)> {
    let doc = GroupDocument::from_json(&read_input(&cli.input)?)?;
    let g = doc.build(cli.ring, cli.cap)?;
    Ok((doc, g))
}

fn execute(cli: &Cli) -> Result<Output> {
    if let Command::Verify { filter, catalog: dir } = &cli.command {
        let entries = match dir {
            Some(d) => catalog::load_dir(d)?,
            None => catalog::bundled(),
        };
        let report = catalog::verify_catalog(&entries, filter.as_deref());
        let code = if report.passed { 0 } else { 1 };
        return Ok(emit(cli.format, &report, code));
    }

    let (doc, g) = load_group(cli)?;
    let opts = |seed: u64, primes: Vec<Prime>| DadeOptions {
        seed,
        primes,
        cap: cli.cap,
        ..DadeOptions::default()
    };
    match &cli.command {
        Command::Closure => Ok(emit(cli.format, &ClosureReport::new(&g, doc.name.clone()), 0)),
        Command::Invariants { degree } => {
            let b = invariant_basis(&g, *degree)?;
            Ok(emit(cli.format, &InvariantsReport::new(&g, &b), 0))
        }
        Command::Generators { bound, extra_sweep } => {
            let s = algebra_generators(&g, *bound, *extra_sweep)?;
            let code = if s.bound_warning() { 4 } else { 0 };
            Ok(emit(cli.format, &GeneratorsReport::new(&g, &s), code))
        }
        Command::Hsop { primes: ps, seed, lift } => {
            let h = match lift {
                Some(p) => lift_hsop_over_z(&g, Prime::new(*p)?, &opts(*seed, Vec::new()))?,
                None => dade_hsop(&g, &opts(*seed, primes(ps)?))?,
            };
            let code = if h.all_passed() { 0 } else { 1 };
            Ok(emit(cli.format, &HsopReport::new(&g, &h), code))
        }
        Command::Secondary { hsop_file, seed, slack } => {
            let h = match hsop_file {
                Some(path) => {
                    let text = std::fs::read_to_string(path)
                        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
                    let input: HsopInput = report::from_json(&text)?;
                    let polys = input
                        .polys
                        .iter()
                        .map(|t| Polynomial::parse(t, g.ring(), g.dimension()))
                        .collect::<Result<Vec<_>>>()?;
                    Hsop::user_supplied(polys)?
                }
                None => dade_hsop(&g, &opts(*seed, Vec::new()))?.hsop,
            };
            let s = secondary_generators(&g, &h)?;
            let probe = cm_probe(&g, &h, &s, *slack)?;
            Ok(emit(cli.format, &SecondaryReport::new(&g, &h, &s, Some(&probe)), 0))
        }
        Command::Molien { truncate } => {
            let m = molien_series(&g, *truncate)?;
            Ok(emit(cli.format, &MolienReport::new(&g, &m), 0))
        }
        Command::Flatness { max_degree, primes: ps } => {
            let r = flatness_check(&g, *max_degree, &primes(ps)?, cli.cap)?;
            Ok(emit(cli.format, &FlatnessJson::new(&r), 0))
        }
        Command::Verify { .. } => unreachable!("handled above"),
    }
}

/// Parses `args` and runs the command, writing the report to `out` and
/// diagnostics to `err`. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                return 2;
            }
            let _ = write!(out, "{e}");
            return 0;
        }
    };
    if cli.cap == 0 {
        let _ = writeln!(err, "error: --cap must be at least 1");
        return 2;
    }
    match execute(&cli) {
        Ok(o) => {
            let _ = out.write_all(o.text.as_bytes());
            if o.code == 4 {
                let _ = writeln!(err, "warning: generators at or past the degree bound");
            }
            o.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}
