//! Command-line surface. Every command prints one JSON document on stdout.
//!
//! Exit codes: 0 success (or realizable), 1 not realizable (or a reproduce
//! case that disagrees with its expectation), 2 bad input, 3 cap or
//! unsupported-regime limits.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::criterion::{check_realizability_with, CheckOptions};
use crate::enumeration::{enumerate_norm_with, DefiniteLattice, EnumerationOptions, DEFAULT_NODE_CAP};
use crate::error::{Error, Result};
use crate::io::{lattice_report, named_lattice, parse_group, parse_lattice, parse_setup, to_json, ErrorReport, ShellReport};
use crate::lattice::IntegerLattice;
use crate::scenarios::{run_scenario, Scenario};

#[derive(Debug, Parser)]
#[command(name = "nielsen", version, about = "Lattice-theoretic realizability checks for groups acting on Enriques manifolds")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Rank, signature, determinant and discriminant form of a lattice.
    Lattice(LatticeArgs),
    /// Vectors of a fixed square in a definite lattice.
    Shell(ShellArgs),
    /// Run the realizability criterion on a setup file and a group file.
    Check(CheckArgs),
    /// Run one of the fixed regression cases.
    Reproduce(ReproduceArgs),
    /// Print the program version.
    Version,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct LatticeSource {
    /// Named lattice: U, E8, M, rank1:K, k3n-x:N, k3n-y:N, kumn-x:N, kumn-y:N:D
    #[arg(long)]
    pub name: Option<String>,
    /// JSON lattice file {"gram": [[...]], "label": "..."}
    #[arg(long)]
    pub file: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct LatticeArgs {
    #[command(flatten)]
    pub source: LatticeSource,
}

#[derive(Debug, Args)]
pub struct Limits {
    /// Maximum number of enumeration nodes
    #[arg(long, default_value_t = DEFAULT_NODE_CAP)]
    pub node_cap: u64,
    /// Worker threads for enumeration (output is identical for any value)
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
}

#[derive(Debug, Args)]
pub struct ShellArgs {
    #[command(flatten)]
    pub source: LatticeSource,
    /// Target square (negative for negative-definite lattices)
    #[arg(long, allow_hyphen_values = true)]
    pub target: i64,
    /// Print only the count
    #[arg(long, default_value_t = false)]
    pub count_only: bool,
    #[command(flatten)]
    pub limits: Limits,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    /// Setup file {"family": "k3n"|"kumn", "n": N, "d": D}
    #[arg(long)]
    pub setup: PathBuf,
    /// Group file {"mode": "direct"|"gamma2m"|"lambday", "generators": [...], "cap": K}
    #[arg(long)]
    pub group: PathBuf,
    #[command(flatten)]
    pub limits: Limits,
}

#[derive(Debug, Args)]
pub struct ReproduceArgs {
    /// nonreal-delta | nonreal-twist | congruence-e8 | kum-translation | central-extension
    pub case: String,
    /// Dimension parameter [default: 3]
    #[arg(long)]
    pub n: Option<i64>,
    /// Deck group order [default: 2 for kum-translation, 4 for central-extension]
    #[arg(long)]
    pub d: Option<i64>,
    /// Kernel order for central-extension [default: 2]
    #[arg(long)]
    pub k: Option<i64>,
    #[command(flatten)]
    pub limits: Limits,
}

/// Exit code and the JSON document for stdout.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
}

fn ok<T: Serialize>(value: &T, code: i32) -> Output {
    Output { code, stdout: to_json(value) }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

fn load_lattice(src: &LatticeSource) -> Result<IntegerLattice> {
    match (&src.name, &src.file) {
        (Some(name), _) => named_lattice(name),
        (None, Some(path)) => parse_lattice(&read(path)?),
        (None, None) => Err(Error::Input("give --name or --file".into())),
    }
}

fn options(l: &Limits) -> CheckOptions {
    CheckOptions { node_cap: l.node_cap, jobs: l.jobs.max(1) }
}

fn execute(cmd: &Command) -> Result<Output> {
    match cmd {
        Command::Lattice(a) => Ok(ok(&lattice_report(&load_lattice(&a.source)?)?, 0)),
        Command::Shell(a) => {
            let l = load_lattice(&a.source)?;
            let definite = DefiniteLattice::from_lattice(&l)?;
            let opts = EnumerationOptions { node_cap: a.limits.node_cap, jobs: a.limits.jobs.max(1), ..Default::default() };
            let shell = enumerate_norm_with(&definite, a.target, &opts)?;
            let report = ShellReport {
                label: l.label().to_string(),
                target: a.target,
                count: shell.len(),
                vectors: (!a.count_only).then(|| shell.vectors.clone()),
            };
            Ok(ok(&report, 0))
        }
        Command::Check(a) => {
            let setup = parse_setup(&read(&a.setup)?)?;
            let spec = parse_group(&read(&a.group)?)?;
            let verdict = check_realizability_with(&setup, &spec, &options(&a.limits))?;
            let code = if verdict.realizable { 0 } else { 1 };
            Ok(ok(&verdict, code))
        }
        Command::Reproduce(a) => {
            let scenario = Scenario::from_id(&a.case, a.n, a.d, a.k)?;
            let report = run_scenario(scenario, &options(&a.limits))?;
            let code = if report.as_expected { 0 } else { 1 };
            Ok(ok(&report, code))
        }
        Command::Version => Ok(ok(
            &serde_json::json!({ "name": env!("CARGO_PKG_NAME"), "version": env!("CARGO_PKG_VERSION") }),
            0,
        )),
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return Output { code: 0, stdout: e.to_string() };
            }
            let err = Error::Input(e.to_string().trim().to_string());
            return ok(&ErrorReport::from(&err), err.exit_code());
        }
    };
    match execute(&cli.command) {
        Ok(out) => out,
        Err(e) => ok(&ErrorReport::from(&e), e.exit_code()),
    }
}
