//! `cocert` command line: argument parsing, dispatch and report output.
//!
//! [`run`] is the whole program minus process I/O, so tests drive it directly.

mod commands;
mod report;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use cocert_core::{CertifiedClaim, Error, Registry};
use serde_json::{json, Value};

pub use report::{
    emit, exit_code, Format, Report, Runtime, EXIT_INCONCLUSIVE, EXIT_REFUTED, EXIT_USAGE, EXIT_VERIFIED,
};

pub const DEFAULT_SEED: u64 = 20061;

#[derive(Parser, Debug)]
#[command(
    name = "cocert",
    version,
    about = "Exact certificates for integer matrix group pairs",
    after_help = "EXIT CODES:\n  0  verified\n  1  some claim REFUTED\n  2  not fully computed (with --strict)\n  3  usage error\n\nEXAMPLES:\n  cocert build gl4-x4px1\n  cocert verify malnormal gl2-golden --radius 4 --exp-bound 20\n  cocert cohomology h1 sl2z-std\n  cocert out factor z4-sl4 --weights 1/2,1/3,1/6"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalArgs {
    /// Registry file (default: the bundled registry)
    #[arg(long, global = true)]
    pub registry: Option<PathBuf>,
    /// Seed for every sampled check
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Worker threads
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    pub jobs: u16,
    /// Exit 2 unless every leaf is COMPUTED
    #[arg(long, global = true)]
    pub strict: bool,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Record wall time in the report (breaks byte reproducibility)
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build a registry pair and check its structural invariants
    Build { id: String },
    /// Malnormality scans and condition reports
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// H^1 and character groups of registry presentations
    #[command(subcommand)]
    Cohomology(CohomologyCommand),
    /// Scalar 2-cocycles on Z^2n ⋊ Sp(2n,Z)
    #[command(subcommand)]
    Cocycle2(CocycleCommand),
    /// Coset actions and finite rigidity
    #[command(subcommand)]
    Dynamics(DynamicsCommand),
    /// Outer automorphism group evaluators
    #[command(subcommand)]
    Out(OutCommand),
}

#[derive(Args, Debug, Clone)]
pub struct VerifyArgs {
    pub id: String,
    /// Word ball radius of the malnormality scan
    #[arg(long)]
    pub radius: Option<usize>,
    /// Exponent bound of the intersection fallback
    #[arg(long)]
    pub exp_bound: Option<u64>,
    /// Largest coset window for the coset clauses
    #[arg(long)]
    pub truncation: Option<usize>,
    /// Word ball radius of the elements tested against the coset windows
    #[arg(long)]
    pub coset_radius: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub enum VerifyCommand {
    Malnormal(VerifyArgs),
    ConditionB(VerifyArgs),
    ConditionD(VerifyArgs),
}

#[derive(Subcommand, Debug)]
pub enum CohomologyCommand {
    /// H^1 with coefficients in Z^n; `sp-structured(n)` runs the Sp(2n,Z) solver
    H1 { presentation: String },
    Char { presentation: String },
}

#[derive(Args, Debug, Clone)]
pub struct CocycleArgs {
    /// Angle as p/q, meaning (p/q)·π
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: String,
    /// Even lattice dimension 2n
    #[arg(long, default_value_t = 2)]
    pub dim: usize,
    /// Random triples for the cocycle identity
    #[arg(long, default_value_t = 200)]
    pub samples: usize,
}

#[derive(Subcommand, Debug)]
pub enum CocycleCommand {
    Check(CocycleArgs),
    Class(CocycleArgs),
}

#[derive(Subcommand, Debug)]
pub enum DynamicsCommand {
    /// Search a word ball for g with g·A ∩ B = ∅
    WeakMixing {
        id: String,
        /// Coset indices, comma separated
        #[arg(long, value_delimiter = ',', required = true)]
        set_a: Vec<usize>,
        #[arg(long, value_delimiter = ',', required = true)]
        set_b: Vec<usize>,
        #[arg(long, default_value_t = 2)]
        radius: usize,
        /// Coset window: ball radius, or lattice bound for point stabilizers
        #[arg(long, default_value_t = 2)]
        truncation: usize,
    },
    /// GL(n,F_2) acting on F_2^n
    FiniteRigidity {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Args, Debug, Clone)]
pub struct OutArgs {
    pub id: String,
    /// Atom weights p/q, comma separated, summing to 1
    #[arg(long)]
    pub weights: String,
    /// `trivial`, `Z/m` or `perm:<images>;<images>...`
    #[arg(long, default_value = "trivial")]
    pub compact_group: String,
    #[arg(long)]
    pub radius: Option<usize>,
    #[arg(long)]
    pub exp_bound: Option<u64>,
    #[arg(long)]
    pub truncation: Option<usize>,
    #[arg(long)]
    pub coset_radius: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub enum OutCommand {
    Relation(OutArgs),
    Factor(OutArgs),
}

/// Everything a process needs to finish: stdout, stderr, exit code.
#[derive(Debug)]
pub struct Outcome {
    pub report: Option<Report>,
    pub stdout: String,
    pub stderr: String,
    pub exit: i32,
}

impl Outcome {
    fn usage(stderr: String) -> Self {
        Outcome {
            report: None,
            stdout: String::new(),
            stderr,
            exit: EXIT_USAGE,
        }
    }
}

/// Parses `argv` (program name first) and runs the command.
pub fn run<I, S>(argv: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let argv: Vec<String> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            return Outcome {
                report: None,
                stdout: e.render().to_string(),
                stderr: String::new(),
                exit: EXIT_VERIFIED,
            }
        }
        Err(e) => return Outcome::usage(e.render().to_string()),
    };
    let owned;
    let registry = match &cli.global.registry {
        Some(path) => match Registry::from_path(path) {
            Ok(r) => {
                owned = r;
                &owned
            }
            Err(e) => return Outcome::usage(format!("error: {e}\n")),
        },
        None => Registry::bundled(),
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.global.jobs.into()).build() {
        Ok(p) => p,
        Err(e) => return Outcome::usage(format!("error: {e}\n")),
    };

    let start = Instant::now();
    let result = pool.install(|| commands::execute(registry, &cli));
    let elapsed = start.elapsed();
    let (parameters, claim) = match result {
        Ok(done) => done,
        Err((parameters, Error::Precondition(msg))) => (
            parameters,
            CertifiedClaim::refuted("the hypotheses of the command hold").with_data(json!({ "error": msg })),
        ),
        Err((_, e)) => return Outcome::usage(format!("error: {e}\n")),
    };

    let mut runtime = Runtime::new(&claim, cli.global.seed, cli.global.jobs.into());
    if cli.global.timing {
        runtime.elapsed_ms = Some(elapsed.as_millis() as u64);
    }
    let report = Report {
        command: argv.iter().skip(1).cloned().collect(),
        parameters,
        claim,
        runtime,
        toolkit_version: cocert_core::VERSION.to_string(),
        registry_version: registry.version.clone(),
    };
    let exit = report.exit_code(cli.global.strict);
    let stderr = format!(
        "{}: {} in {:.3}s, exit {exit}\n",
        report.command.first().map_or("cocert", String::as_str),
        report.claim.status.label(),
        elapsed.as_secs_f64()
    );
    Outcome {
        stdout: emit(&report, cli.global.format),
        report: Some(report),
        stderr,
        exit,
    }
}

pub(crate) type Parameters = BTreeMap<String, Value>;
