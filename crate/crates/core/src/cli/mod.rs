//! Command-line front end: spec files, reports and artifacts.

mod commands;
mod report;
mod spec;

use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::lattice::LatticeError;

pub use commands::{
    construct, coxeter_triviality, descend, fold_case, prop_check, rep, verify, Mode, Options, Outcome,
    DEFAULT_SAMPLES, DEFAULT_SEED, FULL_JACOBI_LIMIT,
};
pub use report::{brackets_json, grading_json, matrix_json, structure_json, vectors_json, Check, Report, SCHEMA};
pub use spec::{bundled_case, case_names, AutomorphismSpec, DatumSpec, DescendSpec, FoldSpec, RepSpec, CASES};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid spec: {0}")]
    Spec(String),
    #[error("unknown case {0:?}")]
    UnknownCase(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

#[derive(Debug, Parser)]
#[command(name = "graded-lie", version, about = "Graded Lie algebras from lattice data, in exact arithmetic")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build the structure table and grading, and export them.
    Construct(CommonArgs),
    /// Run every identity check on a datum.
    Verify(CommonArgs),
    /// Fixed subalgebra of a diagram automorphism, with type identification.
    Fold(CommonArgs),
    /// Galois descent to a rational form.
    Descend(CommonArgs),
    /// Heisenberg representation and its extension to the algebra.
    Rep(CommonArgs),
    /// Pairing and root-of-unity identities.
    PropCheck(CommonArgs),
    /// List bundled cases.
    Cases,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ModeArg {
    Full,
    Sampled,
}

#[derive(Debug, Clone, Copy, Default, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// Bundled case name, e.g. e8-d5 or fold:D4G2.
    #[arg(long, conflicts_with = "spec", required_unless_present = "spec")]
    pub case: Option<String>,
    /// TOML datum spec file.
    #[arg(long)]
    pub spec: Option<PathBuf>,
    /// Artifact output path.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Report output path; stdout when absent.
    #[arg(long)]
    pub report: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub mode: Option<ModeArg>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    pub samples: usize,
    #[arg(long)]
    pub threads: Option<usize>,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

impl CommonArgs {
    fn load(&self) -> Result<DatumSpec, CliError> {
        match (&self.case, &self.spec) {
            (Some(c), _) => DatumSpec::from_case(c),
            (None, Some(p)) => {
                let text = std::fs::read_to_string(p).map_err(|source| CliError::Io { path: p.clone(), source })?;
                DatumSpec::parse(&text)
            }
            (None, None) => Err(CliError::Spec("one of --case or --spec is required".into())),
        }
    }

    fn options(&self) -> Options {
        Options {
            mode: self.mode.map(|m| match m {
                ModeArg::Full => Mode::Full,
                ModeArg::Sampled => Mode::Sampled,
            }),
            seed: self.seed,
            samples: self.samples,
        }
    }
}

/// Writes through a temporary sibling and renames it into place.
pub fn write_atomic(path: &Path, contents: &str) -> Result<(), CliError> {
    let io = |source| CliError::Io { path: path.to_path_buf(), source };
    let tmp = PathBuf::from(format!("{}.tmp-{}", path.display(), std::process::id()));
    let mut f = std::fs::File::create(&tmp).map_err(io)?;
    f.write_all(contents.as_bytes()).map_err(io)?;
    f.sync_all().map_err(io)?;
    std::fs::rename(&tmp, path).map_err(io)
}

fn execute(command: &Command, args: &CommonArgs) -> Result<Outcome, CliError> {
    let spec = args.load()?;
    let opts = args.options();
    match command {
        Command::Construct(_) => construct(&spec),
        Command::Verify(_) => verify(&spec, &opts),
        Command::Fold(_) => fold_case(&spec),
        Command::Descend(_) => descend(&spec),
        Command::Rep(_) => rep(&spec, &opts),
        Command::PropCheck(_) => prop_check(&spec, &opts),
        Command::Cases => unreachable!(),
    }
}

/// Runs a parsed command line and returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    let args = match &cli.command {
        Command::Cases => {
            for name in case_names() {
                println!("{name}");
            }
            return EXIT_PASS;
        }
        Command::Construct(a)
        | Command::Verify(a)
        | Command::Fold(a)
        | Command::Descend(a)
        | Command::Rep(a)
        | Command::PropCheck(a) => a,
    };
    if let Some(n) = args.threads {
        // a second initialisation in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let outcome = match execute(&cli.command, args) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INVALID;
        }
    };
    let text = match args.format {
        Format::Text => outcome.report.to_text(),
        Format::Json => outcome.report.to_json(),
    };
    let written = match &args.report {
        Some(p) => write_atomic(p, &text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
    .and_then(|_| match (&args.out, &outcome.artifact) {
        (Some(p), Some(a)) => write_atomic(p, a),
        _ => Ok(()),
    });
    if let Err(e) = written {
        eprintln!("error: {e}");
        return EXIT_INVALID;
    }
    if outcome.report.passed {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}

pub fn main() -> i32 {
    run(Cli::parse())
}
