//! Command-line surface: argument parsing, dispatch and JSON reports.
//!
//! Every command loads an algebra file, runs its checks and produces a
//! [`RunReport`]. Reports are byte-identical across runs on identical input
//! unless `--timings` is passed. Exit codes: 0 when every check passes, 1
//! when a check fails, 2 on input errors.

pub mod commands;
pub mod report;
pub mod select;

use std::path::PathBuf;

use algebra_spec::{
    build_function_algebra, build_group_algebra_regular, build_kac_paljutkin, build_lee_yang,
    load_spec, to_canonical_json, z2_sigma_z, GroupTable, WhaSpec,
};
use clap::{Args, Parser, Subcommand, ValueEnum};

pub use commands::{
    cmd_info, cmd_mpdo, cmd_validate, cmd_verify, cmd_witness_nogluing, CliError, Context, Suite,
    NO_GLUING_THRESHOLD,
};
pub use report::{spec_fingerprint, Bound, Check, RunReport};
pub use select::{parse_element, random_positive, XSelector};

/// Weak Hopf algebra fixed points, channels and circuits.
#[derive(Debug, Parser)]
#[command(name = "wha", version)]
pub struct Cli {
    /// Command to run.
    #[command(subcommand)]
    pub command: Command,
}

/// Options shared by the commands that read an algebra file.
#[derive(Debug, Args)]
pub struct Common {
    /// Algebra file (JSON).
    #[arg(value_name = "SPEC")]
    pub spec_path: Option<PathBuf>,
    /// Algebra file, alternative to the positional argument.
    #[arg(long = "spec", value_name = "PATH")]
    pub spec_flag: Option<PathBuf>,
    /// Tolerance override for the checks.
    #[arg(long)]
    pub tol: Option<f64>,
    /// Write the report here instead of standard output.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Seed of the random positive element.
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    /// Include wall-clock timings in the report.
    #[arg(long)]
    pub timings: bool,
}

impl Common {
    /// The algebra file from either the positional argument or `--spec`.
    pub fn path(&self) -> Result<&PathBuf, CliError> {
        match (&self.spec_path, &self.spec_flag) {
            (Some(p), None) | (None, Some(p)) => Ok(p),
            (Some(_), Some(_)) => Err(CliError::Input(
                "give the algebra file either positionally or with --spec".into(),
            )),
            (None, None) => Err(CliError::Input("no algebra file given".into())),
        }
    }
}

/// Commands.
#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the weak Hopf axioms and derived antipode properties.
    Validate(Common),
    /// Sectors, fusion rules, dimensions and distinguished elements.
    Info(Common),
    /// Build ρ_N(x); `--out` receives the binary state dump.
    Mpdo {
        #[command(flatten)]
        common: Common,
        /// Generating element: omega, unit, chihat1 or a JSON coefficient file.
        #[arg(long, default_value = "omega")]
        x: XSelector,
        /// Number of sites.
        #[arg(long, default_value_t = 2)]
        n: usize,
    },
    /// Run a verification suite.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Suite to run.
        #[arg(long, value_enum)]
        suite: Suite,
        /// Generating element; each suite has its own defaults.
        #[arg(long)]
        x: Option<XSelector>,
        /// Number of sites for the circuit suite (default 4).
        #[arg(long)]
        n: Option<usize>,
    },
    /// Distance between glued two-site marginals and the four-site marginal.
    WitnessNogluing(Common),
    /// Write a built-in preset as canonical JSON.
    #[command(hide = true)]
    ExportPreset {
        /// Preset name.
        #[arg(value_enum)]
        name: Preset,
        /// Output file; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Built-in presets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Preset {
    /// Group algebra ℂZ₂ in the σ_z representation.
    Z2,
    /// Function algebra ℂ^{Z₂}.
    FunZ2,
    /// Group algebra ℂS₃ in the regular representation.
    S3,
    /// The Kac–Paljutkin algebra H₈.
    H8,
    /// The Lee–Yang weak Hopf algebra.
    LeeYang,
}

impl Preset {
    /// Build the preset.
    pub fn build(self) -> Result<WhaSpec, CliError> {
        Ok(match self {
            Preset::Z2 => z2_sigma_z(),
            Preset::FunZ2 => build_function_algebra(&GroupTable::cyclic(2))?,
            Preset::S3 => build_group_algebra_regular(&GroupTable::symmetric3())?,
            Preset::H8 => build_kac_paljutkin(),
            Preset::LeeYang => build_lee_yang(),
        })
    }
}

/// What a command produced.
#[derive(Debug)]
pub enum Outcome {
    /// A report, and where to write it.
    Report(RunReport, Option<PathBuf>),
    /// Raw text, and where to write it.
    Text(String, Option<PathBuf>),
}

impl Outcome {
    /// Exit code: 0 unless a report has a failing check.
    pub fn exit_code(&self) -> i32 {
        match self {
            Outcome::Report(r, _) if !r.pass => 1,
            _ => 0,
        }
    }
}

fn context(common: &Common, argv: &[String]) -> Result<Context, CliError> {
    Ok(Context {
        command: argv.to_vec(),
        spec: load_spec(common.path()?)?,
        tol: common.tol,
        seed: common.seed,
        timings: common.timings,
    })
}

/// Run a parsed command. `argv` is echoed into the report.
pub fn execute(cli: &Cli, argv: &[String]) -> Result<Outcome, CliError> {
    let report = |r: RunReport, c: &Common| Outcome::Report(r, c.out.clone());
    Ok(match &cli.command {
        Command::Validate(c) => report(cmd_validate(&context(c, argv)?)?, c),
        Command::Info(c) => report(cmd_info(&context(c, argv)?)?, c),
        Command::Mpdo { common, x, n } => {
            let r = cmd_mpdo(&context(common, argv)?, x, *n, common.out.as_deref())?;
            Outcome::Report(r, None)
        }
        Command::Verify {
            common,
            suite,
            x,
            n,
        } => report(
            cmd_verify(&context(common, argv)?, *suite, x.as_ref(), *n)?,
            common,
        ),
        Command::WitnessNogluing(c) => report(cmd_witness_nogluing(&context(c, argv)?)?, c),
        Command::ExportPreset { name, out } => {
            Outcome::Text(to_canonical_json(&name.build()?), out.clone())
        }
    })
}
