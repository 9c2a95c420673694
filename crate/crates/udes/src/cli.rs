//! Command-line surface.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use udes_core::DesignName;

use crate::commands::{self, CliError, ExitCode, Input, Method, Outcome};

#[derive(Debug, Parser)]
#[command(name = "udes", version, about = "Unitary 1- and 2-designs on a qubit")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Numerical tolerance for every verdict.
    #[arg(long, global = true, default_value_t = 1e-10, value_parser = parse_tol)]
    pub tol: f64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Worker threads; results do not depend on this.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub threads: u64,
    /// Reject unknown fields in input files.
    #[arg(long, global = true)]
    pub strict: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Twirl,
    Frame,
    Both,
}

/// What the Monte-Carlo estimate is compared with.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum McTarget {
    /// The closed-form Haar twirl.
    OracleCheck,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FromArg {
    Pauli,
    File,
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// A built-in set: pauli, B0, D, D0, D1, D2.
    #[arg(long, value_parser = parse_builtin, conflicts_with_all = ["file", "path"])]
    pub builtin: Option<DesignName>,
    /// A unitary-set JSON file.
    #[arg(long, conflicts_with = "path")]
    pub file: Option<PathBuf>,
    /// A unitary-set JSON file.
    pub path: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide whether a set is a unitary t-design.
    Verify {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value_t = 2)]
        t: usize,
        #[arg(long, value_enum, default_value_t = MethodArg::Both)]
        method: MethodArg,
    },
    /// Complete a minimal 1-design to a 12-element 2-design.
    Construct {
        #[arg(long, value_enum, default_value_t = FromArg::Pauli)]
        from: FromArg,
        #[arg(long, conflicts_with = "path")]
        file: Option<PathBuf>,
        path: Option<PathBuf>,
        /// Where to write the completed set.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Frame potential and its gap to the Haar value.
    FramePotential {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value_t = 2)]
        t: usize,
    },
    /// Group structure of the SU(2) closure.
    Group {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Polytope and rotation images of the SU(2) closure.
    Geometry {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Monte-Carlo estimate of the Haar twirl against its closed form.
    Mc {
        #[arg(long, default_value_t = 2)]
        t: usize,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = McTarget::OracleCheck)]
        target: McTarget,
    },
    /// The 24 elements of the binary tetrahedral group in every form.
    Table,
}

fn parse_builtin(s: &str) -> Result<DesignName, String> {
    DesignName::parse(s).map_err(|e| e.to_string())
}

fn parse_tol(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err("tolerance must be positive and finite".into())
    }
}

fn load(args: &InputArgs, cli: &Cli) -> Result<Input, CliError> {
    if let Some(name) = args.builtin {
        return Ok(Input::builtin(name));
    }
    match args.file.as_ref().or(args.path.as_ref()) {
        Some(p) => Input::from_path(p, cli.tol, cli.strict),
        None => Err(CliError::new(ExitCode::Parse, "no input: pass --builtin NAME or a file")),
    }
}

/// Everything a run produced, ready to print.
#[derive(Debug, Clone)]
pub struct RunOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run(cli: &Cli) -> RunOutput {
    let threads = cli.threads as usize;
    let mut warnings = Vec::new();
    let result: Result<Outcome, CliError> = (|| match &cli.command {
        Command::Verify { input, t, method } => {
            let input = load(input, cli)?;
            warnings.extend(input.warnings.clone());
            let method = match method {
                MethodArg::Twirl => Method::Twirl,
                MethodArg::Frame => Method::Frame,
                MethodArg::Both => Method::Both,
            };
            commands::verify(&input, *t, method, cli.tol, threads)
        }
        Command::Construct { from, file, path, out } => {
            let input = match (from, file.as_ref().or(path.as_ref())) {
                (FromArg::Pauli, None) => Input::builtin(DesignName::B),
                (_, Some(p)) => Input::from_path(p, cli.tol, cli.strict)?,
                (FromArg::File, None) => {
                    return Err(CliError::new(ExitCode::Parse, "--from file needs a file"));
                }
            };
            warnings.extend(input.warnings.clone());
            commands::construct(&input, out.as_deref(), cli.tol)
        }
        Command::FramePotential { input, t } => {
            let input = load(input, cli)?;
            warnings.extend(input.warnings.clone());
            commands::frame_potential_cmd(&input, *t, cli.tol)
        }
        Command::Group { input } => {
            let input = load(input, cli)?;
            warnings.extend(input.warnings.clone());
            commands::group(&input, cli.tol)
        }
        Command::Geometry { input } => {
            let input = load(input, cli)?;
            warnings.extend(input.warnings.clone());
            commands::geometry(&input, cli.tol)
        }
        Command::Mc { t, samples, seed, target: McTarget::OracleCheck } => commands::mc(*t, *samples, *seed, cli.tol, threads),
        Command::Table => commands::table(cli.tol),
    })();
    let mut stderr: String = warnings.iter().map(|w| format!("warning: {w}\n")).collect();
    match result {
        Ok(outcome) => {
            let stdout = match cli.format {
                Format::Json => outcome.report.to_json(),
                Format::Text => outcome.report.to_text(),
            };
            RunOutput { code: outcome.code.code(), stdout, stderr }
        }
        Err(e) => {
            stderr.push_str(&format!("error: {e}\n"));
            RunOutput { code: e.code.code(), stdout: String::new(), stderr }
        }
    }
}
