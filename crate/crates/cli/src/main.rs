//! `ritt`: order matrices, Jacobi numbers, Ritt division and reduction
//! traces for systems of ordinary differential polynomials.

mod commands;
mod corpus;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use ritt_core::Convention;
use serde_json::json;

use commands::Report;

#[derive(Parser)]
#[command(name = "ritt", version, about = "Jacobi numbers and Ritt reduction for differential systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    options: Options,
}

#[derive(clap::Args, Debug, Clone)]
pub struct Options {
    /// Order convention for `matrix` and `forms`: weak or strong.
    #[arg(long, global = true, default_value = "strong")]
    convention: Convention,
    /// `orderly` or an elimination ranking such as `elim:y;x,z` (blocks from
    /// lowest to highest).
    #[arg(long, global = true)]
    ranking: Option<String>,
    /// Column order, e.g. `x,y,z`; overrides a `vars` line.
    #[arg(long, global = true)]
    vars: Option<String>,
    /// Emit JSON.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Jacobi numbers and maximal transversals under both conventions.
    Jacobi { file: PathBuf },
    /// Order matrix.
    Matrix { file: PathBuf },
    /// One Ritt division with its certificate. Indices start at 0.
    Divide {
        file: PathBuf,
        #[arg(long)]
        dividend: usize,
        /// Repeat for several divisors.
        #[arg(long, required = true)]
        divisor: Vec<usize>,
        /// Divide in this variable only (single divisor).
        #[arg(long)]
        var: Option<String>,
        /// full, partial or proper; proper when `--var` is given, else full.
        #[arg(long)]
        mode: Option<String>,
    },
    /// Characteristic set by the autoreduction loop.
    Autoreduce {
        file: PathBuf,
        #[arg(long, default_value_t = ritt_core::reduction::DEFAULT_MAX_ROUNDS)]
        max_rounds: usize,
    },
    /// Differential dimension and absolute dimension bound.
    Dims {
        file: PathBuf,
        #[arg(long, default_value_t = ritt_core::reduction::DEFAULT_MAX_ROUNDS)]
        max_rounds: usize,
    },
    /// Detect Ritt's forms and normalize into first and second form.
    Forms {
        /// System whose order matrix is examined.
        file: Option<PathBuf>,
        /// A matrix literal instead, e.g. `1,2;-inf,0`.
        #[arg(long, conflicts_with = "file")]
        matrix: Option<String>,
    },
    /// Reduce a linear system to nested triangular shape.
    ReduceLinear { file: PathBuf },
    /// Scripted divisions with the Jacobi number after each.
    Trace {
        file: PathBuf,
        /// Entries `dividend/divisor@var` separated by `;`, e.g. `0/2@x;1/2@x`.
        #[arg(long, required_unless_present = "script_file")]
        script: Option<String>,
        /// Read the script from a file.
        #[arg(long, conflicts_with = "script")]
        script_file: Option<PathBuf>,
        /// full, partial or proper.
        #[arg(long)]
        mode: Option<String>,
    },
    /// Ritt pencil of a pivot equation and some of its fibers.
    Pencil {
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        pivot: usize,
        /// Pivot variable; defaults to the variable of the pivot's leader.
        #[arg(long)]
        var: Option<String>,
        /// Fiber parameters.
        #[arg(long = "at", default_values_t = ["0".to_string(), "1".to_string()])]
        at: Vec<String>,
    },
    /// Run the bundled examples against their golden values.
    Examples,
}

#[derive(Debug)]
pub enum CliError {
    User(String),
    Core(ritt_core::Error),
}

impl From<ritt_core::Error> for CliError {
    fn from(e: ritt_core::Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    fn is_internal(&self) -> bool {
        matches!(self, CliError::Core(e) if e.is_internal())
    }

    fn message(&self) -> String {
        match self {
            CliError::User(m) => m.clone(),
            CliError::Core(e) => e.to_string(),
        }
    }
}

fn run(cli: &Cli) -> Result<(Report, bool), CliError> {
    let opts = &cli.options;
    let report = match &cli.command {
        Command::Jacobi { file } => commands::jacobi(&commands::load(file, opts)?)?,
        Command::Matrix { file } => commands::matrix(&commands::load(file, opts)?, opts.convention)?,
        Command::Divide {
            file,
            dividend,
            divisor,
            var,
            mode,
        } => {
            let system = commands::load(file, opts)?;
            let ranking = commands::ranking(opts, &system)?;
            let args = commands::DivideArgs {
                dividend: *dividend,
                divisors: divisor,
                var: var.as_deref(),
                mode: mode.as_deref(),
            };
            commands::divide(&system, &ranking, args)?
        }
        Command::Autoreduce { file, max_rounds } => {
            let system = commands::load(file, opts)?;
            commands::autoreduce(&system, &commands::ranking(opts, &system)?, *max_rounds)?
        }
        Command::Dims { file, max_rounds } => {
            let system = commands::load(file, opts)?;
            commands::dims(&system, &commands::ranking(opts, &system)?, *max_rounds)?
        }
        Command::Forms { file, matrix } => {
            let m = match (file, matrix) {
                (_, Some(text)) => commands::parse_matrix(text)?,
                (Some(file), None) => commands::order_matrix(&commands::load(file, opts)?, opts.convention)?,
                (None, None) => return Err(CliError::User("give a system file or --matrix".into())),
            };
            commands::forms(&m)?
        }
        Command::ReduceLinear { file } => {
            let system = commands::load(file, opts)?;
            let ranking = opts.ranking.as_ref().map(|_| commands::ranking(opts, &system)).transpose()?;
            commands::reduce_linear(&system, ranking.as_ref())?
        }
        Command::Trace {
            file,
            script,
            script_file,
            mode,
        } => {
            let system = commands::load(file, opts)?;
            let script = match (script, script_file) {
                (Some(s), _) => s.clone(),
                (None, Some(path)) => std::fs::read_to_string(path)
                    .map_err(|e| CliError::User(format!("cannot read {}: {e}", path.display())))?
                    .lines()
                    .map(|l| l.split('#').next().unwrap_or("").trim())
                    .filter(|l| !l.is_empty())
                    .collect::<Vec<_>>()
                    .join(";"),
                (None, None) => return Err(CliError::User("give --script or --script-file".into())),
            };
            commands::trace(&system, &commands::ranking(opts, &system)?, &script, mode.as_deref())?
        }
        Command::Pencil { file, pivot, var, at } => {
            let system = commands::load(file, opts)?;
            commands::pencil(&system, *pivot, var.as_deref(), at, &commands::ranking(opts, &system)?)?
        }
        Command::Examples => {
            let out = corpus::run();
            let report = Report {
                text: out.lines.join("\n"),
                json: out.json,
            };
            return Ok((report, out.all_match));
        }
    };
    Ok((report, true))
}

fn main() -> ExitCode {
    let json_requested = std::env::args().any(|a| a == "--json");
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            if json_requested {
                println!("{}", json!({ "error": { "kind": "usage", "message": e.to_string().trim() } }));
            } else {
                eprint!("{e}");
            }
            return ExitCode::from(1);
        }
    };
    match run(&cli) {
        Ok((report, ok)) => {
            if cli.options.json {
                println!("{}", serde_json::to_string_pretty(&report.json).expect("serializable"));
            } else {
                println!("{}", report.text);
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            let kind = if e.is_internal() { "internal" } else { "user" };
            if cli.options.json {
                println!("{}", json!({ "error": { "kind": kind, "message": e.message() } }));
            } else {
                eprintln!("error: {}", e.message());
            }
            ExitCode::from(if e.is_internal() { 2 } else { 1 })
        }
    }
}
