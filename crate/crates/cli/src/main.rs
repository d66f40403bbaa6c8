//! `dglift`: run the engine's checks on instance files.

mod commands;
mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use dglift::exactlin::Field;
use dglift::instance::{parse_field, parse_instance_file, Instance, ParseOptions};

#[derive(Parser)]
#[command(
    name = "dglift",
    version,
    about = "Naive liftability of semifree DG modules"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Scalar field: `Q`, `Fp` or `Fp:<p>`.
    #[arg(long, value_parser = parse_field)]
    field: Option<Field>,
    /// Highest algebra degree materialised.
    #[arg(long)]
    max_degree: Option<i64>,
    /// Highest tensor power of the diagonal ideal.
    #[arg(long)]
    max_tensor: Option<usize>,
    /// Bound on tensor degrees for the nilpotency and Γ checks.
    #[arg(long)]
    lbound: Option<usize>,
    /// Emit a JSON report with sorted keys.
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Parse an instance, check the algebra axioms and report AR1/AR2.
    Check {
        file: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Homotopy classes of maps `N → Σ^s M`.
    Hom {
        file: PathBuf,
        /// Source module (defaults to the last module in the file).
        #[arg(long)]
        module: Option<String>,
        /// Target module (defaults to the source).
        #[arg(long)]
        target: Option<String>,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        shift: i64,
        #[command(flatten)]
        common: Common,
    },
    /// The obstruction class and its cross-checks.
    Omega {
        file: PathBuf,
        #[arg(long)]
        module: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// All nine liftability conditions.
    Battery {
        file: PathBuf,
        #[arg(long)]
        module: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Dimensions of Γ^n and the ranks of left multiplication by ω.
    Gamma {
        file: PathBuf,
        #[arg(long)]
        module: Option<String>,
        /// Largest suspension `m` for the ω-action matrices.
        #[arg(long, default_value_t = 3)]
        max_shift: i64,
        #[command(flatten)]
        common: Common,
    },
    /// Negative-shift vanishing over several instance files.
    Appendix {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[arg(long, default_value_t = 3)]
        max_shift: i64,
        #[command(flatten)]
        common: Common,
    },
}

impl Common {
    fn options(&self) -> ParseOptions {
        ParseOptions {
            field: self.field,
            max_degree: self.max_degree,
            max_tensor: self.max_tensor,
            lbound: self.lbound,
        }
    }
}

fn load(file: &Path, common: &Common) -> Result<Instance, String> {
    parse_instance_file(file, &common.options()).map_err(|e| format!("{}: {e}", file.display()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (common, outcome) = match &cli.command {
        Command::Check { file, common } => {
            (common, load(file, common).and_then(|i| commands::check(&i)))
        }
        Command::Hom {
            file,
            module,
            target,
            shift,
            common,
        } => (
            common,
            load(file, common)
                .and_then(|i| commands::hom(&i, module.as_deref(), target.as_deref(), *shift)),
        ),
        Command::Omega {
            file,
            module,
            common,
        } => (
            common,
            load(file, common).and_then(|i| commands::omega(&i, module.as_deref())),
        ),
        Command::Battery {
            file,
            module,
            common,
        } => (
            common,
            load(file, common).and_then(|i| commands::battery(&i, module.as_deref())),
        ),
        Command::Gamma {
            file,
            module,
            max_shift,
            common,
        } => (
            common,
            load(file, common).and_then(|i| commands::gamma(&i, module.as_deref(), *max_shift)),
        ),
        Command::Appendix {
            files,
            max_shift,
            common,
        } => {
            let corpus = files
                .iter()
                .map(|f| load(f, common).map(|i| (f.display().to_string(), i)))
                .collect::<Result<Vec<_>, _>>();
            (
                common,
                corpus.and_then(|c| commands::appendix(&c, *max_shift)),
            )
        }
    };
    match outcome {
        Ok(report) => {
            print!(
                "{}",
                if common.json {
                    report.to_json()
                } else {
                    report.to_text()
                }
            );
            if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
