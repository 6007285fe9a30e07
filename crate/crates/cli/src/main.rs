//! `bst`: validate branching space-time model files and run the GHZ
//! searches from the command line.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

mod commands;
mod report;

use commands::{BuildOutput, CheckArgs};
use report::{Format, Report};

#[derive(Parser)]
#[command(name = "bst", version, about = "Branching space-time model checks and GHZ searches")]
struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run postulate checks, spread validation and n-spread grades.
    Validate { file: PathBuf },
    /// List the histories of a model.
    Histories { file: PathBuf },
    /// GHZ scenario commands.
    #[command(subcommand)]
    Ghz(Ghz),
    /// Check CC1-CC3 for a spread against an inconsistent outcome vector.
    CheckCc {
        file: PathBuf,
        #[arg(long)]
        spread: Option<String>,
        /// N-spread name; a comma-separated list with --search.
        #[arg(long)]
        nspread: String,
        /// Comma-separated outcome event names.
        #[arg(long)]
        vector: Option<String>,
        /// Scan every atomic spread instead of checking one.
        #[arg(long)]
        search: bool,
    },
}

#[derive(Subcommand)]
enum Ghz {
    /// Emit the concrete model document.
    Build {
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sweep all candidate consistency profiles of a joint common cause.
    Refute {
        #[arg(long, default_value = "xxx,xxy,xyy,xyx")]
        contexts: String,
        /// Include the reductio trace.
        #[arg(long)]
        trace: bool,
        /// Anchor signs for the trace, e.g. `+-+`.
        #[arg(long, allow_hyphen_values = true)]
        anchor: Option<String>,
    },
    /// Global sign assignments against product constraints.
    Values {
        /// e.g. `xyy:+,yxy:+,yyx:+,xxx:-` (the default).
        #[arg(long, allow_hyphen_values = true)]
        constraints: Option<String>,
    },
    /// Per-context sign triples against product constraints.
    Contextual {
        #[arg(long, allow_hyphen_values = true)]
        constraints: Option<String>,
    },
    /// Eigenvalue checks, outcome probabilities and the parity-rule comparison.
    Oracle {
        #[arg(long)]
        context: Option<String>,
        #[arg(long, default_value_t = bst_core::quantum::DEFAULT_THRESHOLD)]
        threshold: f64,
    },
}

enum Output {
    Report(Report),
    Raw(String),
}

fn run(cli: &Cli) -> anyhow::Result<Output> {
    let report = match &cli.command {
        Command::Validate { file } => commands::validate(file)?,
        Command::Histories { file } => commands::histories(file)?,
        Command::Ghz(Ghz::Build { out }) => {
            return Ok(match commands::ghz_build(out.as_deref())? {
                BuildOutput::Document(text) => Output::Raw(text),
                BuildOutput::Report(r) => Output::Report(r),
            })
        }
        Command::Ghz(Ghz::Refute {
            contexts,
            trace,
            anchor,
        }) => commands::ghz_refute(contexts, *trace, anchor.as_deref())?,
        Command::Ghz(Ghz::Values { constraints }) => commands::ghz_values(constraints.as_deref())?,
        Command::Ghz(Ghz::Contextual { constraints }) => {
            commands::ghz_contextual(constraints.as_deref())?
        }
        Command::Ghz(Ghz::Oracle { context, threshold }) => {
            commands::ghz_oracle(context.as_deref(), *threshold)?
        }
        Command::CheckCc {
            file,
            spread,
            nspread,
            vector,
            search,
        } => commands::check_cc(CheckArgs {
            file,
            spread: spread.as_deref(),
            nspread,
            vector: vector.as_deref(),
            search: *search,
        })?,
    };
    Ok(Output::Report(report))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Output::Raw(text)) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Ok(Output::Report(r)) => {
            print!("{}", r.render(cli.format));
            ExitCode::from(r.exit_code() as u8)
        }
        Err(e) => {
            match e.downcast_ref::<bst_core::Error>() {
                Some(core) => eprintln!("error[{}]: {core}", core.kind()),
                None => eprintln!("error: {e:#}"),
            }
            ExitCode::from(2)
        }
    }
}
