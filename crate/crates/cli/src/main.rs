use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use dcgroup_cli::{emit, run_analyze, run_census, summary_csv, to_json, CliError, Flags, Format};

/// Decide whether the derived subgroups of all subgroups of a finite group
/// form a chain, and check the accompanying claims on a corpus.
#[derive(Parser)]
#[command(name = "dcgroup", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze one group spec.
    Analyze {
        #[arg(long)]
        spec: PathBuf,
        #[command(flatten)]
        flags: FlagArgs,
    },
    /// Run every claim over a directory of group specs.
    Census {
        #[arg(long)]
        corpus: PathBuf,
        #[command(flatten)]
        flags: FlagArgs,
    },
}

#[derive(Args)]
struct FlagArgs {
    /// Largest group order for full subgroup lattice enumeration.
    #[arg(long, default_value_t = dcgroup::lattice::DEFAULT_LATTICE_CAP)]
    lattice_cap: usize,
    /// Decide DC by fast criteria only.
    #[arg(long)]
    fast_only: bool,
    /// Worker threads (0 = one per core).
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    /// Output file (default stdout). For a JSON census, the summary CSV is
    /// written next to it.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

impl From<FlagArgs> for Flags {
    fn from(a: FlagArgs) -> Self {
        Flags {
            lattice_cap: a.lattice_cap,
            fast_only: a.fast_only,
            jobs: a.jobs,
            out: a.out,
            format: a.format,
        }
    }
}

fn run(cli: Cli) -> Result<bool, CliError> {
    match cli.command {
        Command::Analyze { spec, flags } => {
            let flags = Flags::from(flags);
            let report = run_analyze(&spec, &flags)?;
            let text = match flags.format {
                Format::Json => to_json(&report),
                Format::Csv => summary_csv([&report.report])?,
            };
            emit(flags.out.as_deref(), &text)?;
            Ok(!report.has_failures())
        }
        Command::Census { corpus, flags } => {
            let flags = Flags::from(flags);
            let output = run_census(&corpus, &flags)?;
            let csv = summary_csv(&output.census.groups)?;
            match flags.format {
                Format::Json => {
                    emit(flags.out.as_deref(), &to_json(&output))?;
                    if let Some(out) = &flags.out {
                        emit(Some(&out.with_extension("csv")), &csv)?;
                    }
                }
                Format::Csv => emit(flags.out.as_deref(), &csv)?,
            }
            let failures = output.census.failure_count();
            if failures > 0 {
                eprintln!("{failures} claim failures");
            }
            Ok(failures == 0)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
