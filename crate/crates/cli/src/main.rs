use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use hxh_einstein::{GridSpec, Plane};
use hxh_einstein_cli::commands::{self, CatalogSource};
use hxh_einstein_cli::CliError;

/// Curvature, Einstein metrics and stability on H×H/ΔK.
#[derive(Parser)]
#[command(name = "hxh-einstein", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Curvature, Einstein test and closed-form match of one metric.
    Analyze {
        /// Catalog name (`G2/SO4`), family (`SO(2m)/U(m):m=3`), or inline
        /// `n=..,d=..[,a=..]` / `a=..,d=..`.
        #[arg(long)]
        space: Option<String>,
        /// x1,x2,x3,x4
        #[arg(long, allow_hyphen_values = true)]
        metric: String,
        #[arg(long)]
        json: bool,
    },
    /// List a catalog (builtin unless PATH or EINSTEIN_CATALOG is given).
    Catalog {
        path: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Sample scal_N on a plane of the x3 = 1 slice and write CSV.
    Grid {
        #[arg(long)]
        space: String,
        #[arg(long, default_value = "sum2")]
        plane: Plane,
        #[arg(long, default_value = "0:2", allow_hyphen_values = true)]
        range1: String,
        #[arg(long, default_value = "-1:1", allow_hyphen_values = true)]
        range2: String,
        /// Intervals per axis, N:M.
        #[arg(long, default_value = "40:40")]
        steps: String,
        /// Output file; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the verification suite; exit 0 iff no check fails.
    Verify {
        path: Option<PathBuf>,
        /// Run only checks whose id contains PATTERN.
        #[arg(long)]
        only: Option<String>,
        #[arg(long)]
        json: bool,
    },
}

fn write_json(value: &impl serde::Serialize) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value).map_err(|e| CliError::Failed(e.to_string()))?;
    println!("{text}");
    Ok(())
}

fn stdout_err(source: io::Error) -> CliError {
    CliError::Io {
        context: "writing stdout".into(),
        source,
    }
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    let mut stdout = io::stdout().lock();
    match cli.command {
        Command::Analyze { space, metric, json } => {
            let g = commands::parse_metric(&metric)?;
            let selected = commands::select(space.as_deref(), &CatalogSource::resolve(None))?;
            let report = commands::analyze(&selected, &g)?;
            if json {
                write_json(&report)?;
            } else {
                commands::print_analyze(&mut stdout, &report).map_err(stdout_err)?;
            }
        }
        Command::Catalog { path, json } => {
            let source = CatalogSource::resolve(path);
            let catalog = source.load()??;
            let entries = commands::catalog_entries(&catalog);
            if json {
                write_json(&entries)?;
            } else {
                commands::print_catalog(&mut stdout, &source.label(), &entries).map_err(stdout_err)?;
            }
        }
        Command::Grid {
            space,
            plane,
            range1,
            range2,
            steps,
            out,
        } => {
            let spec = GridSpec {
                plane,
                range1: commands::parse_range(&range1)?,
                range2: commands::parse_range(&range2)?,
                steps: commands::parse_steps(&steps)?,
            };
            let selected = commands::select(Some(&space), &CatalogSource::resolve(None))?;
            let rows = commands::grid(&selected, &spec, out.as_deref())?;
            if let Some(path) = &out {
                eprintln!("wrote {rows} rows to {}", path.display());
            }
        }
        Command::Verify { path, only, json } => {
            let report = commands::verify(&CatalogSource::resolve(path), only.as_deref())?;
            if json {
                write_json(&report)?;
            } else {
                commands::print_verify(&mut stdout, &report).map_err(stdout_err)?;
            }
            if !report.passed {
                if let Some(c) = report.checks.iter().find(|c| !c.status.is_ok()) {
                    eprintln!("error: check {} failed: {}", c.check_id, c.notes.join("; "));
                }
                return Ok(ExitCode::from(1));
            }
        }
    }
    stdout.flush().map_err(stdout_err)?;
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        // a closed pipe (`| head`) is not an error
        Err(CliError::Io { source, .. }) if source.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
