//! Thin command-line front end over the scenario runner.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use sovstar::scenario::{self, ScenarioConfig};

#[derive(Parser)]
#[command(name = "sovstar", version, about = "Exact verification of star products with separation of variables")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct OutputOpts {
    /// Write the full report to this path (JSON).
    #[arg(long)]
    report: Option<PathBuf>,
    /// Print the report as JSON instead of text.
    #[arg(long, conflicts_with = "text")]
    json: bool,
    /// Print the report as text (default).
    #[arg(long)]
    text: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Run the checks of a scenario configuration file.
    Verify {
        /// Scenario configuration (JSON).
        #[arg(long)]
        config: PathBuf,
        /// Override the formal order R from the config.
        #[arg(long)]
        nu_order: Option<i64>,
        /// Override the jet order J from the config.
        #[arg(long)]
        jet_order: Option<u32>,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Run the built-in unit-sphere scenario.
    SphereDemo {
        /// Complex dimension (1, 2 or 3).
        #[arg(long)]
        n: usize,
        #[arg(long)]
        nu_order: Option<i64>,
        #[arg(long)]
        jet_order: Option<u32>,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// List the available check names.
    ListChecks,
}

fn emit(report: &sovstar::scenario::Report, output: &OutputOpts) -> std::io::Result<()> {
    if let Some(path) = &output.report {
        std::fs::write(path, report.to_json())?;
    }
    if output.json {
        println!("{}", report.to_json());
    } else {
        print!("{}", report.to_text());
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Verify {
            config,
            nu_order,
            jet_order,
            output,
        } => {
            let text = match std::fs::read_to_string(&config) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("cannot read {}: {e}", config.display());
                    return ExitCode::from(2);
                }
            };
            let mut config = match ScenarioConfig::from_json(&text) {
                Ok(c) => c,
                Err(e) => {
                    eprintln!("{e}");
                    return ExitCode::from(2);
                }
            };
            if let Some(r) = nu_order {
                config.nu_order = r;
            }
            if let Some(j) = jet_order {
                config.jet_order = j;
            }
            if let Err(e) = config.validate() {
                eprintln!("{e}");
                return ExitCode::from(2);
            }
            scenario::run_scenario(&config).map(|report| (report, output))
        }
        Command::SphereDemo {
            n,
            nu_order,
            jet_order,
            output,
        } => scenario::run::sphere_demo_config(n)
            .map(|mut config| {
                if let Some(r) = nu_order {
                    config.nu_order = r;
                }
                if let Some(j) = jet_order {
                    config.jet_order = j;
                }
                config
            })
            .and_then(|config| {
                config.validate()?;
                scenario::run_scenario(&config)
            })
            .map(|report| (report, output)),
        Command::ListChecks => {
            for (name, description) in scenario::CHECKS {
                println!("{name:<20} {description}");
            }
            return ExitCode::SUCCESS;
        }
    };
    match result {
        Ok((report, output)) => {
            if let Err(e) = emit(&report, &output) {
                eprintln!("cannot write report: {e}");
                return ExitCode::from(2);
            }
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(2)
        }
    }
}
