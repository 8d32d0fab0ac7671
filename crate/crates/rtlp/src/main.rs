//! Thin batch CLI over the library: run experiment grids, aggregate their
//! reports, and self-test the transfer machinery. Everything substantive
//! lives in the library; this binary only parses arguments and wires calls.

use clap::{Parser, Subcommand};
use rtlp::runner::{self, ExperimentConfig, Setting};
use rtlp::synthetic;
use rtlp::Variant;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "rtlp", version, about = "Regression-transfer seeded dynamic multi-objective optimization")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an experiment grid and write one CSV per cell.
    Run {
        /// TOML config; omitted fields (and an omitted file) use defaults.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Override the problem list (repeatable).
        #[arg(long = "problem")]
        problems: Vec<String>,
        /// Override the generations-per-environment of every setting.
        #[arg(long)]
        tau_t: Option<u32>,
        /// Override the change severity of every setting.
        #[arg(long)]
        n_t: Option<u32>,
        /// Override the seed list (comma-separated).
        #[arg(long, value_delimiter = ',')]
        seeds: Vec<u64>,
        /// Override the variant list (repeatable).
        #[arg(long = "variant", value_parser = parse_variant)]
        variants: Vec<Variant>,
        /// Override the static optimizer.
        #[arg(long)]
        optimizer: Option<String>,
        /// Override the output directory.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Aggregate per-cell CSVs into tables and a summary.csv.
    Report {
        /// Directory holding the per-cell report CSVs.
        #[arg(long = "in")]
        in_dir: PathBuf,
    },
    /// Self-tests against synthetic ground truth.
    Selftest {
        #[command(subcommand)]
        which: SelftestCommand,
    },
}

#[derive(Subcommand)]
enum SelftestCommand {
    /// Statistical checks of the boosted transfer ensemble.
    Transfer,
}

fn parse_variant(s: &str) -> Result<Variant, String> {
    s.parse().map_err(|e: rtlp::Error| e.to_string())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Box<dyn std::error::Error>> {
    match cli.command {
        Command::Run {
            config,
            problems,
            tau_t,
            n_t,
            seeds,
            variants,
            optimizer,
            out,
        } => {
            let mut cfg = match config {
                Some(path) => ExperimentConfig::from_path(&path)?,
                None => ExperimentConfig::default(),
            };
            if !problems.is_empty() {
                cfg.problems = problems;
            }
            if tau_t.is_some() || n_t.is_some() {
                let base = *cfg.settings.first().unwrap_or(&Setting { tau_t: 5, n_t: 10 });
                cfg.settings = vec![Setting {
                    tau_t: tau_t.unwrap_or(base.tau_t),
                    n_t: n_t.unwrap_or(base.n_t),
                }];
            }
            if !seeds.is_empty() {
                cfg.seeds = seeds;
            }
            if !variants.is_empty() {
                cfg.variants = variants;
            }
            if let Some(optimizer) = optimizer {
                cfg.optimizer = optimizer;
            }
            if let Some(out) = out {
                cfg.out_dir = out.to_string_lossy().into_owned();
            }

            let reports = runner::run(&cfg)?;
            println!(
                "ran {} cells into {} ({} problems x {} settings x {} seeds x {} variants)",
                reports.len(),
                cfg.out_dir,
                cfg.problems.len(),
                cfg.settings.len(),
                cfg.seeds.len(),
                cfg.variants.len(),
            );
            print!("{}", runner::render_tables(&runner::aggregate(&reports)));
            Ok(ExitCode::SUCCESS)
        }
        Command::Report { in_dir } => {
            let reports = runner::read_reports_csv(&in_dir)?;
            if reports.is_empty() {
                return Err(format!("no report CSVs found in {}", in_dir.display()).into());
            }
            let rows = runner::aggregate(&reports);
            print!("{}", runner::render_tables(&rows));
            let summary = in_dir.join("summary.csv");
            runner::write_aggregate_csv(&summary, &rows)?;
            println!("wrote {}", summary.display());
            Ok(ExitCode::SUCCESS)
        }
        Command::Selftest {
            which: SelftestCommand::Transfer,
        } => {
            let seeds: Vec<u64> = (0..10).collect();
            let report = synthetic::transfer_selftest(&seeds);
            for property in &report.properties {
                println!(
                    "{}: {} ({}/{} trials, {} required)",
                    property.name,
                    if property.passed() { "pass" } else { "FAIL" },
                    property.passes,
                    property.trials,
                    property.required,
                );
            }
            if report.all_passed() {
                println!("transfer selftest: pass");
                Ok(ExitCode::SUCCESS)
            } else {
                println!("transfer selftest: FAIL");
                Ok(ExitCode::FAILURE)
            }
        }
    }
}
