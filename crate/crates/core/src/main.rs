use std::fs::File;
use std::io::BufWriter;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crw_scatter::config::{parse_config, OutputFormat, RunConfig, SweepAxisKind};
use crw_scatter::figures::{run_figure, FigureName};
use crw_scatter::output::{sig_digits_from_env, Table};
use crw_scatter::scattering::{linspace, sweep, Grid, SweepOptions};
use crw_scatter::validation::run_validation;

#[derive(Parser)]
#[command(name = "crw-scatter", version, about = "Single-photon scattering spectra for a coupled-resonator waveguide")]
struct Cli {
    /// RNG seed. Accepted for reproducibility plumbing; the computation is
    /// deterministic and does not consume randomness.
    #[arg(long, global = true)]
    seed: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the sweep described by a TOML configuration file.
    Sweep {
        /// Path to the configuration file.
        config: PathBuf,
        /// Override the output format from the configuration.
        #[arg(long, value_parser = parse_format)]
        format: Option<OutputFormat>,
        /// Override the number of grid points.
        #[arg(long)]
        points: Option<usize>,
    },
    /// Emit the data tables for a canned figure.
    Figure {
        /// One of fig2a, fig2b, fig2c, fig3, fig4, fig5, fig6.
        name: String,
        /// Directory to write the tables into.
        #[arg(long, default_value = ".")]
        out: PathBuf,
        /// Output format.
        #[arg(long, default_value = "csv", value_parser = parse_format)]
        format: OutputFormat,
        /// Grid points per curve.
        #[arg(long, default_value_t = 1001)]
        points: usize,
    },
    /// Run the oracle validation checks from a configuration's [oracle] block.
    Validate {
        /// Path to the configuration file.
        config: PathBuf,
    },
}

fn parse_format(s: &str) -> Result<OutputFormat, String> {
    match s {
        "csv" => Ok(OutputFormat::Csv),
        "json" => Ok(OutputFormat::Json),
        other => Err(format!("expected csv | json, got '{other}'")),
    }
}

fn load_config(path: &PathBuf) -> Result<RunConfig, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    parse_config(&text).map_err(|e| e.to_string())
}

fn run_sweep(
    config: &PathBuf,
    format: Option<OutputFormat>,
    points: Option<usize>,
) -> Result<(), String> {
    let cfg = load_config(config)?;
    let points = points.unwrap_or(cfg.sweep.points);
    if points < 2 {
        return Err("--points must be at least 2".into());
    }
    let raw = linspace(cfg.sweep.start, cfg.sweep.stop, points);
    let grid = match cfg.sweep.axis {
        SweepAxisKind::Momentum => Grid::Momentum(raw),
        SweepAxisKind::Energy => Grid::Energy(raw),
        SweepAxisKind::Detuning => {
            let wc = cfg.cavity.omega_c();
            Grid::Energy(raw.into_iter().map(|d| wc + d).collect())
        }
    };
    let opts = SweepOptions {
        branch_epsilon: cfg.sweep.epsilon,
    };
    let rows = sweep(&grid, &cfg.cavity, &cfg.waveguide, &opts).map_err(|e| e.to_string())?;
    let table = Table::from_sweep(vec![format!("source config: {}", config.display())], &rows);
    let format = format.unwrap_or(cfg.output.format);
    let mut w = BufWriter::new(
        File::create(&cfg.output.path)
            .map_err(|e| format!("cannot create {}: {e}", cfg.output.path))?,
    );
    table
        .write(&mut w, format, sig_digits_from_env())
        .map_err(|e| e.to_string())?;
    println!("wrote {} rows to {}", rows.len(), cfg.output.path);
    Ok(())
}

fn run_figure_cmd(
    name: &str,
    out: &PathBuf,
    format: OutputFormat,
    points: usize,
) -> Result<(), String> {
    let name: FigureName = name.parse().map_err(|e: crw_scatter::figures::FigureError| e.to_string())?;
    let paths = run_figure(name, out, format, points, sig_digits_from_env())
        .map_err(|e| e.to_string())?;
    for p in paths {
        println!("wrote {}", p.display());
    }
    Ok(())
}

fn run_validate(config: &PathBuf) -> Result<bool, String> {
    let cfg = load_config(config)?;
    let report = run_validation(&cfg).map_err(|e| e.to_string())?;
    for check in &report.checks {
        let status = if check.passed { "PASS" } else { "FAIL" };
        println!("{status} {}: {}", check.name, check.detail);
    }
    Ok(report.passed)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Sweep {
            config,
            format,
            points,
        } => run_sweep(config, *format, *points).map(|()| true),
        Command::Figure {
            name,
            out,
            format,
            points,
        } => run_figure_cmd(name, out, *format, *points).map(|()| true),
        Command::Validate { config } => run_validate(config),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
