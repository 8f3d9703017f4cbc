use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use darkport_cli::scenario::{load_scenario, CliError, Variant};
use darkport_cli::{run_operating_point, run_snr, run_spectrum, run_trace};

/// Quantum-noise budget of a power-recycled Michelson with squeezed light
/// injected at the dark port.
#[derive(Parser)]
#[command(name = "darkport", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Noise spectrum relative to shot noise, as CSV.
    Spectrum(CommonArgs),
    /// Solved lock point and the cavity figures that follow from it.
    OperatingPoint(CommonArgs),
    /// Squeezing benefit at the scenario's calibration frequency.
    Snr(CommonArgs),
    /// Absolute analyzer-style trace in dBm, as CSV.
    Trace(CommonArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Squeezed {
    On,
    Off,
}

#[derive(Args)]
struct CommonArgs {
    /// Scenario TOML path, or a preset name: bench, aligo.
    #[arg(long)]
    scenario: String,
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Which interferometer to evaluate.
    #[arg(long, value_enum, default_value_t = Variant::Prm)]
    variant: Variant,
    /// Whether the squeezed source is injected.
    #[arg(long, value_enum, default_value_t = Squeezed::On)]
    squeezed: Squeezed,
}

fn execute(cli: &Cli) -> Result<(), CliError> {
    let (args, output) = match &cli.command {
        Command::Spectrum(args) => {
            let file = load_scenario(&args.scenario)?;
            (
                args,
                run_spectrum(&file, args.variant, args.squeezed == Squeezed::On)?,
            )
        }
        Command::OperatingPoint(args) => {
            let file = load_scenario(&args.scenario)?;
            (
                args,
                run_operating_point(&file, args.variant, args.squeezed == Squeezed::On)?,
            )
        }
        Command::Snr(args) => {
            let file = load_scenario(&args.scenario)?;
            (args, run_snr(&file, args.variant)?)
        }
        Command::Trace(args) => {
            let file = load_scenario(&args.scenario)?;
            (
                args,
                run_trace(&file, args.variant, args.squeezed == Squeezed::On)?,
            )
        }
    };
    match &args.out {
        Some(path) => std::fs::write(path, output)
            .map_err(|e| CliError::Scenario(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{output}");
            Ok(())
        }
    }
}

fn main() {
    let cli = Cli::parse();
    if let Err(e) = execute(&cli) {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}
