use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qpath_cli::{run_scenario, CliError, Scenario, ScenarioConfig, SweepFamily};

/// Quantum-path simulator: spatial superposition, quantum switch and the coin-tossed hop walk.
#[derive(Debug, Parser)]
#[command(name = "qpath", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compare two hops of the coin-tossed spatial superposition with the quantum switch.
    SwitchEquiv(RunArgs),
    /// Apply the spatial superposition of two channels to carrier ⊗ control.
    SpatialRun(RunArgs),
    /// Apply the quantum switch of two channels to carrier ⊗ control.
    SwitchRun(RunArgs),
    /// Evolve carrier ⊗ control through `--hops` hops of the coin-tossed spatial map.
    WalkHybrid(RunArgs),
    /// Heralded noiseless transmission through the switch of an entanglement-breaking channel.
    EbDemo(RunArgs),
    /// 1-D discrete-time quantum walk; writes the position distribution as CSV.
    Dtqw(RunArgs),
    /// Randomized switch-equivalence sweep.
    Sweep(RunArgs),
}

#[derive(Debug, Args)]
struct RunArgs {
    /// Extension spec (channel spec plus optional vacuum_amplitudes) for channel E.
    #[arg(long)]
    channel_e: Option<PathBuf>,
    /// Extension spec for channel D.
    #[arg(long)]
    channel_d: Option<PathBuf>,
    /// Coin: I, X, H, or a path to a 2x2 matrix file.
    #[arg(long)]
    coin: Option<String>,
    /// Carrier state: zero, one, plus, minus, mixed, or a path to a matrix file.
    #[arg(long)]
    carrier: Option<String>,
    /// Control state for run scenarios (same names as --carrier, qubit only).
    #[arg(long)]
    control: Option<String>,
    #[arg(long, default_value_t = 2)]
    hops: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, allow_hyphen_values = true, default_value_t = qpath_core::walk_hybrid::DEFAULT_EQUIVALENCE_TOLERANCE)]
    tolerance: f64,
    /// Output file (JSON report, or CSV for dtqw). Defaults to stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write the JSON report here (useful with dtqw).
    #[arg(long)]
    report: Option<PathBuf>,
    /// Exit with status 1 when switch-equiv finds the outputs not equivalent.
    #[arg(long)]
    expect_equivalent: bool,
    /// Walk steps (dtqw).
    #[arg(long, default_value_t = 3)]
    steps: usize,
    /// Initial coin (dtqw): 0, 1, plus, balanced, or a path to [[re,im],[re,im]].
    #[arg(long, default_value = "0")]
    coin_state: String,
    /// Number of sweep trials.
    #[arg(long, default_value_t = 100)]
    trials: usize,
    /// Carrier dimension for sweeps.
    #[arg(long, default_value_t = 2)]
    dim: usize,
    /// Kraus operators per random channel (uniform-kraus sweeps).
    #[arg(long, default_value_t = 2)]
    kraus_count: usize,
    #[arg(long, value_enum, default_value_t = SweepFamily::Unitary)]
    family: SweepFamily,
    /// Search the Pauli group for heralded corrections instead of using {I, Y} (eb-demo).
    #[arg(long)]
    search_paulis: bool,
}

impl RunArgs {
    fn into_config(self, scenario: Scenario) -> (ScenarioConfig, Option<PathBuf>, Option<PathBuf>) {
        let cfg = ScenarioConfig {
            scenario,
            channel_e: self.channel_e,
            channel_d: self.channel_d,
            coin: self.coin,
            carrier: self.carrier,
            control: self.control,
            hops: self.hops,
            seed: self.seed,
            tolerance: self.tolerance,
            expect_equivalent: self.expect_equivalent,
            steps: self.steps,
            coin_state: self.coin_state,
            trials: self.trials,
            dim: self.dim,
            kraus_count: self.kraus_count,
            family: self.family,
            search_paulis: self.search_paulis,
        };
        (cfg, self.out, self.report)
    }
}

fn write_output(path: Option<&PathBuf>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Validation(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<i32, CliError> {
    let (scenario, args) = match cli.command {
        Command::SwitchEquiv(a) => (Scenario::SwitchEquiv, a),
        Command::SpatialRun(a) => (Scenario::SpatialRun, a),
        Command::SwitchRun(a) => (Scenario::SwitchRun, a),
        Command::WalkHybrid(a) => (Scenario::WalkHybrid, a),
        Command::EbDemo(a) => (Scenario::EbDemo, a),
        Command::Dtqw(a) => (Scenario::Dtqw, a),
        Command::Sweep(a) => (Scenario::Sweep, a),
    };
    let (cfg, out, report_path) = args.into_config(scenario);
    let output = run_scenario(&cfg)?;
    let json = output.report.to_json();
    match &output.csv {
        Some(csv) => write_output(out.as_ref(), csv)?,
        None => write_output(out.as_ref(), &json)?,
    }
    if let Some(p) = report_path {
        write_output(Some(&p), &json)?;
    }
    if output.exit_code != 0 {
        eprintln!("qpath: verdict {}", output.report.verdict);
    }
    Ok(output.exit_code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("qpath: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
