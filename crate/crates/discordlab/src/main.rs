use std::fs;
use std::io;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use discordlab::{run, CliError, Command, Overrides, RunConfig};

#[derive(Parser)]
#[command(name = "discordlab", version, about = "Two-qubit quantum discord under colored-noise dephasing")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Discord trajectory on a uniform ν grid.
    Evolve(Flags),
    /// Classical-correlation objective against θ at the given ν values.
    ScanBasis(Flags),
    /// Locate and classify optimal-basis switches.
    Detect(Flags),
    /// σx/σz optimality conditions for the evolved X state.
    Classify(Flags),
    /// Random X-state survey of the sudden-capability predicate.
    Survey(Flags),
}

#[derive(Args)]
struct Flags {
    /// JSON run configuration.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output CSV path (stdout if omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, allow_hyphen_values = true)]
    a: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    tau: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    nu_max: Option<f64>,
    #[arg(long)]
    steps: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, allow_hyphen_values = true)]
    epsilon: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    c1: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    c2: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    c3: Option<f64>,
    /// Comma-separated ν values for scan-basis and classify.
    #[arg(long, value_delimiter = ',', num_args = 0.., allow_hyphen_values = true)]
    nu: Option<Vec<f64>>,
    /// Sudden-capability tolerance.
    #[arg(long)]
    tol: Option<f64>,
}

fn load(command: Command, flags: Flags) -> Result<RunConfig, CliError> {
    let base = match &flags.config {
        Some(path) => RunConfig::from_json(&fs::read_to_string(path).map_err(|e| CliError::io(path, e))?)?,
        None => RunConfig::default(),
    };
    let overrides = Overrides {
        a: flags.a,
        tau: flags.tau,
        nu_max: flags.nu_max,
        steps: flags.steps,
        n: flags.n,
        seed: flags.seed,
        epsilon: flags.epsilon,
        c1: flags.c1,
        c2: flags.c2,
        c3: flags.c3,
        nu: flags.nu,
        tol: flags.tol,
        out: flags.out,
    };
    base.apply(command, overrides)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, flags) = match cli.command {
        Cmd::Evolve(f) => (Command::Evolve, f),
        Cmd::ScanBasis(f) => (Command::ScanBasis, f),
        Cmd::Detect(f) => (Command::Detect, f),
        Cmd::Classify(f) => (Command::Classify, f),
        Cmd::Survey(f) => (Command::Survey, f),
    };
    match load(command, flags).and_then(|config| run(&config, &mut io::stdout().lock())) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", e.to_json());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
