//! Reproducible scenario driver: each subcommand reads a JSON config,
//! runs one module operation, and writes CSV/serialization artifacts plus
//! an SVG figure. Exit codes: 0 success, 2 config error, 3 runtime error.

mod scenario;
mod svg;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use scenario::{load_config, CliError, ScenarioConfig};

#[derive(Parser)]
#[command(
    name = "mizel",
    version,
    about = "Rectangle-property scans, constant-width curves, boundary classification, and disk-packing probes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct RunArgs {
    /// JSON scenario config with a top-level "kind" field.
    #[arg(long)]
    config: PathBuf,
    /// Output directory for reports and figures.
    #[arg(long, default_value = ".")]
    out: PathBuf,
    /// Overrides the seed in the config.
    #[arg(long)]
    seed: Option<u64>,
    /// Extra diagnostics on stderr.
    #[arg(long)]
    verbose: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a sampled curve and its figure.
    Generate(RunArgs),
    /// Scan a point set or curve for rectangle-property violations.
    Scan(RunArgs),
    /// Classify curve points by their tangent disk side behavior.
    Classify(RunArgs),
    /// Pack disjoint cells into a disk and emit the residual-set file.
    Pack(RunArgs),
    /// Count probe-circle intersections with a packed residual set.
    Probe(RunArgs),
    /// Search probe families for an exact intersection cardinality.
    Search(RunArgs),
    /// Re-render a serialized curve or packing as SVG.
    Render(RunArgs),
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Generate(_) => "generate",
            Command::Scan(_) => "scan",
            Command::Classify(_) => "classify",
            Command::Pack(_) => "pack",
            Command::Probe(_) => "probe",
            Command::Search(_) => "search",
            Command::Render(_) => "render",
        }
    }

    fn args(&self) -> &RunArgs {
        match self {
            Command::Generate(a)
            | Command::Scan(a)
            | Command::Classify(a)
            | Command::Pack(a)
            | Command::Probe(a)
            | Command::Search(a)
            | Command::Render(a) => a,
        }
    }
}

fn run(command: &Command) -> Result<String, CliError> {
    let args = command.args();
    let config = load_config(&args.config)?;
    if config.kind_name() != command.name() {
        return Err(CliError::Config(format!(
            "config kind \"{}\" does not match subcommand \"{}\"",
            config.kind_name(),
            command.name()
        )));
    }
    let (out, seed, verbose) = (&args.out, args.seed, args.verbose);
    match &config {
        ScenarioConfig::Generate(cfg) => scenario::run_generate(cfg, out, seed, verbose),
        ScenarioConfig::Scan(cfg) => scenario::run_scan(cfg, out, seed, verbose),
        ScenarioConfig::Classify(cfg) => scenario::run_classify(cfg, out, seed, verbose),
        ScenarioConfig::Pack(cfg) => scenario::run_pack(cfg, out, seed, verbose),
        ScenarioConfig::Probe(cfg) => scenario::run_probe(cfg, out, seed, verbose),
        ScenarioConfig::Search(cfg) => scenario::run_search(cfg, out, seed, verbose),
        ScenarioConfig::Render(cfg) => scenario::run_render(cfg, out, seed, verbose),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok(summary) => {
            println!("{summary}");
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("{err}");
            ExitCode::from(err.exit_code())
        }
    }
}
