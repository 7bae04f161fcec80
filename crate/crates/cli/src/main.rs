use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};

use hopf_forge_cli::{certificate::Certificate, run, scenario::Depth, RunOptions};

/// Builds the covering Hopf algebras for twisted group algebras, abelian
/// extensions, and crossed products, verifying every axiom in exact
/// arithmetic and emitting a deterministic JSON certificate.
#[derive(Parser)]
#[command(name = "hopf-forge", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Write the certificate JSON to this path.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Verification depth for the pair sweeps.
    #[arg(long, global = true, value_enum)]
    depth: Option<Depth>,

    /// Run all verification sweeps on a single thread.
    #[arg(long, global = true)]
    no_parallel: bool,

    /// Print the certificate JSON to stdout instead of the summary.
    #[arg(long, global = true)]
    json_only: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Build and verify the object the scenario requests (A, H, or X).
    Construct { scenario: PathBuf },
    /// Run the full pipeline onto the crossed product (or tensor of them).
    Realize { scenario: PathBuf },
    /// Compute the class order and witness of the scenario's cocycle.
    CocycleOrder { scenario: PathBuf },
    /// Re-check a serialized algebra or Hopf structure.
    Verify { object: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let options = RunOptions {
        depth: cli.depth,
        parallel: !cli.no_parallel,
    };
    let started = Instant::now();
    let (path, result): (&PathBuf, anyhow::Result<Certificate>) = match &cli.command {
        Command::Construct { scenario } => (scenario, read(scenario).and_then(|t| run::construct(&t, &options))),
        Command::Realize { scenario } => (scenario, read(scenario).and_then(|t| run::realize(&t, &options))),
        Command::CocycleOrder { scenario } => {
            (scenario, read(scenario).and_then(|t| run::cocycle_order(&t, &options)))
        }
        Command::Verify { object } => (object, read(object).and_then(|t| run::verify(&t, &options))),
    };
    let mut certificate = match result {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    certificate.timing.total_ms = started.elapsed().as_millis();
    let json = serde_json::to_string_pretty(&certificate).expect("certificate serializes");
    if let Some(out) = &cli.out {
        if let Err(e) = std::fs::write(out, format!("{json}\n")) {
            eprintln!("error: cannot write {}: {e}", out.display());
            return ExitCode::from(2);
        }
    }
    if cli.json_only {
        println!("{json}");
    } else {
        print!("{}", certificate.summary());
        println!("(scenario: {})", path.display());
    }
    if certificate.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn read(path: &PathBuf) -> anyhow::Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| anyhow::anyhow!("cannot read {}: {e}", path.display()))
}
