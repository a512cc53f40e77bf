//! `bmatrix` — command-line frontend for Hebbian feedback network
//! simulations: capacity sweeps, generator maps, single-start retrieval,
//! and proximity-matrix generation.
//!
//! Every subcommand is deterministic given its flags; the seed falls back
//! to the `BMATRIX_SEED` environment variable and then to 0. Exit codes:
//! 0 success, 1 runtime or I/O failure, 2 usage or validation failure.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};

use bmatrix_core::{
    default_max_memories, emit_capacity_csv, emit_generator_report, emit_generator_svg,
    generator_snapshot, match_memory, retrieve_from, run_experiment, seeded_network, BipolarVector,
    ExperimentConfig, OrderStrategy, Polarity, PolarityPolicy, PolygonLayout, ScanOptions, TMatrix,
};

/// Canvas edge for generator SVGs, in pixels.
const SVG_SCALE: f64 = 640.0;

#[derive(Parser)]
#[command(
    name = "bmatrix",
    version,
    about = "Simulate Hebbian feedback networks and their single-neuron generators"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Feed memories incrementally over many trials and write the averaged
    /// capacity curves as CSV.
    Experiment(ExperimentArgs),
    /// Train one network, scan every neuron for generators, and write the
    /// polygon graph (SVG) plus a structured report (JSON).
    Generators(GeneratorArgs),
    /// Print the pattern generated from a single clamped start neuron.
    Retrieve(RetrieveArgs),
    /// Write a fair proximity matrix; optionally print an update order.
    Proximity(ProximityArgs),
}

#[derive(Args)]
struct ScanArgs {
    /// How update orders are derived from proximity rows.
    #[arg(long, default_value_t, value_name = "row-sort|greedy-chain")]
    order_strategy: OrderStrategy,

    /// Start polarities tried when scanning for generators.
    #[arg(
        long,
        default_value_t,
        allow_hyphen_values = true,
        value_name = "+1|-1|both"
    )]
    polarity: PolarityPolicy,

    /// Count an output equal to a memory's complement as generating it.
    #[arg(long)]
    match_complement: bool,
}

impl ScanArgs {
    fn options(&self) -> ScanOptions {
        ScanOptions {
            strategy: self.order_strategy,
            polarity: self.polarity,
            match_complement: self.match_complement,
        }
    }
}

#[derive(Args)]
struct ExperimentArgs {
    /// Network size.
    #[arg(long, value_name = "N")]
    neurons: usize,

    /// Memories fed per trial [default: 0.6 * neurons, rounded up].
    #[arg(long, value_name = "M")]
    memories: Option<usize>,

    /// Number of trials averaged.
    #[arg(long, default_value_t = 100)]
    iterations: u64,

    /// Master seed; each trial derives its own stream from it.
    #[arg(long, env = "BMATRIX_SEED", default_value_t = 0)]
    seed: u64,

    #[command(flatten)]
    scan: ScanArgs,

    /// Directory receiving capacity.csv (created if missing).
    #[arg(long, default_value = ".", value_name = "DIR")]
    out: PathBuf,
}

#[derive(Args)]
struct GeneratorArgs {
    /// Network size.
    #[arg(long, value_name = "N")]
    neurons: usize,

    /// Memories fed [default: 0.6 * neurons, rounded up].
    #[arg(long, value_name = "M")]
    memories: Option<usize>,

    /// Seed for the proximity matrix and the fed memories.
    #[arg(long, env = "BMATRIX_SEED", default_value_t = 0)]
    seed: u64,

    #[command(flatten)]
    scan: ScanArgs,

    /// Directory receiving generators.svg and generators.json.
    #[arg(long, default_value = ".", value_name = "DIR")]
    out: PathBuf,
}

#[derive(Args)]
struct RetrieveArgs {
    /// Network size; inferred from --memory-file when omitted.
    #[arg(long, value_name = "N")]
    neurons: Option<usize>,

    /// Number of random memories drawn from the seed.
    #[arg(long, value_name = "M", conflicts_with = "memory_file")]
    memories: Option<usize>,

    /// Fed memories, one +/- string per line, instead of random ones.
    #[arg(long, value_name = "PATH")]
    memory_file: Option<PathBuf>,

    /// Start neuron (1-based).
    #[arg(long, value_name = "K")]
    start: usize,

    /// Polarity clamped onto the start neuron.
    #[arg(
        long,
        default_value = "+1",
        allow_hyphen_values = true,
        value_name = "+1|-1"
    )]
    polarity: Polarity,

    /// How the update order is derived from the proximity row.
    #[arg(long, default_value_t, value_name = "row-sort|greedy-chain")]
    order_strategy: OrderStrategy,

    /// Report a complement match as a match.
    #[arg(long)]
    match_complement: bool,

    /// Seed for the proximity matrix (and memories unless a file is given).
    #[arg(long, env = "BMATRIX_SEED", default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct ProximityArgs {
    /// Network size.
    #[arg(long, value_name = "N")]
    neurons: usize,

    /// Seed the matrix is drawn from.
    #[arg(long, env = "BMATRIX_SEED", default_value_t = 0)]
    seed: u64,

    /// Also print the update order starting from this neuron (1-based).
    #[arg(long, value_name = "K")]
    order_from: Option<usize>,

    /// How the printed update order is derived.
    #[arg(long, default_value_t, value_name = "row-sort|greedy-chain")]
    order_strategy: OrderStrategy,

    /// Directory receiving proximity.txt (created if missing).
    #[arg(long, default_value = ".", value_name = "DIR")]
    out: PathBuf,
}

enum CliError {
    /// Bad flag values; exit 2.
    Usage(String),
    /// Failure while doing the work; exit 1.
    Runtime(anyhow::Error),
}

impl From<anyhow::Error> for CliError {
    fn from(e: anyhow::Error) -> Self {
        CliError::Runtime(e)
    }
}

impl From<bmatrix_core::Error> for CliError {
    fn from(e: bmatrix_core::Error) -> Self {
        CliError::Runtime(e.into())
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Experiment(args) => cmd_experiment(args),
        Command::Generators(args) => cmd_generators(args),
        Command::Retrieve(args) => cmd_retrieve(args),
        Command::Proximity(args) => cmd_proximity(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Runtime(err)) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}

/// Creates the output directory if needed and writes a fully buffered
/// file, so failed emissions never leave partial output behind.
fn write_file(dir: &Path, name: &str, bytes: &[u8]) -> Result<PathBuf, CliError> {
    fs::create_dir_all(dir)
        .with_context(|| format!("creating output directory {}", dir.display()))?;
    let path = dir.join(name);
    fs::write(&path, bytes).with_context(|| format!("writing {}", path.display()))?;
    Ok(path)
}

fn cmd_experiment(args: ExperimentArgs) -> Result<(), CliError> {
    let config = ExperimentConfig {
        neurons: args.neurons,
        max_memories: args
            .memories
            .unwrap_or_else(|| default_max_memories(args.neurons)),
        iterations: args.iterations,
        master_seed: args.seed,
        scan: args.scan.options(),
    };
    config.validate().map_err(|e| usage(e.to_string()))?;
    let curves = run_experiment(&config)?;
    let mut buf = Vec::new();
    emit_capacity_csv(&curves, &mut buf)?;
    let path = write_file(&args.out, "capacity.csv", &buf)?;
    println!("wrote {}", path.display());
    Ok(())
}

fn cmd_generators(args: GeneratorArgs) -> Result<(), CliError> {
    let n = args.neurons;
    if n < 2 {
        return Err(usage(format!("--neurons must be at least 2, got {n}")));
    }
    let memories = args.memories.unwrap_or_else(|| default_max_memories(n));
    if memories == 0 {
        return Err(usage("--memories must be at least 1"));
    }
    let snap = generator_snapshot(n, memories, args.seed, &args.scan.options())?;
    let layout = PolygonLayout::new(n, SVG_SCALE)?;
    let mut svg = Vec::new();
    emit_generator_svg(&snap.map, &layout, &mut svg)?;
    let mut json = Vec::new();
    emit_generator_report(&snap.map, &mut json)?;
    let svg_path = write_file(&args.out, "generators.svg", &svg)?;
    let json_path = write_file(&args.out, "generators.json", &json)?;
    println!("wrote {}", svg_path.display());
    println!("wrote {}", json_path.display());
    println!(
        "non-generator fraction: {:.4}",
        snap.map.non_generator_fraction()
    );
    Ok(())
}

fn read_memory_file(path: &Path) -> anyhow::Result<Vec<BipolarVector>> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("reading memory file {}", path.display()))?;
    let mut memories: Vec<BipolarVector> = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let m: BipolarVector = line
            .parse()
            .with_context(|| format!("{}:{}", path.display(), idx + 1))?;
        if let Some(first) = memories.first() {
            if first.len() != m.len() {
                bail!(
                    "{}:{}: expected {} symbols per memory, found {}",
                    path.display(),
                    idx + 1,
                    first.len(),
                    m.len()
                );
            }
        }
        memories.push(m);
    }
    if memories.is_empty() {
        bail!("memory file {} contains no memories", path.display());
    }
    Ok(memories)
}

fn cmd_retrieve(args: RetrieveArgs) -> Result<(), CliError> {
    let (p, fed, t) = if let Some(path) = &args.memory_file {
        let fed = read_memory_file(path)?;
        let n = fed[0].len();
        if let Some(cli_n) = args.neurons {
            if cli_n != n {
                return Err(usage(format!(
                    "--neurons {cli_n} disagrees with the {n}-neuron memories in {}",
                    path.display()
                )));
            }
        }
        let (p, _, _) = seeded_network(n, 0, args.seed)?;
        let mut t = TMatrix::zeros(n)?;
        for m in &fed {
            t = t.accumulate(m)?;
        }
        (p, fed, t)
    } else {
        let n = args
            .neurons
            .ok_or_else(|| usage("--neurons is required without --memory-file"))?;
        if n < 2 {
            return Err(usage(format!("--neurons must be at least 2, got {n}")));
        }
        let count = args
            .memories
            .ok_or_else(|| usage("--memories is required without --memory-file"))?;
        if count == 0 {
            return Err(usage("--memories must be at least 1"));
        }
        seeded_network(n, count, args.seed)?
    };

    let n = p.n();
    if args.start == 0 || args.start > n {
        return Err(usage(format!(
            "--start must be between 1 and {n}, got {}",
            args.start
        )));
    }
    let out = retrieve_from(&t, &p, args.start - 1, args.polarity, args.order_strategy)?;
    println!("{out}");
    match match_memory(&out, &fed, args.match_complement) {
        Some(idx) => println!("match=true memory={}", idx + 1),
        None => println!("match=false"),
    }
    Ok(())
}

fn cmd_proximity(args: ProximityArgs) -> Result<(), CliError> {
    let n = args.neurons;
    if n < 2 {
        return Err(usage(format!("--neurons must be at least 2, got {n}")));
    }
    if let Some(from) = args.order_from {
        if from == 0 || from > n {
            return Err(usage(format!(
                "--order-from must be between 1 and {n}, got {from}"
            )));
        }
    }
    let (p, _, _) = seeded_network(n, 0, args.seed)?;
    let mut buf = Vec::new();
    p.to_writer(&mut buf)?;
    let path = write_file(&args.out, "proximity.txt", &buf)?;
    println!("wrote {}", path.display());
    if let Some(from) = args.order_from {
        let order = p.update_order(from - 1, args.order_strategy)?;
        println!("{order}");
    }
    Ok(())
}
