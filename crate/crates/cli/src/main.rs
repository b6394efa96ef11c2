use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use unate_core::exact::{closest_unate_orientation, empirical_find_probability, is_unate, surprise_statistic};
use unate_core::harness::{emit, emit_to_path, run_trials, successful, sweep, ExperimentConfig, Format, TrialReport};
use unate_core::hypergrid::parse_rational;
use unate_core::instances::InstanceDescriptor;
use unate_core::{DimSet, TruthTable};

/// Unateness property testing: seeded tester runs, sweeps and exact
/// distances on small instances.
#[derive(Parser)]
#[command(name = "unate", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the unateness tester repeatedly on one instance and report the
    /// rejection rate.
    Test(TestArgs),
    /// Run every cell of a TOML sweep configuration.
    Sweep(SweepArgs),
    /// Print is_unate, the exact distance to unate and the surprise profile.
    Exact(InstanceArg),
    /// Write the truth table of an instance in the hypergrid file format.
    Gen(GenArgs),
    /// Surprise statistic and pair-search success probability for one set of
    /// fixed dimensions.
    Stat(StatArgs),
}

#[derive(Args)]
struct InstanceArg {
    /// Descriptor text such as "parity_sum_h d=4 S=1 T=2", or a path to a
    /// table file or to a file holding a descriptor.
    #[arg(long)]
    instance: String,
}

#[derive(Args)]
struct SeedArg {
    /// Base seed; trial k uses stream k.
    #[arg(long, env = "UNATE_SEED")]
    seed: Option<u64>,
}

#[derive(Args)]
struct OutputArgs {
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// csv or json.
    #[arg(long)]
    format: Option<String>,
}

#[derive(Args)]
struct TestArgs {
    #[command(flatten)]
    instance: InstanceArg,
    /// Proximity parameter as a rational in (0, 1/2), e.g. 1/8.
    #[arg(long)]
    epsilon: String,
    #[arg(long, default_value_t = 100)]
    trials: u64,
    #[command(flatten)]
    seed: SeedArg,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct SweepArgs {
    /// TOML sweep configuration.
    #[arg(long)]
    config: PathBuf,
    #[command(flatten)]
    seed: SeedArg,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct GenArgs {
    #[command(flatten)]
    instance: InstanceArg,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct StatArgs {
    #[command(flatten)]
    instance: InstanceArg,
    /// Dimensions held fixed (x_T = y_T), 1-based and comma separated; empty
    /// for none.
    #[arg(long, default_value = "")]
    dims: String,
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) if is_broken_pipe(&e) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

/// A downstream reader such as `head` closed stdout early.
fn is_broken_pipe(e: &anyhow::Error) -> bool {
    e.chain().any(|c| {
        c.downcast_ref::<std::io::Error>().is_some_and(|io| io.kind() == std::io::ErrorKind::BrokenPipe)
            || c.downcast_ref::<unate_core::Error>()
                .is_some_and(|u| matches!(u, unate_core::Error::Io(io) if io.kind() == std::io::ErrorKind::BrokenPipe))
    })
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Test(args) => {
            let desc = resolve_instance(&args.instance.instance)?;
            let epsilon = parse_rational(&args.epsilon).context("--epsilon")?;
            let format = parse_format(args.output.format.as_deref())?;
            let report = run_trials(&desc, epsilon, args.trials, args.seed.seed.unwrap_or(0))?;
            write_report(&[report], format, args.output.out.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Sweep(args) => {
            let config = ExperimentConfig::load(&args.config)
                .with_context(|| format!("reading {}", args.config.display()))?;
            let seed = args.seed.seed.or(config.seed).unwrap_or(0);
            let format = match args.output.format.as_deref() {
                Some(f) => parse_format(Some(f))?,
                None => config.format,
            };
            let out = args.output.out.or_else(|| config.output.clone());
            let rows = sweep(&config, seed);
            let mut failed = 0;
            for row in &rows {
                if let Err(e) = &row.outcome {
                    eprintln!("cell {} failed: {e}", row.cell);
                    failed += 1;
                }
            }
            write_report(&successful(&rows), format, out.as_deref())?;
            Ok(if failed == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
        Command::Exact(args) => {
            let table = tabulate(&args)?;
            let (orientation, distance) = closest_unate_orientation(&table)?;
            let mut out = io::stdout().lock();
            writeln!(out, "domain: {}", table.domain())?;
            writeln!(out, "is_unate: {}", is_unate(&table))?;
            writeln!(out, "distance_to_unate: {distance}")?;
            writeln!(out, "closest_orientation: {orientation}")?;
            writeln!(out, "surprise:")?;
            let d = table.domain().d();
            for k in 0..=d {
                let t: DimSet = (0..k).collect();
                writeln!(out, "  T={{{}}} {}", one_based(&t), surprise_statistic(&table, &t)?)?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Gen(args) => {
            let table = tabulate(&args.instance)?;
            match args.out {
                Some(path) => table.save(&path).with_context(|| format!("writing {}", path.display()))?,
                None => table.write_to(io::stdout().lock())?,
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Stat(args) => {
            let table = tabulate(&args.instance)?;
            let t = parse_dims(&args.dims, table.domain().d())?;
            let surprise = surprise_statistic(&table, &t)?;
            let mut out = io::stdout().lock();
            writeln!(out, "T: {{{}}}", one_based(&t))?;
            writeln!(out, "surprise: {surprise}")?;
            match empirical_find_probability(&table, &t) {
                Ok(p) => writeln!(out, "find_probability: {p}")?,
                Err(e) => writeln!(out, "find_probability: skipped ({e})")?,
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

/// A descriptor string, a table file, or a file containing a descriptor.
fn resolve_instance(arg: &str) -> Result<InstanceDescriptor> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = fs::read_to_string(path).with_context(|| format!("reading {arg}"))?;
        if text.trim_start().starts_with("hypergrid") {
            return Ok(InstanceDescriptor::ExplicitTable { path: path.to_path_buf() });
        }
        return text.trim().parse().with_context(|| format!("descriptor in {arg}"));
    }
    arg.parse().with_context(|| format!("descriptor {arg:?}"))
}

fn tabulate(arg: &InstanceArg) -> Result<TruthTable> {
    let desc = resolve_instance(&arg.instance)?;
    let f = desc.materialize()?;
    Ok(TruthTable::tabulate(&*f)?)
}

fn parse_format(format: Option<&str>) -> Result<Format> {
    Ok(format.map(str::parse).transpose()?.unwrap_or_default())
}

fn parse_dims(text: &str, d: usize) -> Result<DimSet> {
    let mut t = DimSet::empty();
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let i: usize = item.parse().with_context(|| format!("bad dimension {item:?}"))?;
        if i == 0 || i > d {
            bail!("dimension {i} outside 1..={d}");
        }
        t.insert(i - 1);
    }
    Ok(t)
}

fn one_based(t: &DimSet) -> String {
    t.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(",")
}

fn write_report(reports: &[TrialReport], format: Format, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => emit_to_path(reports, format, path).with_context(|| format!("writing {}", path.display()))?,
        None => emit(reports, format, io::stdout().lock())?,
    }
    Ok(())
}
