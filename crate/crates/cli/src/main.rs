use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use mnsample::{RngStream, Sampler, WeightTable};
use mnsample_cli::{
    run_benchmark, verify_complexity, verify_statistics, BenchConfig, VerifyConfig, WeightSource,
};

#[derive(Parser)]
#[command(
    name = "mnsample",
    version,
    about = "Multinomial resampling benchmarks and checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Time the three samplers over a sweep and write a CSV.
    Bench(BenchArgs),
    /// Run goodness-of-fit and operation-count checks.
    Verify(VerifyArgs),
    /// Draw indices from weights read from a file or standard input.
    Sample(SampleArgs),
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long)]
    n_min: Option<usize>,
    #[arg(long)]
    n_max: Option<usize>,
    #[arg(long)]
    n_points: Option<usize>,
    /// Comma-separated table size multipliers M/N.
    #[arg(long, value_delimiter = ',')]
    ratios: Option<Vec<usize>>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// dirichlet, geometric or engmf.
    #[arg(long, value_parser = parse_weights)]
    weights: Option<WeightSource>,
    #[arg(long, default_value = "testresults.csv")]
    out: PathBuf,
    /// 20 trials over 5 sample counts.
    #[arg(long)]
    quick: bool,
    /// Discard this many leading trials.
    #[arg(long)]
    warmup: Option<usize>,
    /// Also count probes in a separate untimed pass and print them.
    #[arg(long)]
    probes: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Seeded goodness-of-fit runs per sampler.
    #[arg(long)]
    gof_runs: Option<usize>,
    /// Draws per goodness-of-fit run.
    #[arg(long)]
    draws: Option<usize>,
    /// Instrumented trials per complexity cell.
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    quick: bool,
}

#[derive(Args)]
struct SampleArgs {
    /// Whitespace-separated weights; standard input when omitted.
    file: Option<PathBuf>,
    #[arg(long, default_value = "dac", value_parser = parse_sampler)]
    sampler: Sampler,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn parse_weights(s: &str) -> Result<WeightSource, String> {
    s.parse()
        .map_err(|e: mnsample_cli::HarnessError| e.to_string())
}

fn parse_sampler(s: &str) -> Result<Sampler, String> {
    s.parse().map_err(|e: mnsample::Error| e.to_string())
}

fn bench(args: BenchArgs) -> Result<ExitCode, Box<dyn std::error::Error>> {
    let mut config = if args.quick {
        BenchConfig::quick()
    } else {
        BenchConfig::default()
    };
    config.n_min = args.n_min.unwrap_or(config.n_min);
    config.n_max = args.n_max.unwrap_or(config.n_max);
    config.n_points = args.n_points.unwrap_or(config.n_points);
    config.ratios = args.ratios.unwrap_or(config.ratios);
    config.trials = args.trials.unwrap_or(config.trials);
    config.seed = args.seed.unwrap_or(config.seed);
    config.weight_source = args.weights.unwrap_or(config.weight_source);
    config.warmup = args.warmup.unwrap_or(config.warmup);
    config.instrument = args.probes;
    config.output_path = Some(args.out.clone());

    let outcome = run_benchmark(&config)?;
    if config.instrument {
        for r in &outcome.records {
            if let Some(p) = r.probe_mean {
                println!(
                    "n={} ratio={} {:<6} mean_seconds={:.3e} ops_per_sample={:.2}",
                    r.n,
                    r.ratio,
                    r.sampler.name(),
                    r.mean_seconds,
                    p / r.n as f64
                );
            }
        }
    }
    eprintln!(
        "wrote {} rows to {}",
        outcome.n_values.len(),
        args.out.display()
    );
    Ok(ExitCode::SUCCESS)
}

fn verify(args: VerifyArgs) -> Result<ExitCode, Box<dyn std::error::Error>> {
    let mut config = if args.quick {
        VerifyConfig::quick()
    } else {
        VerifyConfig::default()
    };
    config.seed = args.seed;
    config.gof_runs = args.gof_runs.unwrap_or(config.gof_runs);
    config.gof_draws = args.draws.unwrap_or(config.gof_draws);
    config.complexity_trials = args.trials.unwrap_or(config.complexity_trials);

    let stats = verify_statistics(&config)?;
    print!("{stats}");
    let ops = verify_complexity(&config)?;
    print!("{ops}");
    let violations = ops.violations();
    for v in &violations {
        eprintln!("bound violated: {v}");
    }
    if stats.passed() && violations.is_empty() {
        println!("verify: PASS");
        Ok(ExitCode::SUCCESS)
    } else {
        println!("verify: FAIL");
        Ok(ExitCode::FAILURE)
    }
}

fn sample(args: SampleArgs) -> Result<ExitCode, Box<dyn std::error::Error>> {
    let text = match &args.file {
        Some(path) => fs::read_to_string(path)?,
        None => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s)?;
            s
        }
    };
    let raw = text
        .split_whitespace()
        .map(|tok| {
            tok.parse::<f64>()
                .map_err(|e| format!("bad weight {tok:?}: {e}"))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let table = WeightTable::build(&raw)?;
    let out = args
        .sampler
        .sample(&table, args.n, &mut RngStream::new(args.seed));
    let stdout = io::stdout();
    let mut w = io::BufWriter::new(stdout.lock());
    for i in out.as_slice() {
        writeln!(w, "{i}")?;
    }
    w.flush()?;
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Bench(a) => bench(a),
        Command::Verify(a) => verify(a),
        Command::Sample(a) => sample(a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
