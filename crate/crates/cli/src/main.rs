use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use poeq_cli::{parse_generate_spec, run, run_batch, AlgorithmChoice, OracleConfig, RunConfig, Source};

/// Exit code when an enabled oracle disagrees with the solver.
const ORACLE_MISMATCH: u8 = 3;

/// Exact Pareto-optimal equitable division of divisible items among three
/// players.
#[derive(Parser)]
#[command(name = "poeq", version, about)]
struct Cli {
    /// Instance file (JSON); '-' reads stdin
    #[arg(long, conflicts_with_all = ["generate", "batch"])]
    input: Option<String>,

    /// Generate an instance: m=K,seed=S (optional ,gp=RETRIES for general position)
    #[arg(long, conflicts_with = "batch")]
    generate: Option<String>,

    /// Solve every JSON instance document in a JSON-lines file
    #[arg(long)]
    batch: Option<PathBuf>,

    /// Descent algorithm: simple, steepest or both
    #[arg(long, default_value = "steepest")]
    algorithm: String,

    /// Independent checks, comma-separated: lp, grid=N, support
    #[arg(long)]
    oracle: Option<String>,

    /// Write an SVG diagram (simplex, segments, graph, descent path)
    #[arg(long)]
    svg: Option<PathBuf>,

    /// Write the arrangement graph in DOT format
    #[arg(long)]
    dot: Option<PathBuf>,

    /// Emit JSON instead of text
    #[arg(long)]
    json: bool,

    /// Rescale input rows to sum to 1 instead of rejecting them
    #[arg(long)]
    normalize: bool,

    /// Enumeration cap for the brute-force support oracle (default 12)
    #[arg(long)]
    cap: Option<usize>,
}

fn config_from(cli: &Cli) -> anyhow::Result<RunConfig> {
    let source = if let Some(spec) = &cli.generate {
        parse_generate_spec(spec)?
    } else if let Some(input) = &cli.input {
        if input == "-" {
            Source::Stdin
        } else {
            Source::File(PathBuf::from(input))
        }
    } else if cli.batch.is_some() {
        // Placeholder; batch mode reads instances per line.
        Source::Stdin
    } else {
        anyhow::bail!("nothing to solve: pass --input, --generate or --batch (see --help)");
    };
    let mut config = RunConfig::new(source);
    config.algorithm = cli.algorithm.parse::<AlgorithmChoice>()?;
    if let Some(spec) = &cli.oracle {
        config.oracles = OracleConfig::parse(spec)?;
    }
    config.json = cli.json;
    config.normalize = cli.normalize;
    config.cap = cli.cap;
    config.svg_path = cli.svg.clone();
    config.dot_path = cli.dot.clone();
    Ok(config)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = config_from(&cli).and_then(|config| {
        let stdout = std::io::stdout();
        let mut out = stdout.lock();
        let ok = match &cli.batch {
            Some(path) => run_batch(path, &config, &mut out)?,
            None => run(&config, &mut out)?,
        };
        out.flush()?;
        Ok(ok)
    });
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(ORACLE_MISMATCH),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}
