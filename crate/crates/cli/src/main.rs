//! `replaysim`: dimensions, single games and experiment suites from the
//! command line.
//!
//! Exit codes: 0 pass, 1 fail (or error), 2 inconclusive, 3 invalid
//! transcript. Worker count for trial fan-out comes from `REPLAYSIM_WORKERS`.

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use replay_core::dimensions::{dimension_report, WhichDims};
use replay_core::engine::{run_game, Commitment};
use replay_core::experiments::{
    convex_scaling, overall_exit, reproduce_table1, separation_demo, write_rows, ConvexParams,
    OutputFormat, ResultRow, SeparationParams, Table1Params, Table1Row,
};
use replay_core::{adversaries, classgen, learners, Error};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "replaysim",
    about = "Online learning against replayed labels: dimension calculators, game runner and experiment harness",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute combinatorial dimensions of a class, with certificates.
    Dims(DimsArgs),
    /// Run a single replay game and emit the transcript as JSON.
    Game(GameArgs),
    /// Run an experiment suite and emit result rows.
    #[command(subcommand)]
    Experiment(ExperimentCmd),
}

#[derive(Args)]
struct DimsArgs {
    /// Class file path or generator (thresholds:N, singletons:N,
    /// reverse_singletons:N, blowup:N, two_intervals:N).
    #[arg(long)]
    class: String,
    /// Comma-separated subset of vc,ldim,tdim,depth,extdim (default: all).
    #[arg(long)]
    which: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GameArgs {
    /// Learner name: closure, closure_extdim, closure_vcd1,
    /// conservative_threshold, halving, greedy_proper.
    #[arg(long)]
    learner: String,
    /// Adversary name: truth, descending, witness_chain, trap_exploit,
    /// geometric_stochastic, uniform_stochastic.
    #[arg(long)]
    adversary: String,
    #[arg(long)]
    class: String,
    #[arg(long)]
    rounds: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Target hypothesis index for truthful adversaries and fixed commitment.
    #[arg(long)]
    target: Option<usize>,
    /// Target commitment at the end of the game.
    #[arg(long, value_enum, default_value_t = CommitMode::Worst)]
    commit: CommitMode,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum CommitMode {
    /// Adversary-optimal consistent target.
    Worst,
    /// The hypothesis given by --target.
    Fixed,
}

#[derive(Subcommand)]
enum ExperimentCmd {
    /// Reproduce a mistake-bound table row.
    Table1(Table1Args),
    /// Proper vs improper separation demos.
    Separation(SeparationArgs),
    /// Convex-hull mistake scaling in d = 1, 2, 3.
    Convex(ConvexArgs),
}

#[derive(Args)]
struct CommonExperimentArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    rounds: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
}

#[derive(Args)]
struct Table1Args {
    /// Row name: thresholds-adaptive, thresholds-stochastic,
    /// intclosed-adaptive, general-adaptive, general-stochastic.
    #[arg(long)]
    row: String,
    /// Domain size for the generated class, where applicable.
    #[arg(long)]
    n: Option<usize>,
    /// Explicit class spec overriding the row default.
    #[arg(long)]
    class: Option<String>,
    #[command(flatten)]
    common: CommonExperimentArgs,
}

#[derive(Args)]
struct SeparationArgs {
    /// Grid size of the two-interval class.
    #[arg(long, default_value_t = 12)]
    n: usize,
    #[command(flatten)]
    common: CommonExperimentArgs,
}

#[derive(Args)]
struct ConvexArgs {
    #[arg(long)]
    d: usize,
    /// Comma-separated horizon grid, e.g. 64,128,256,512.
    #[arg(long)]
    t_grid: Option<String>,
    #[command(flatten)]
    common: CommonExperimentArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

impl From<FormatArg> for OutputFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Csv => OutputFormat::Csv,
            FormatArg::Json => OutputFormat::Json,
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            let invalid = e
                .downcast_ref::<Error>()
                .is_some_and(|err| matches!(err, Error::InvalidTranscript(_)));
            ExitCode::from(if invalid { 3 } else { 1 })
        }
    }
}

fn run() -> Result<u8> {
    let cli = Cli::parse();
    match cli.command {
        Command::Dims(args) => {
            let class = classgen::parse_class_spec(&args.class)?;
            let which = match &args.which {
                Some(s) => WhichDims::parse(s)?,
                None => WhichDims::all(),
            };
            let report = dimension_report(&class, which)?;
            let json = serde_json::to_string_pretty(&report)?;
            emit(&json, args.out.as_deref())?;
            Ok(0)
        }
        Command::Game(args) => {
            let class = classgen::parse_class_spec(&args.class)?;
            let mut learner = learners::by_name(&args.learner, &class)?;
            let cfg = adversaries::AdversaryConfig {
                seed: args.seed,
                target_index: args.target,
            };
            let mut adversary = adversaries::by_name(&args.adversary, &class, cfg)?;
            let commitment = match args.commit {
                CommitMode::Worst => Commitment::WorstCase,
                CommitMode::Fixed => {
                    let idx = args
                        .target
                        .context("--commit fixed requires --target <index>")?;
                    let h = class
                        .hypotheses()
                        .get(idx)
                        .with_context(|| format!("target index {idx} out of range"))?
                        .clone();
                    Commitment::Fixed(h)
                }
            };
            let transcript = run_game(
                learner.as_mut(),
                adversary.as_mut(),
                &class,
                args.rounds,
                commitment,
            )?;
            emit(&transcript.to_json()?, args.out.as_deref())?;
            Ok(if transcript.valid { 0 } else { 3 })
        }
        Command::Experiment(cmd) => {
            let (rows, common) = match cmd {
                ExperimentCmd::Table1(args) => {
                    let params = Table1Params {
                        row: Table1Row::parse(&args.row)?,
                        n: args.n,
                        class_spec: args.class.clone(),
                        rounds: args.common.rounds,
                        trials: args.common.trials,
                        seed: args.common.seed,
                    };
                    (reproduce_table1(&params)?, args.common)
                }
                ExperimentCmd::Separation(args) => {
                    let params = SeparationParams {
                        n: args.n,
                        rounds: args.common.rounds.unwrap_or(200),
                        seed: args.common.seed,
                    };
                    (separation_demo(&params)?, args.common)
                }
                ExperimentCmd::Convex(args) => {
                    let t_grid = match &args.t_grid {
                        Some(s) => Some(
                            s.split(',')
                                .map(|p| p.trim().parse::<usize>())
                                .collect::<std::result::Result<Vec<_>, _>>()
                                .context("--t-grid must be comma-separated integers")?,
                        ),
                        None => None,
                    };
                    let params = ConvexParams {
                        d: args.d,
                        t_grid,
                        trials: args.common.trials,
                        seed: args.common.seed,
                    };
                    (convex_scaling(&params)?, args.common)
                }
            };
            finish_experiment(&rows, &common)
        }
    }
}

fn finish_experiment(rows: &[ResultRow], common: &CommonExperimentArgs) -> Result<u8> {
    let content = write_rows(rows, common.format.into(), common.out.as_deref())?;
    if common.out.is_none() {
        print!("{content}");
    }
    for row in rows {
        eprintln!(
            "[{}] {} mean={:.4} bound={:.4} ({})",
            row.pass.as_str(),
            row.experiment,
            row.mean,
            row.bound,
            row.note
        );
    }
    Ok(overall_exit(rows) as u8)
}

fn emit(content: &str, out: Option<&std::path::Path>) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, content)?,
        None => println!("{content}"),
    }
    Ok(())
}
