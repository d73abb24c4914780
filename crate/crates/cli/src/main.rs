use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rumor_core::analysis::{ColorLabeling, SweepOptions, DEFAULT_BINS};

mod commands;
mod failure;
mod output;
mod scenario;

use failure::Failure;

/// Rumor and misinformation diffusion on scale-free networks.
///
/// Directory outputs default to `$RUMORSIM_OUT/<name>` (or `./rumorsim-out/<name>`)
/// when `--out` is omitted. Exit codes: 0 success, 1 config error, 2 runtime error.
#[derive(Debug, Parser)]
#[command(name = "rumorsim", version, about)]
struct Cli {
    /// Worker threads for batch and sweep runs. Results do not depend on it.
    #[arg(long, short = 'j', global = true, value_name = "N")]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Grow a preferential-attachment graph and fit its degree distribution.
    Generate(GenerateArgs),
    /// Run one simulation of a scenario.
    Run(RunArgs),
    /// Run a scenario many times and aggregate the runs.
    Batch(BatchArgs),
    /// Run a batch at every value of a parameter grid.
    Sweep(SweepArgs),
    /// Recompute aggregate reports from saved `trace.json` files.
    Analyze(AnalyzeArgs),
    /// Print or save a built-in scenario as an editable TOML file.
    DumpScenario(DumpArgs),
}

#[derive(Debug, Args)]
struct OutArgs {
    /// Output directory, created atomically.
    #[arg(long, short)]
    out: Option<PathBuf>,
    /// Replace the output directory if it already exists.
    #[arg(long)]
    force: bool,
}

#[derive(Debug, Args)]
struct GenerateArgs {
    #[arg(long, short)]
    nodes: usize,
    /// Edges added per new node.
    #[arg(long, default_value_t = 2)]
    m: usize,
    #[arg(long, short)]
    seed: u64,
    /// Smallest degree entering the fit. Defaults to m + 1.
    #[arg(long)]
    k_min: Option<usize>,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Debug, Args)]
struct ScenarioArgs {
    /// Scenario file, or a built-in such as `true_news` or `hoax_debunk:n=5000`.
    #[arg(long)]
    scenario: String,
    #[arg(long, short)]
    seed: u64,
    /// Override a scenario field, e.g. `--set params.t_active=20`. Repeatable.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    sets: Vec<String>,
}

#[derive(Debug, Args)]
struct AnalysisArgs {
    /// Histogram bins over [0, 1].
    #[arg(long, default_value_t = DEFAULT_BINS)]
    bins: usize,
    /// Largest final-threshold gap kept on diffusion-subgraph edges.
    #[arg(long, default_value_t = 1.0)]
    delta_th: f64,
    /// Node classes for assortativity.
    #[arg(long, value_enum, default_value_t = Labeling::Color)]
    labeling: Labeling,
}

impl AnalysisArgs {
    fn options(&self) -> SweepOptions {
        SweepOptions {
            bins: self.bins,
            delta_th: self.delta_th,
            labeling: self.labeling.into(),
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Labeling {
    /// Last active color: spontaneous, influenced, persuaded or debunker.
    Color,
    /// Spreaders against debunkers.
    Role,
}

impl From<Labeling> for ColorLabeling {
    fn from(l: Labeling) -> Self {
        match l {
            Labeling::Color => ColorLabeling::Color,
            Labeling::Role => ColorLabeling::Role,
        }
    }
}

#[derive(Debug, Args)]
struct RunArgs {
    #[command(flatten)]
    scenario: ScenarioArgs,
    /// Largest final-threshold gap kept in `echo.gexf`.
    #[arg(long, default_value_t = 1.0)]
    delta_th: f64,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Debug, Args)]
struct BatchArgs {
    #[command(flatten)]
    scenario: ScenarioArgs,
    /// Number of runs. Defaults to the scenario's `n_runs`.
    #[arg(long)]
    runs: Option<usize>,
    #[command(flatten)]
    analysis: AnalysisArgs,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[command(flatten)]
    scenario: ScenarioArgs,
    /// `key=from:to:count` or `key=v1,v2,...`.
    #[arg(long)]
    param: String,
    /// Runs per grid point. Defaults to the scenario's `n_runs`.
    #[arg(long)]
    runs: Option<usize>,
    /// Also write every run's artifacts under `points/<i>/runs/`.
    #[arg(long)]
    keep_runs: bool,
    #[command(flatten)]
    analysis: AnalysisArgs,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Debug, Args)]
struct AnalyzeArgs {
    /// Directory searched recursively for `trace.json` files.
    #[arg(long)]
    trace_dir: PathBuf,
    #[command(flatten)]
    analysis: AnalysisArgs,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Debug, Args)]
struct DumpArgs {
    /// Built-in name, optionally with arguments (`echo:r=0.6,n=1000`).
    #[arg(long)]
    name: Option<String>,
    /// List the built-in scenarios.
    #[arg(long, conflicts_with = "name")]
    list: bool,
    /// Destination file; standard output when omitted or `-`.
    #[arg(long, short)]
    out: Option<PathBuf>,
}

fn dispatch(cli: Cli) -> Result<(), Failure> {
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            return Err(Failure::config("--jobs must be at least 1"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .map_err(Failure::runtime)?;
    }
    match cli.command {
        Command::Generate(a) => commands::generate(a),
        Command::Run(a) => commands::run(a),
        Command::Batch(a) => commands::batch(a),
        Command::Sweep(a) => commands::sweep(a),
        Command::Analyze(a) => commands::analyze(a),
        Command::DumpScenario(a) => commands::dump_scenario(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let kind = match e {
                Failure::Config(_) => "config error",
                Failure::Runtime(_) => "error",
            };
            eprintln!("rumorsim: {kind}: {e}");
            e.exit_code()
        }
    }
}
