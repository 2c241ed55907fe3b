use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

mod commands;
mod report;

use report::{Report, Timings};

#[derive(Debug, Parser)]
#[command(name = "dsrecon", version, about = "Error balls, intersections and read coverage under one deletion and two substitutions")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Global {
    /// Indent the JSON report.
    #[arg(long, global = true)]
    pretty: bool,
    /// Cap on worker threads.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Add wall-clock timings to the report.
    #[arg(long, global = true)]
    timing: bool,
    /// Lift the enumeration size guardrail.
    #[arg(long, global = true)]
    force: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Enumerate or count an error ball.
    Ball(BallArgs),
    /// Intersect the one-deletion two-substitution balls of two words.
    Intersect(IntersectArgs),
    /// Largest pairwise ball intersection of a code.
    Coverage(CoverageArgs),
    /// Transmit, sample reads and decode, repeatedly.
    Simulate(SimulateArgs),
    /// Run an invariant suite.
    Verify(VerifyArgs),
    /// Intersection sizes of the extremal family, optionally with an exact fit.
    Extremal(ExtremalArgs),
}

#[derive(Debug, Args, Serialize)]
pub struct BallArgs {
    #[arg(long)]
    pub word: String,
    #[arg(long)]
    pub q: u8,
    /// Number of deletions.
    #[arg(long = "del", default_value_t = 0)]
    pub t: usize,
    /// Maximum number of substitutions.
    #[arg(long = "sub", default_value_t = 0)]
    pub s: usize,
    #[arg(long)]
    pub count_only: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MethodArg {
    Brute,
    Cells,
    Both,
}

#[derive(Debug, Args, Serialize)]
pub struct IntersectArgs {
    #[arg(long)]
    pub x: String,
    #[arg(long)]
    pub y: String,
    #[arg(long)]
    pub q: u8,
    #[arg(long, value_enum, default_value_t = MethodArg::Both)]
    pub method: MethodArg,
    /// List the members of the intersection.
    #[arg(long)]
    pub members: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CoverageModeArg {
    Auto,
    Exhaustive,
    Sampled,
}

#[derive(Debug, Args, Serialize)]
pub struct CoverageArgs {
    /// Code file: optional `q=<int> n=<int>` header, one codeword per line.
    #[arg(long)]
    pub code: PathBuf,
    #[arg(long)]
    pub q: Option<u8>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, value_enum, default_value_t = CoverageModeArg::Auto)]
    pub mode: CoverageModeArg,
    /// Pairs to draw in sampled mode.
    #[arg(long, default_value_t = 100_000)]
    pub pairs: usize,
    /// Required in sampled mode.
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SampleModeArg {
    /// Uniform over the distinct members of the ball.
    Uniform,
    /// Delete a uniform position, then substitute each coordinate.
    Process,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SelectionArg {
    Uniform,
    EligibleOnly,
}

#[derive(Debug, Args, Serialize)]
pub struct SimulateArgs {
    #[arg(long)]
    pub code: PathBuf,
    #[arg(long)]
    pub q: Option<u8>,
    #[arg(long)]
    pub n: Option<usize>,
    /// Distinct reads per trial.
    #[arg(long)]
    pub reads: usize,
    #[arg(long, default_value_t = 1000)]
    pub trials: usize,
    #[arg(long)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = SampleModeArg::Uniform)]
    pub mode: SampleModeArg,
    /// How the transmitted codeword is drawn.
    #[arg(long, value_enum, default_value_t = SelectionArg::Uniform)]
    pub selection: SelectionArg,
}

#[derive(Debug, Args, Serialize)]
pub struct VerifyArgs {
    /// xi, lemma2, cells, lemma3-tables, claims, bound or all.
    #[arg(long)]
    pub suite: String,
    /// Alphabet sizes, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub q: Vec<u8>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub n_max: Option<usize>,
    #[arg(long)]
    pub samples: Option<usize>,
    /// Include the exhaustive parts of the suite.
    #[arg(long)]
    pub exhaustive: bool,
    /// Seed for the sampled parts; the default is fixed, so runs repeat exactly.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyMethodArg {
    Brute,
    Cells,
}

#[derive(Debug, Args, Serialize)]
pub struct ExtremalArgs {
    #[arg(long)]
    pub q: u8,
    /// Inclusive range of even lengths, `lo:hi`.
    #[arg(long)]
    pub n_range: String,
    #[arg(long)]
    pub fit: bool,
    #[arg(long, value_enum, default_value_t = FamilyMethodArg::Cells)]
    pub method: FamilyMethodArg,
    /// Also write the per-length sizes as CSV.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

/// What a command hands back before the report is assembled.
pub struct Outcome {
    pub result: serde_json::Value,
    pub passed: bool,
    pub seed: Option<u64>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.global.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
            eprintln!("dsrecon: error: {e}");
            return ExitCode::from(2);
        }
    }
    let mut timings = Timings::default();
    let g = &cli.global;
    let (name, parameters, outcome) = match &cli.command {
        Command::Ball(a) => ("ball", to_value(a), commands::ball(a, g, &mut timings)),
        Command::Intersect(a) => ("intersect", to_value(a), commands::intersect(a, g, &mut timings)),
        Command::Coverage(a) => ("coverage", to_value(a), commands::coverage(a, g, &mut timings)),
        Command::Simulate(a) => ("simulate", to_value(a), commands::simulate(a, g, &mut timings)),
        Command::Verify(a) => ("verify", to_value(a), commands::verify(a, g, &mut timings)),
        Command::Extremal(a) => ("extremal", to_value(a), commands::extremal(a, g, &mut timings)),
    };
    let outcome = match outcome {
        Ok(o) => o,
        Err(e) => {
            eprintln!("dsrecon: error: {e}");
            return ExitCode::from(e.exit_code());
        }
    };
    let report = Report {
        schema_version: report::SCHEMA_VERSION,
        tool: "dsrecon",
        version: env!("CARGO_PKG_VERSION"),
        command: name,
        parameters,
        seed: outcome.seed,
        force: g.force,
        passed: outcome.passed,
        result: outcome.result,
        timing_ms: g.timing.then(|| timings.into_map()),
    };
    println!("{}", report.render(g.pretty));
    if outcome.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn to_value(v: &impl Serialize) -> serde_json::Value {
    serde_json::to_value(v).expect("arguments serialize")
}
