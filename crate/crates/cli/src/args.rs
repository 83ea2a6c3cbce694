use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use tourney_core::generate::Family;
use tourney_core::Mode;

#[derive(Debug, Parser)]
#[command(
    name = "tourney",
    version,
    about = "Tournament generators, orderings and D_k search"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a tournament file.
    Gen(GenArgs),
    /// Report backward edges, triangles and the measured triangle constant.
    Analyze(AnalyzeArgs),
    /// Search a tournament for D_k.
    FindDk(FindDkArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// Run a batch experiment and write CSV.
    Experiment(ExperimentArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FamilyArg {
    Transitive,
    Dk,
    CyclicBlowup,
    EpsRandom,
    PlantedLong,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Family {
        match f {
            FamilyArg::Transitive => Family::Transitive,
            FamilyArg::Dk => Family::Dk,
            FamilyArg::CyclicBlowup => Family::CyclicBlowup,
            FamilyArg::EpsRandom => Family::EpsRandom,
            FamilyArg::PlantedLong => Family::PlantedLong,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ModeArg {
    Paper,
    Adaptive,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Paper => Mode::Paper,
            ModeArg::Adaptive => Mode::Adaptive,
        }
    }
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long, value_enum)]
    pub family: FamilyArg,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub m: Option<usize>,
    /// Flip probability for eps-random.
    #[arg(long)]
    pub eps: Option<f64>,
    #[arg(long)]
    pub min_length: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output file; standard output when omitted.
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    #[arg(long, short)]
    pub input: PathBuf,
    /// Density for the triangle constant, as p/q or a decimal.
    #[arg(long)]
    pub eps: Option<String>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct FindDkArgs {
    #[arg(long, short)]
    pub input: PathBuf,
    #[arg(long)]
    pub k: usize,
    /// Farness, as p/q or a decimal.
    #[arg(long)]
    pub eps: String,
    #[arg(long, value_enum, default_value = "adaptive")]
    pub mode: ModeArg,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub stage_retries: Option<usize>,
    /// Wall-clock budget in milliseconds.
    #[arg(long)]
    pub budget_ms: Option<u64>,
    /// Write the JSON report here instead of standard output.
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Prop21,
    Lemma22,
    Lemma31,
    Thm21,
    Embedding,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub suite: Suite,
    /// Tournament files; suites fall back to a generated sweep without them.
    #[arg(long, short)]
    pub input: Vec<PathBuf>,
    /// Report from find-dk, or a bare trace or embedding (embedding suite).
    #[arg(long)]
    pub trace: Option<PathBuf>,
    /// Largest n of the exhaustive prop21 sweep.
    #[arg(long, default_value_t = 5)]
    pub max_n: usize,
    /// Instances per generated sweep.
    #[arg(long, default_value_t = 20)]
    pub count: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub min_length: Option<usize>,
    /// Density list (thm21 sweep) or farness (lemma22), p/q or decimal.
    #[arg(long, value_delimiter = ',')]
    pub eps: Vec<String>,
    /// Lower bound on triangles / (alpha^2 n^3) checked by thm21.
    #[arg(long, default_value_t = 1.0)]
    pub c: f64,
}

#[derive(Debug, Args)]
pub struct ExperimentArgs {
    /// Configuration file (.json or .toml).
    #[arg(long, short)]
    pub config: PathBuf,
    /// Overrides the output path of the configuration.
    #[arg(long, short)]
    pub out: Option<PathBuf>,
    /// Parallel rows.
    #[arg(long, env = "TOURNEY_JOBS")]
    pub jobs: Option<usize>,
}
