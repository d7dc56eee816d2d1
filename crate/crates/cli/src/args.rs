//! Command-line grammar. Every argument struct doubles as the recorded
//! configuration of its command.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

#[derive(Debug, Parser)]
#[command(name = "listcolour", version, about = "List colouring of r-partite hypergraphs through preference orders")]
pub struct Cli {
    /// Write the JSON run record here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Cap on worker threads.
    #[arg(long, global = true, env = "LISTCOLOUR_THREADS")]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact f(r, theta, m) by enumerating preference orders.
    FExact(FExactArgs),
    /// f_P(theta) of one preference order.
    FEval(FEvalArgs),
    /// Exact h(r, theta, n) by enumerating perfect matchings.
    HExact(HExactArgs),
    /// Local search for a cover with small h.
    CoverOpt(CoverOptArgs),
    /// Convert between preference orders and covers.
    #[command(subcommand)]
    Convert(ConvertCommand),
    /// Closed-form and model-based quantities.
    #[command(subcommand)]
    Analytic(AnalyticCommand),
    /// Generate an r-partite r-graph.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Remove butterflies from a regular graph by edge swaps.
    Repair(RepairArgs),
    /// Check property I or D.
    Check(CheckArgs),
    /// Colour a graph from lists.
    #[command(subcommand)]
    Colour(ColourCommand),
    /// Decide whether a graph can be coloured from given lists.
    Choosable(ChoosableArgs),
    /// Re-check the witnesses embedded in a run record.
    Verify(VerifyArgs),
    /// Repeated colouring runs summarised as CSV.
    #[command(subcommand)]
    Experiment(ExperimentCommand),
}

impl Command {
    pub fn name(&self) -> String {
        match self {
            Command::FExact(_) => "f-exact".into(),
            Command::FEval(_) => "f-eval".into(),
            Command::HExact(_) => "h-exact".into(),
            Command::CoverOpt(_) => "cover-opt".into(),
            Command::Convert(c) => format!("convert {}", c.name()),
            Command::Analytic(c) => format!("analytic {}", c.name()),
            Command::Gen(c) => format!("gen {}", c.name()),
            Command::Repair(_) => "repair".into(),
            Command::Check(a) => format!("check {}", a.property.name()),
            Command::Colour(c) => format!("colour {}", c.name()),
            Command::Choosable(_) => "choosable".into(),
            Command::Verify(_) => "verify".into(),
            Command::Experiment(_) => "experiment sweep".into(),
        }
    }
}

/// A rational `theta` as `a/b`, an integer, or a decimal rounded to `--denominator`.
#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct ThetaArg {
    #[arg(long, default_value = "0")]
    pub theta: String,
    /// Denominator for rounding a decimal `theta`.
    #[arg(long)]
    pub denominator: Option<u64>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct FExactArgs {
    #[arg(long)]
    pub r: usize,
    #[arg(long)]
    pub m: usize,
    #[command(flatten)]
    #[serde(flatten)]
    pub theta: ThetaArg,
    /// Largest number of candidate orders to enumerate.
    #[arg(long, default_value_t = 1_000_000_000)]
    pub budget: u128,
}

/// A preference order from a file or by name.
#[derive(Debug, Clone, Args, Serialize)]
pub struct OrderArg {
    /// JSON preference order, or a run record containing one.
    #[arg(long, conflicts_with = "named")]
    pub order: Option<String>,
    /// identity, reverse, rotation:S, pa, pb or pc.
    #[arg(long, requires_all = ["r", "m"])]
    pub named: Option<String>,
    #[arg(long)]
    pub r: Option<usize>,
    #[arg(long)]
    pub m: Option<usize>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct FEvalArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub order: OrderArg,
    #[command(flatten)]
    #[serde(flatten)]
    pub theta: ThetaArg,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct HExactArgs {
    #[arg(long)]
    pub r: usize,
    #[arg(long)]
    pub n: usize,
    #[command(flatten)]
    #[serde(flatten)]
    pub theta: ThetaArg,
    /// Largest number of perfect matchings to enumerate.
    #[arg(long, default_value_t = listcolour::cover::DEFAULT_MATCHING_BUDGET)]
    pub budget: u128,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ObjectiveArg {
    Sum,
    Max,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct CoverOptArgs {
    #[arg(long)]
    pub r: usize,
    #[arg(long)]
    pub n: usize,
    #[command(flatten)]
    #[serde(flatten)]
    pub theta: ThetaArg,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, default_value_t = 8)]
    pub restarts: usize,
    #[arg(long, default_value_t = 100_000)]
    pub max_iters: usize,
    #[arg(long, default_value_t = 64)]
    pub kicks: usize,
    #[arg(long, value_enum, default_value_t = ObjectiveArg::Sum)]
    pub objective: ObjectiveArg,
    /// Write the per-pass trace of the winning restart as CSV.
    #[arg(long)]
    pub trace: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum ConvertCommand {
    /// Preference order to an (r-1)-cover.
    ToCover(ToCoverArgs),
    /// Cover to a preference order.
    ToOrder(ToOrderArgs),
}

impl ConvertCommand {
    fn name(&self) -> &'static str {
        match self {
            ConvertCommand::ToCover(_) => "to-cover",
            ConvertCommand::ToOrder(_) => "to-order",
        }
    }
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ToCoverArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub order: OrderArg,
    #[command(flatten)]
    #[serde(flatten)]
    pub theta: ThetaArg,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ToOrderArgs {
    /// JSON cover, or a run record containing one.
    #[arg(long, default_value = "-")]
    pub cover: String,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModelChoice {
    /// Known values for r = 2, 3.
    Exact,
    /// The lower bound H(r-1, theta).
    LowerH,
    /// Covers found by the optimizer.
    Optimized,
    /// Knots read from a CSV file.
    Table,
}

/// Selection of a model of f(r, theta).
#[derive(Debug, Clone, Args, Serialize)]
pub struct ModelArgs {
    /// Defaults to exact for r = 2, 3 and lower-h otherwise.
    #[arg(long, value_enum)]
    pub model: Option<ModelChoice>,
    /// CSV knots `theta,f` for the table model.
    #[arg(long)]
    pub knots: Option<String>,
    /// Number of theta values the optimized model samples.
    #[arg(long, default_value_t = 8)]
    pub model_steps: usize,
    /// Grid size of the optimized model's covers.
    #[arg(long, default_value_t = 200)]
    pub model_n: usize,
    /// Denominator theta is rounded to in the optimized model.
    #[arg(long, default_value_t = 1_000_000)]
    pub model_den: u64,
    #[arg(long, default_value_t = 0)]
    pub model_seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum AnalyticCommand {
    /// w(r, theta).
    W(RThetaArgs),
    /// phi_r, the peak of w(r, .).
    Phi(RArgs),
    /// H(r, theta).
    #[command(name = "H")]
    H(RThetaArgs),
    /// g(r, alpha) under a model of f.
    G(GArgs),
    /// g(r, .) on an evenly spaced grid of alpha.
    GTable(GTableArgs),
    /// Lower and upper bounds on f(r, 0).
    Bounds(RArgs),
}

impl AnalyticCommand {
    fn name(&self) -> &'static str {
        match self {
            AnalyticCommand::W(_) => "w",
            AnalyticCommand::Phi(_) => "phi",
            AnalyticCommand::H(_) => "H",
            AnalyticCommand::G(_) => "g",
            AnalyticCommand::GTable(_) => "g-table",
            AnalyticCommand::Bounds(_) => "bounds",
        }
    }
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct RArgs {
    #[arg(long)]
    pub r: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct RThetaArgs {
    #[arg(long)]
    pub r: usize,
    #[arg(long)]
    pub theta: f64,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct GArgs {
    #[arg(long)]
    pub r: usize,
    #[arg(long)]
    pub alpha: f64,
    #[command(flatten)]
    #[serde(flatten)]
    pub model: ModelArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct GTableArgs {
    #[arg(long)]
    pub r: usize,
    #[arg(long, default_value_t = 0.0)]
    pub alpha_min: f64,
    /// Defaults to r - 1.
    #[arg(long)]
    pub alpha_max: Option<f64>,
    #[arg(long, default_value_t = 50)]
    pub steps: usize,
    #[command(flatten)]
    #[serde(flatten)]
    pub model: ModelArgs,
    /// Also write the curve as CSV.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum GenCommand {
    /// Each possible edge independently with probability p.
    Gnrp(GnrpArgs),
    /// Union of d random perfect matchings.
    Matchings(MatchingsArgs),
    /// The 3-graph of the cyclic Latin square of order n.
    Latin(LatinArgs),
}

impl GenCommand {
    fn name(&self) -> &'static str {
        match self {
            GenCommand::Gnrp(_) => "gnrp",
            GenCommand::Matchings(_) => "matchings",
            GenCommand::Latin(_) => "latin",
        }
    }
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct GnrpArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub r: usize,
    #[arg(long)]
    pub p: f64,
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct MatchingsArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub r: usize,
    #[arg(long)]
    pub d: usize,
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct LatinArgs {
    #[arg(long)]
    pub n: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct RepairArgs {
    /// JSON graph, or a run record containing one.
    #[arg(long, default_value = "-")]
    pub graph: String,
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
pub enum PropertyArg {
    I,
    D,
}

impl PropertyArg {
    fn name(&self) -> &'static str {
        match self {
            PropertyArg::I => "I",
            PropertyArg::D => "D",
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeArg {
    Exhaustive,
    Sampled,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct CheckArgs {
    #[arg(value_enum, ignore_case = true)]
    pub property: PropertyArg,
    #[arg(long, default_value = "-")]
    pub graph: String,
    /// Degree parameter; the average degree when omitted.
    #[arg(long)]
    pub d: Option<f64>,
    #[arg(long, value_enum, default_value_t = ModeArg::Sampled)]
    pub mode: ModeArg,
    /// Sampled trials per round.
    #[arg(long, default_value_t = 64)]
    pub budget: usize,
    /// Check the primed variant.
    #[arg(long)]
    pub primed: bool,
    #[arg(long)]
    pub seed: Option<u64>,
}

/// Lists read from a file, or drawn uniformly.
#[derive(Debug, Clone, Args, Serialize)]
pub struct ListArgs {
    /// JSON list assignment, or a run record containing one.
    #[arg(long, conflicts_with_all = ["ell", "t"])]
    pub lists: Option<String>,
    /// List size; each algorithm has its own default.
    #[arg(long)]
    pub ell: Option<usize>,
    /// Palette size; each algorithm has its own default.
    #[arg(long)]
    pub t: Option<usize>,
    /// Seed of the list draw; the run seed when omitted.
    #[arg(long)]
    pub list_seed: Option<u64>,
}

#[derive(Debug, Subcommand)]
pub enum ColourCommand {
    /// Palette blocks, promises and per-block greedy colouring.
    Block(BlockArgs),
    /// Random free and forbidden colours (r = 3).
    Freeforbidden(FreeArgs),
    /// Greedy colouring along a degeneracy order.
    Greedy(GreedyArgs),
}

impl ColourCommand {
    fn name(&self) -> &'static str {
        match self {
            ColourCommand::Block(_) => "block",
            ColourCommand::Freeforbidden(_) => "freeforbidden",
            ColourCommand::Greedy(_) => "greedy",
        }
    }
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct CertificateArgs {
    /// Replay the popularity argument on the colouring found.
    #[arg(long)]
    pub certificate: bool,
    #[command(flatten)]
    #[serde(flatten)]
    pub model: ModelArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct BlockArgs {
    #[arg(long, default_value = "-")]
    pub graph: String,
    #[command(flatten)]
    #[serde(flatten)]
    pub lists: ListArgs,
    /// Derive k, delta, m and the order from the degree (the default).
    #[arg(long, conflicts_with_all = ["k", "delta", "m", "order"])]
    pub auto: bool,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub delta: Option<f64>,
    #[arg(long)]
    pub m: Option<usize>,
    /// Degree used for derived parameters; the average degree when omitted.
    #[arg(long)]
    pub d: Option<f64>,
    /// identity, reverse, rotation:S, pa, pb or pc.
    #[arg(long)]
    pub order: Option<String>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Attempts with fresh block partitions before giving up.
    #[arg(long, default_value_t = 1)]
    pub attempts: usize,
    #[command(flatten)]
    #[serde(flatten)]
    pub certificate: CertificateArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct FreeArgs {
    #[arg(long, default_value = "-")]
    pub graph: String,
    #[command(flatten)]
    #[serde(flatten)]
    pub lists: ListArgs,
    #[arg(long)]
    pub d: Option<f64>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Attempts with fresh colour roles before giving up.
    #[arg(long, default_value_t = 10)]
    pub attempts: usize,
    #[command(flatten)]
    #[serde(flatten)]
    pub certificate: CertificateArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct GreedyArgs {
    #[arg(long, default_value = "-")]
    pub graph: String,
    #[command(flatten)]
    #[serde(flatten)]
    pub lists: ListArgs,
    /// Degeneracy bound; the graph's degeneracy when omitted.
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[command(flatten)]
    #[serde(flatten)]
    pub certificate: CertificateArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ChoosableArgs {
    #[arg(long, default_value = "-")]
    pub graph: String,
    #[command(flatten)]
    #[serde(flatten)]
    pub lists: ListArgs,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Search nodes before answering unknown.
    #[arg(long, default_value_t = listcolour::colouring::DEFAULT_CHOICE_BUDGET)]
    pub budget: u64,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct VerifyArgs {
    /// Run record to check.
    #[arg(default_value = "-")]
    pub record: String,
}

#[derive(Debug, Subcommand)]
pub enum ExperimentCommand {
    /// Success of a colouring algorithm over seeds and list sizes.
    Sweep(SweepArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Block,
    Freeforbidden,
    Greedy,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SweepArgs {
    #[arg(long, value_enum)]
    pub algorithm: Algorithm,
    #[arg(long, default_value = "-")]
    pub graph: String,
    #[arg(long)]
    pub ell_min: usize,
    #[arg(long)]
    pub ell_max: usize,
    #[arg(long, default_value_t = 1)]
    pub ell_step: usize,
    /// Palette size as a multiple of the list size.
    #[arg(long, default_value_t = 2.0)]
    pub t_factor: f64,
    /// Fixed palette size, overriding the factor.
    #[arg(long)]
    pub t: Option<usize>,
    #[arg(long, default_value_t = 10)]
    pub seeds: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Attempts per run (block partitions or free/forbidden roles).
    #[arg(long, default_value_t = 1)]
    pub attempts: usize,
}
