use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;

#[derive(Debug, Parser)]
#[command(name = "belltool", version, about = "Values, bounds and certificates for linear nonlocal games")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classical, no-signaling and quantum values, norm bounds and certificates.
    Value(ValueArgs),
    /// Exclusivity graph of a two-player XOR game.
    Graph(GraphArgs),
    /// Genuine tripartite entanglement witness for a three-player game.
    Diew(DiewArgs),
}

#[derive(Debug, Clone, Args)]
pub struct GameArgs {
    /// Game source: chsh-d, chshn-d, mermin3, nlc, `xor-file PATH` or `file PATH`.
    #[arg(long, num_args = 1..=2, value_names = ["KIND", "PATH"], required = true)]
    pub game: Vec<String>,
    /// Local output size (a prime power).
    #[arg(long)]
    pub d: Option<usize>,
    /// Number of players (chshn-d) or dits per input (nlc).
    #[arg(long)]
    pub n: Option<usize>,
    /// nlc target table over F_d^(n-1), comma separated. Defaults to all ones.
    #[arg(long, value_delimiter = ',')]
    pub h: Option<Vec<usize>>,
    /// nlc weights over F_d^(n-1), comma separated. Defaults to uniform.
    #[arg(long, value_delimiter = ',')]
    pub ptilde: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Random restarts of the XOR SDP solver.
    #[arg(long, default_value_t = 8)]
    pub restarts: usize,
    /// Tolerance for certificate comparisons.
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    /// Work budget for exhaustive enumerations.
    #[arg(long)]
    pub budget: Option<f64>,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long)]
    pub workers: Option<usize>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ValueArgs {
    #[command(flatten)]
    pub game: GameArgs,
    #[command(flatten)]
    pub run: RunArgs,
    /// Comma separated: classical, ns, quantum-xor, bound, no-advantage,
    /// triviality, cc-sim. Defaults to classical,ns,bound plus quantum-xor
    /// for XOR games.
    #[arg(long, value_delimiter = ',')]
    pub analyses: Option<Vec<String>>,
    /// Players on one side of the cut for the norm bound, 1-based.
    #[arg(long, value_delimiter = ',')]
    pub partition: Option<Vec<usize>>,
    /// Seeded rounds for cc-sim.
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
}

#[derive(Debug, Args)]
pub struct GraphArgs {
    #[command(flatten)]
    pub game: GameArgs,
    #[command(flatten)]
    pub run: RunArgs,
    /// Also certify the Shannon capacity with a Lovász witness.
    #[arg(long)]
    pub certify_shannon: bool,
}

#[derive(Debug, Args)]
pub struct DiewArgs {
    #[command(flatten)]
    pub game: GameArgs,
    #[command(flatten)]
    pub run: RunArgs,
    /// Strategy JSON file; defaults to GHZ with Mermin measurements for mermin3.
    #[arg(long)]
    pub strategy: Option<PathBuf>,
    /// Mix the state with white noise at this visibility.
    #[arg(long)]
    pub visibility: Option<f64>,
}
