//! `weyr`: exact Jordan structure of matrices and perturbation bound checks.
//!
//! Commands: analyze | bounds | fuzz | construct | examples. Matrices travel
//! as the JSON format of the core library; every numeric value on the
//! command line is an exact decimal string ("a" or "a/b"), never a float.
//!
//! Exit codes are a stable contract for CI: 0 ok, 1 violation or failed
//! certificate, 2 parse error, 3 field mismatch, 4 shape mismatch, 5 rank
//! mismatch, 6 dependent input classes.

mod commands;

use clap::{Args, Parser, Subcommand};

pub(crate) const EXIT_VIOLATION: i32 = 1;
pub(crate) const EXIT_PARSE: i32 = 2;
pub(crate) const EXIT_FIELD: i32 = 3;
pub(crate) const EXIT_SHAPE: i32 = 4;
pub(crate) const EXIT_RANK: i32 = 5;
pub(crate) const EXIT_DEPENDENT: i32 = 6;

#[derive(Parser)]
#[command(
    name = "weyr",
    about = "Exact Jordan structure and finite-rank perturbation bounds",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Weyr/Segre characteristics, Jordan chains and the root subspace of a
    /// matrix at one eigenvalue (or all of its field eigenvalues).
    Analyze(AnalyzeArgs),
    /// Run the kernel bounds, the root-subspace bounds and the Savchenko
    /// lower bound on a pair of matrices.
    Bounds(BoundsArgs),
    /// Seeded random campaigns over perturbation pairs, or the sharpness
    /// sweep preset.
    Fuzz(FuzzArgs),
    /// Transfer chain classes of T to certified classes of S for a rank-one
    /// perturbation pair.
    Construct(ConstructArgs),
    /// Emit the built-in example families as matrix files.
    Examples(ExamplesArgs),
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Matrix file (JSON).
    matrix: String,
    /// Exact eigenvalue candidate, e.g. "3" or "-1/2"; all field eigenvalues
    /// when omitted.
    #[arg(long)]
    lambda: Option<String>,
    /// Kernel power cap; defaults to the matrix dimension.
    #[arg(long)]
    n_max: Option<usize>,
    /// Emit a machine-readable report instead of text.
    #[arg(long)]
    json: bool,
    /// Write the report to a file instead of stdout.
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args)]
struct BoundsArgs {
    /// Unperturbed matrix file.
    s: String,
    /// Perturbed matrix file; same field and shape as S.
    t: String,
    /// Exact eigenvalue candidate; all field eigenvalues of S and T plus 0
    /// when omitted.
    #[arg(long)]
    lambda: Option<String>,
    /// Kernel power cap; defaults to the matrix dimension.
    #[arg(long)]
    n_max: Option<usize>,
    #[arg(long)]
    json: bool,
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args)]
struct FuzzArgs {
    /// Coefficient field: "q" or "gf".
    #[arg(long, default_value = "q")]
    field: String,
    /// Prime modulus for --field gf.
    #[arg(long)]
    p: Option<u64>,
    #[arg(long, default_value_t = 1000)]
    trials: u64,
    #[arg(long, default_value_t = 2)]
    m_min: usize,
    #[arg(long, default_value_t = 8)]
    m_max: usize,
    #[arg(long, default_value_t = 0)]
    k_min: usize,
    #[arg(long, default_value_t = 3)]
    k_max: usize,
    /// Entries of generated matrices are uniform in [-bound, bound].
    #[arg(long, default_value_t = 3)]
    bound: i64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Kernel power cap per trial; defaults to the trial dimension.
    #[arg(long)]
    n_max: Option<usize>,
    /// Skip the restriction-chain interlacing checks.
    #[arg(long)]
    no_interlacing: bool,
    /// Named campaign preset; "sharp-sweep" tabulates the example family for
    /// m = 2..6, k = 1..3.
    #[arg(long)]
    preset: Option<String>,
    /// Write the full JSON report here.
    #[arg(long)]
    out: Option<String>,
    /// Write the per-(k, n) maximum gaps as CSV here.
    #[arg(long)]
    csv: Option<String>,
}

#[derive(Args)]
struct ConstructArgs {
    /// Target matrix file (classes are certified against S).
    s: String,
    /// Source matrix file (chain tops belong to T).
    t: String,
    /// Kernel power: tops represent classes of ker(T-lambda)^{n+1} modulo
    /// ker(T-lambda)^n.
    #[arg(long)]
    n: usize,
    /// Matrix file whose columns are the top vectors.
    #[arg(long)]
    tops: String,
    /// Exact eigenvalue; defaults to 0.
    #[arg(long)]
    lambda: Option<String>,
    /// Write the certificate JSON here instead of stdout.
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args)]
struct ExamplesArgs {
    /// Example family: "sharp" or "shift".
    kind: String,
    /// Block size for the sharp family.
    #[arg(long, default_value_t = 5)]
    m: usize,
    /// Number of blocks for the sharp family.
    #[arg(long, default_value_t = 1)]
    k: usize,
    /// Truncation size for the shift family (matrices are 2N x 2N).
    #[arg(long = "N", default_value_t = 10)]
    n: usize,
    /// Coefficient field: "q" or "gf".
    #[arg(long, default_value = "q")]
    field: String,
    /// Prime modulus for --field gf.
    #[arg(long)]
    p: Option<u64>,
    /// Directory the matrix files are written into.
    #[arg(long, default_value = ".")]
    out_dir: String,
}

fn main() {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Analyze(args) => commands::analyze(args),
        Command::Bounds(args) => commands::bounds(args),
        Command::Fuzz(args) => commands::fuzz(args),
        Command::Construct(args) => commands::construct(args),
        Command::Examples(args) => commands::examples(args),
    };
    match outcome {
        Ok(code) => std::process::exit(code),
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            std::process::exit(failure.code);
        }
    }
}

/// A failure with its contractual exit code.
pub(crate) struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    pub fn new(code: i32, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}
