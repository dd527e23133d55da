//! `grasspoly`: build, verify and integrate Grassmannian polylogarithm elements.
//!
//! Exit codes: 0 success, 1 a check failed, 2 bad path, 3 pole on the path,
//! 4 quadrature budget exhausted, 5 any other error.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "grasspoly", version, about = "Grassmannian polylogarithms: exact elements, identity checks, iterated integrals")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Seed for every random choice
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Output file (stdout if absent)
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Permit weight 4 and above
    #[arg(long, global = true)]
    allow_large: bool,
    /// Include wall-clock times in reports (output is then not reproducible)
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write the canonical element I_n
    Element {
        #[arg(long, default_value_t = 2)]
        n: usize,
    },
    /// Run exact identity checks; exits 1 if any fails
    Verify(VerifyArgs),
    /// Iterated integral of a word or element along a path
    Integrate(IntegrateArgs),
    /// Tabulate a special function
    Table(TableArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Comparison,
    Relations,
    Scale,
    Integrability,
    Deltar,
    Coproduct,
    All,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    suite: Suite,
    /// Weight; repeat to run several
    #[arg(long = "n", default_values_t = [2])]
    n: Vec<usize>,
    /// How the comparison constant is judged: strict or mod2
    #[arg(long, default_value = "mod2")]
    mode: String,
    /// Random points for the integrability certificate
    #[arg(long, default_value_t = 20)]
    points: usize,
    /// Flip the sign of one term of I_n first
    #[arg(long)]
    mutate: bool,
}

#[derive(Args, Debug)]
pub struct IntegrateArgs {
    /// Path JSON file
    #[arg(long, required_unless_present = "recipe")]
    path: Option<PathBuf>,
    /// Word as JSON, inline or a file: [[["D[2]",-1]],[["D[1]",1]]]
    #[arg(long, conflicts_with_all = ["element", "recipe"])]
    word: Option<String>,
    /// Element JSON file, or I2, I3, …
    #[arg(long, conflicts_with = "recipe")]
    element: Option<String>,
    /// JSON file with "path", "word" or "element", and optional "initial"
    #[arg(long)]
    recipe: Option<PathBuf>,
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
    /// Panel budget; exhausting it exits with code 4
    #[arg(long, default_value_t = 50_000)]
    max_panels: usize,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Function {
    Li,
    BlochWigner,
    Rogers,
    L2g,
}

#[derive(Args, Debug)]
pub struct TableArgs {
    #[arg(value_enum)]
    function: Function,
    /// Weight for li
    #[arg(long, default_value_t = 2)]
    n: u32,
    /// Real range A:B
    #[arg(long, allow_hyphen_values = true)]
    re: Option<String>,
    /// Imaginary range A:B
    #[arg(long, allow_hyphen_values = true)]
    im: Option<String>,
    /// Points per axis
    #[arg(long)]
    steps: Option<usize>,
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
}

fn configure_threads() {
    if let Some(k) = std::env::var("GRASSPOLY_THREADS").ok().and_then(|s| s.parse::<usize>().ok()).filter(|&k| k > 0) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(k).build_global();
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    configure_threads();
    let result = match &cli.command {
        Command::Element { n } => commands::element(*n, &cli.common),
        Command::Verify(args) => commands::verify(args, &cli.common),
        Command::Integrate(args) => commands::integrate(args, &cli.common),
        Command::Table(args) => commands::table(args, &cli.common),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("grasspoly: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
