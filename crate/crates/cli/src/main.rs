use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use latkit::claims::{self, Config};
use latkit::{Lattice, LatticeError, Limits};

mod commands;

#[derive(Parser)]
#[command(name = "latkit", version, about = "Exact computations on finite lattices")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads for long scans (0 = one per core).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    rng_seed: u64,
    /// Lift the size guards (the enumerator still stops at 8 elements).
    #[arg(long, global = true)]
    no_guard: bool,
    /// Evaluation budget for identity checks.
    #[arg(long, global = true, env = "LATKIT_BUDGET", hide_env_values = true)]
    budget: Option<u128>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a lattice file describes a lattice.
    Validate { file: PathBuf },
    /// Decide identities and related properties.
    Props(PropsArgs),
    /// Join-covers of an element.
    Covers(CoversArgs),
    /// Congruences of a lattice.
    Congruences(CongruencesArgs),
    /// Seed conditions for a subset.
    Seeds(SeedsArgs),
    /// Build K(D) from a distributive lattice D.
    Kd {
        #[arg(long)]
        dist: PathBuf,
    },
    /// List all lattices of a given size up to isomorphism.
    Enumerate(EnumerateArgs),
    /// Search small lattices for a counterexample to an identity.
    Refute(RefuteArgs),
    /// Hasse diagram in DOT.
    Dot { file: PathBuf },
    /// Run every verification claim.
    VerifyPaper {
        /// Catalog size bound for the claims that range over small lattices.
        #[arg(long, default_value_t = 7)]
        max_size: usize,
    },
}

#[derive(Args)]
pub struct PropsArgs {
    pub file: PathBuf,
    #[arg(long, value_name = "N")]
    pub ndistr: Option<usize>,
    #[arg(long)]
    pub modular: bool,
    #[arg(long)]
    pub distributive: bool,
    #[arg(long)]
    pub jsd: bool,
    #[arg(long, value_name = "N")]
    pub sdj: Option<usize>,
    #[arg(long)]
    pub sentence: bool,
}

#[derive(Args)]
pub struct CoversArgs {
    pub file: PathBuf,
    #[arg(long, value_name = "LABEL")]
    pub element: String,
    #[arg(long, group = "kind")]
    pub minimal: bool,
    #[arg(long, group = "kind")]
    pub tight: bool,
    #[arg(long, group = "kind")]
    pub irredundant: bool,
    /// Refine this cover (comma-separated labels) to a tight and a minimal one.
    #[arg(long, value_name = "a,b,c", conflicts_with = "kind")]
    pub refine: Option<String>,
}

#[derive(Args)]
pub struct CongruencesArgs {
    pub file: PathBuf,
    #[arg(long)]
    pub si: bool,
    #[arg(long, value_name = "x,y")]
    pub principal: Option<String>,
}

#[derive(Args)]
pub struct SeedsArgs {
    pub file: PathBuf,
    #[arg(long, value_name = "a,b,c", required_unless_present = "strong")]
    pub subset: Option<String>,
    #[arg(long)]
    pub pre: bool,
    #[arg(long)]
    pub quasi: bool,
    #[arg(long)]
    pub seed: bool,
    #[arg(long)]
    pub strong: bool,
}

#[derive(Args)]
pub struct EnumerateArgs {
    #[arg(long)]
    pub size: usize,
    /// ndistr:N, modular, distributive, jsd, si or sdj:N.
    #[arg(long, value_name = "P")]
    pub filter: Option<String>,
    #[arg(long, conflicts_with = "emit_dir")]
    pub count_only: bool,
    #[arg(long, value_name = "DIR")]
    pub emit_dir: Option<PathBuf>,
}

#[derive(Args)]
pub struct RefuteArgs {
    #[arg(long, value_name = "TERM")]
    pub lhs: String,
    #[arg(long, value_name = "TERM")]
    pub rhs: String,
    /// Only search n-distributive lattices.
    #[arg(long, value_name = "N")]
    pub ndistr: Option<usize>,
    #[arg(long, value_name = "K")]
    pub max_size: usize,
}

/// What a command produced: text for people, JSON for machines, and the
/// exit status.
pub struct Output {
    pub text: String,
    pub json: serde_json::Value,
    pub failed: bool,
}

pub enum CliError {
    Input(String),
}

impl From<LatticeError> for CliError {
    fn from(e: LatticeError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

pub fn load(path: &Path) -> Result<Lattice, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    latkit::io::read_lattice(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut limits = if cli.no_guard { Limits::overridden() } else { Limits::default() };
    if let Some(b) = cli.budget {
        limits.eval_budget = b;
    }
    let result = match cli.command {
        Command::Validate { file } => commands::validate(&file),
        Command::Props(a) => commands::props(&a, &limits),
        Command::Covers(a) => commands::covers(&a, &limits),
        Command::Congruences(a) => commands::congruences(&a, &limits),
        Command::Seeds(a) => commands::seeds(&a, &limits),
        Command::Kd { dist } => commands::kd(&dist, &limits),
        Command::Enumerate(a) => commands::enumerate(&a, &limits),
        Command::Refute(a) => commands::refute(&a, &limits),
        Command::Dot { file } => commands::dot(&file),
        Command::VerifyPaper { max_size } => {
            let config = Config { max_size, jobs: cli.jobs, rng_seed: cli.rng_seed, limits };
            Ok(commands::verify(&claims::run_all(&config)))
        }
    };
    match result {
        Ok(out) => {
            let body = match cli.format {
                Format::Text => out.text,
                Format::Json => serde_json::to_string_pretty(&out.json).expect("json output") + "\n",
            };
            // a closed pipe (`| head`) is not an error worth reporting
            let _ = std::io::stdout().lock().write_all(body.as_bytes());
            if out.failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(CliError::Input(msg)) => {
            eprintln!("latkit: {msg}");
            ExitCode::from(2)
        }
    }
}
