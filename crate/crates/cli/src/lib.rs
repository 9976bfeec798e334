//! Command-line front end for the `hvcheck` library.
//!
//! Each subcommand computes one construction, attaches named numeric checks
//! and prints a report (JSON by default, or a flat `key,value` CSV). Exit
//! codes: 0 when every check passes, 1 when a check fails, 2 on bad input.

mod commands;
pub mod report;

use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};

pub use report::{round9, to_csv, Report};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(
    name = "hvcheck",
    version,
    about = "Numerical checks of hidden-variable, contextuality and nonlocality results"
)]
pub struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Seed for every stochastic step (default 0).
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Sample count (meaning depends on the command).
    #[arg(long, global = true)]
    pub samples: Option<u64>,
    /// Main comparison tolerance (default depends on the command).
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Print nothing; the exit code carries the verdict.
    #[arg(long, global = true)]
    pub quiet: bool,
    #[command(subcommand)]
    pub command: Command,
}

fn vec3(s: &str) -> Result<[f64; 3], String> {
    let parts: Vec<f64> = s
        .split(',')
        .map(|p| p.trim().parse::<f64>().map_err(|e| format!("{p:?}: {e}")))
        .collect::<Result<_, _>>()?;
    <[f64; 3]>::try_from(parts).map_err(|p| format!("expected three comma-separated numbers, got {}", p.len()))
}

fn signs3(s: &str) -> Result<[i8; 3], String> {
    let parts: Vec<i8> = s
        .split(',')
        .map(|p| match p.trim() {
            "1" | "+1" => Ok(1),
            "-1" => Ok(-1),
            other => Err(format!("sign must be 1 or -1, got {other:?}")),
        })
        .collect::<Result<_, _>>()?;
    <[i8; 3]>::try_from(parts).map_err(|p| format!("expected three signs, got {}", p.len()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TwoQubitState {
    Singlet,
    Product,
}

#[derive(Debug, Args)]
pub struct ChshArgs {
    /// Maximize S over all four settings instead of evaluating given ones.
    #[arg(long)]
    pub optimize: bool,
    #[arg(long, value_enum, default_value_t = TwoQubitState::Singlet)]
    pub state: TwoQubitState,
    /// Multi-start count for --optimize.
    #[arg(long, default_value_t = 20)]
    pub restarts: usize,
    #[arg(long, value_parser = vec3, allow_hyphen_values = true)]
    pub a: Option<[f64; 3]>,
    #[arg(long, value_parser = vec3, allow_hyphen_values = true)]
    pub a2: Option<[f64; 3]>,
    #[arg(long, value_parser = vec3, allow_hyphen_values = true)]
    pub b: Option<[f64; 3]>,
    #[arg(long, value_parser = vec3, allow_hyphen_values = true)]
    pub b2: Option<[f64; 3]>,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// `key = value` experiment file; flags below override it.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// `singlet` or `lhv:<id>` with id in {sign, constant}.
    #[arg(long)]
    pub source: Option<String>,
    #[arg(long)]
    pub visibility: Option<f64>,
    #[arg(long)]
    pub workers: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Rebuild random density operators from their expectation functional.
    VnReconstruct {
        #[arg(long, default_value_t = 2)]
        dim: usize,
    },
    /// Find a projector with nonzero dispersion in a random density operator.
    Dispersion {
        #[arg(long, default_value_t = 2)]
        dim: usize,
        /// Grid points for the scan between the first two basis states.
        #[arg(long, default_value_t = 65)]
        steps: usize,
    },
    /// Cross intersections of the spin projectors along two directions.
    JauchPiron {
        #[arg(long, value_parser = vec3, allow_hyphen_values = true, default_value = "0,0,1")]
        a: [f64; 3],
        #[arg(long, value_parser = vec3, allow_hyphen_values = true, default_value = "1,0,0")]
        b: [f64; 3],
    },
    /// Single-spin hidden-variable model: exact average and Monte Carlo.
    BellHv {
        #[arg(long, default_value_t = 0.25, allow_hyphen_values = true)]
        alpha: f64,
        #[arg(long, value_parser = vec3, allow_hyphen_values = true, default_value = "0.3,-0.4,1.2")]
        beta: [f64; 3],
        /// Bloch polar angle of the state.
        #[arg(long, default_value_t = 1.1, allow_hyphen_values = true)]
        theta: f64,
        /// Bloch azimuth of the state.
        #[arg(long, default_value_t = 0.4, allow_hyphen_values = true)]
        phi: f64,
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
    /// Kochen-Specker colouring search on a ray set.
    KsColor {
        /// Ray file: three components per line, `#` comments.
        #[arg(long, conflicts_with = "peres", required_unless_present = "peres")]
        rays: Option<PathBuf>,
        /// Use the built-in 33-ray Peres set.
        #[arg(long)]
        peres: bool,
        /// Remove the ray with this index before searching.
        #[arg(long)]
        drop: Option<usize>,
        /// Write the (canonicalized) rays that were searched.
        #[arg(long)]
        write_rays: Option<PathBuf>,
    },
    /// The 3x3 Pauli-product square and its value-assignment search.
    Mermin,
    /// The original three-setting Bell inequality on the singlet.
    Bell {
        #[arg(long, value_parser = vec3, allow_hyphen_values = true)]
        a: Option<[f64; 3]>,
        #[arg(long, value_parser = vec3, allow_hyphen_values = true)]
        b: Option<[f64; 3]>,
        #[arg(long, value_parser = vec3, allow_hyphen_values = true)]
        c: Option<[f64; 3]>,
        /// Outcome-relabelling signs for the three settings.
        #[arg(long, value_parser = signs3, allow_hyphen_values = true, default_value = "1,1,1")]
        eta: [i8; 3],
    },
    /// CHSH value at given settings, or its maximum over settings.
    Chsh(ChshArgs),
    /// CHSH value of local joint distributions over preassigned outcomes.
    Wigner {
        /// Sixteen comma-separated weights; default: random weights plus all vertices.
        #[arg(long, value_delimiter = ',')]
        weights: Option<Vec<f64>>,
    },
    /// Three-qubit stabilizer identities and the parity contradiction.
    Ghz,
    /// Hardy state at (p1, p2), or the maximum of its paradox probability.
    Hardy {
        #[arg(long, default_value_t = 0.5)]
        p1: f64,
        #[arg(long, default_value_t = 0.5)]
        p2: f64,
        #[arg(long)]
        optimize: bool,
        #[arg(long, default_value_t = 100)]
        grid: usize,
    },
    /// Expectation shift caused by a distant nonselective measurement.
    Nosignal,
    /// Monte Carlo CHSH experiment with a quantum or local source.
    Simulate(SimulateArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::VnReconstruct { .. } => "vn-reconstruct",
            Command::Dispersion { .. } => "dispersion",
            Command::JauchPiron { .. } => "jauch-piron",
            Command::BellHv { .. } => "bell-hv",
            Command::KsColor { .. } => "ks-color",
            Command::Mermin => "mermin",
            Command::Bell { .. } => "bell",
            Command::Chsh(_) => "chsh",
            Command::Wigner { .. } => "wigner",
            Command::Ghz => "ghz",
            Command::Hardy { .. } => "hardy",
            Command::Nosignal => "nosignal",
            Command::Simulate(_) => "simulate",
        }
    }
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let mut text = e.render().to_string();
            return if e.use_stderr() {
                if !text.contains("Usage:") {
                    text += &format!("\n{}\n", Cli::command().render_usage());
                }
                Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let start = Instant::now();
    let report = match commands::execute(&cli) {
        Ok(r) => r,
        Err(msg) => {
            return Outcome {
                code: 2,
                stdout: String::new(),
                stderr: format!("error: {msg}\n"),
            };
        }
    };
    let json = report.to_json(start.elapsed().as_secs_f64());
    let stdout = if cli.quiet {
        String::new()
    } else {
        match cli.format {
            Format::Json => serde_json::to_string_pretty(&json).expect("report serializes") + "\n",
            Format::Csv => to_csv(&json),
        }
    };
    Outcome {
        code: if report.passed() { 0 } else { 1 },
        stdout,
        stderr: String::new(),
    }
}
