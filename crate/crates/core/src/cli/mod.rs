//! Command-line front end. [`run`] parses arguments, executes one
//! subcommand and renders a [`RunReport`]; exit status 0 means every check
//! passed, 1 that some check failed and 2 a configuration error.

mod commands;
mod render;

use std::collections::BTreeMap;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use render::RunReport;

use crate::report::CheckReport;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Parser)]
#[command(
    name = "gapbound",
    version,
    about = "Exact verification of Vandermonde gap bounds"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Report format.
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: Format,

    /// Write the report here instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<std::path::PathBuf>,

    /// Seed for randomized suites; required with --trials.
    #[arg(long, global = true)]
    pub seed: Option<u64>,

    /// Report elapsed_ms as 0 so identical runs give identical bytes.
    #[arg(long, global = true)]
    pub no_timing: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the determinant identity on given or random instances.
    VerifyIdentity(IdentityArgs),
    /// Evaluate K(s, m) by the closed form and by enumeration.
    KTable(KTableArgs),
    /// Check the generic gap bound on given or random instances.
    Prop1(Prop1Args),
    /// Check every m-subset of lattice points on X^2 + dY^2 = R for a range of R.
    ConicScan(ConicScanArgs),
    /// Generate a parametric triple and check its determinant, norms and asymptotics.
    Example1(Example1Args),
    /// Gap bound for divisors of N in a residue class.
    DivisorGaps(DivisorGapsArgs),
    /// Degree gap bound for polynomial divisors of a common multiple.
    PolyGaps(PolyGapsArgs),
    /// Elementary overlap inequality, or its measure-space form.
    Overlap(OverlapArgs),
    /// Divisibility and gcd bound for divisors of a common multiple in Z.
    Cor5(Cor5Args),
}

#[derive(Debug, Args)]
pub struct InstanceArgs {
    /// Ring: int, quad:D, poly1 or poly2.
    #[arg(long, default_value = "int")]
    pub ring: String,

    /// Elements separated by ';'. Quadratic elements are "a,b" for a + b*sqrt(-d).
    #[arg(long)]
    pub alpha: Option<String>,

    /// Common multiple; beta_i = gamma / alpha_i.
    #[arg(long)]
    pub gamma: Option<String>,

    /// Number of random instances.
    #[arg(long)]
    pub trials: Option<u64>,

    /// Instance size for random trials; cycles through 2..=6 when absent.
    #[arg(long)]
    pub m: Option<usize>,
}

#[derive(Debug, Args)]
pub struct IdentityArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,

    /// Single k; all k in [0, m-1] when absent.
    #[arg(long)]
    pub k: Option<usize>,
}

#[derive(Debug, Args)]
pub struct KTableArgs {
    #[arg(long)]
    pub m: usize,

    /// Exact rational "num/den".
    #[arg(long)]
    pub s: String,
}

#[derive(Debug, Args)]
pub struct Prop1Args {
    #[command(flatten)]
    pub instance: InstanceArgs,

    /// Premise exponent; the largest admissible j/8 when absent.
    #[arg(long)]
    pub s: Option<String>,

    /// Lower bound for every det_k: an exact power such as "4 * 3^(1/2)",
    /// or "exp(r)" on polynomial rings.
    #[arg(long)]
    pub l: Option<String>,
}

#[derive(Debug, Args)]
pub struct ConicScanArgs {
    #[arg(long)]
    pub d: u64,

    #[arg(long, default_value_t = 1)]
    pub r_min: u64,

    #[arg(long)]
    pub r_max: u64,

    /// Odd subset size.
    #[arg(long, default_value_t = 3)]
    pub m: usize,
}

#[derive(Debug, Args)]
pub struct Example1Args {
    #[arg(long)]
    pub t: u64,

    #[arg(long)]
    pub d: u64,
}

#[derive(Debug, Args)]
pub struct DivisorGapsArgs {
    #[arg(long)]
    pub n: String,

    #[arg(long)]
    pub q: String,

    #[arg(long)]
    pub a: String,

    #[arg(long)]
    pub s: String,

    /// Comma-separated divisors; every divisor in the class when absent.
    #[arg(long)]
    pub subset: Option<String>,
}

#[derive(Debug, Args)]
pub struct PolyGapsArgs {
    /// Polynomials separated by ';'.
    #[arg(long)]
    pub polys: String,

    #[arg(long)]
    pub common: String,

    #[arg(long)]
    pub s: String,

    #[arg(long, default_value_t = 1)]
    pub arity: usize,
}

#[derive(Debug, Args)]
pub struct OverlapArgs {
    /// Comma-separated nonnegative rationals for the elementary inequality.
    #[arg(long, conflicts_with_all = ["weights", "sets"])]
    pub values: Option<String>,

    /// Single k for --values; all k when absent.
    #[arg(long, requires = "values")]
    pub k: Option<usize>,

    /// Comma-separated atom weights summing to 1.
    #[arg(long, requires = "sets")]
    pub weights: Option<String>,

    /// Sets separated by ';', each a comma-separated list of atom indices.
    #[arg(long, requires = "weights")]
    pub sets: Option<String>,
}

#[derive(Debug, Args)]
pub struct Cor5Args {
    #[arg(long)]
    pub c: String,

    /// Comma-separated divisors of c.
    #[arg(long)]
    pub a: String,

    /// Single k; all k in [0, m-1] when absent.
    #[arg(long)]
    pub k: Option<usize>,

    #[arg(long)]
    pub s: Option<String>,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::VerifyIdentity(_) => "verify-identity",
            Command::KTable(_) => "k-table",
            Command::Prop1(_) => "prop1",
            Command::ConicScan(_) => "conic-scan",
            Command::Example1(_) => "example1",
            Command::DivisorGaps(_) => "divisor-gaps",
            Command::PolyGaps(_) => "poly-gaps",
            Command::Overlap(_) => "overlap",
            Command::Cor5(_) => "cor5",
        }
    }
}

/// A configuration problem, reported with [`EXIT_CONFIG`].
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{0}")]
pub struct ConfigError(pub String);

impl From<crate::Error> for ConfigError {
    fn from(e: crate::Error) -> Self {
        ConfigError(e.to_string())
    }
}

pub type Params = BTreeMap<String, String>;

/// Runs a parsed command line and collects its report.
pub fn execute(cli: &Cli) -> Result<RunReport, ConfigError> {
    let start = Instant::now();
    let mut params = Params::new();
    let checks: Vec<CheckReport> = commands::dispatch(cli, &mut params)?;
    let elapsed_ms = if cli.no_timing {
        0
    } else {
        start.elapsed().as_millis()
    };
    Ok(RunReport {
        command: cli.command.name().to_string(),
        params,
        checks,
        elapsed_ms,
    })
}

/// Output of a complete invocation: what to print where, and the exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Invocation {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `args` (including the program name), runs the command and
/// renders the report. Writes to `--out` when given; otherwise the report
/// is returned in `stdout`.
pub fn invoke<I, T>(args: I) -> Invocation
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            // --help and --version arrive here too
            return if e.use_stderr() {
                Invocation {
                    exit_code: EXIT_CONFIG,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Invocation {
                    exit_code: EXIT_PASS,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let report = match execute(&cli) {
        Ok(r) => r,
        Err(e) => {
            return Invocation {
                exit_code: EXIT_CONFIG,
                stdout: String::new(),
                stderr: format!("error: {e}\n"),
            }
        }
    };
    let rendered = match report.render(cli.format) {
        Ok(s) => s,
        Err(e) => {
            return Invocation {
                exit_code: EXIT_CONFIG,
                stdout: String::new(),
                stderr: format!("error: {e}\n"),
            }
        }
    };
    let exit_code = if report.passed() {
        EXIT_PASS
    } else {
        EXIT_FAIL
    };
    let mut stderr = String::new();
    if exit_code == EXIT_FAIL {
        stderr = format!(
            "{} of {} checks failed\n",
            report.failed(),
            report.checks.len()
        );
    }
    match &cli.out {
        Some(path) => match std::fs::write(path, rendered) {
            Ok(()) => Invocation {
                exit_code,
                stdout: String::new(),
                stderr,
            },
            Err(e) => Invocation {
                exit_code: EXIT_CONFIG,
                stdout: String::new(),
                stderr: format!("error: cannot write {}: {e}\n", path.display()),
            },
        },
        None => Invocation {
            exit_code,
            stdout: rendered,
            stderr,
        },
    }
}

/// Entry point for the binary: prints and returns the exit code.
pub fn run() -> i32 {
    use std::io::Write;
    let inv = invoke(std::env::args_os());
    let _ = std::io::stdout().write_all(inv.stdout.as_bytes());
    let _ = std::io::stderr().write_all(inv.stderr.as_bytes());
    inv.exit_code
}
