use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "lc",
    version,
    about = "Polynomial root approximation with the line-and-circumference method"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Estimate all roots: closed form for degree 2, proximity maps above.
    Solve {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        sweep: SweepArgs,
        #[command(flatten)]
        output: OutputArgs,
        /// Solve p(z - a) instead and move the estimates back by -a.
        #[arg(long, value_name = "RE,IM", allow_hyphen_values = true)]
        shift: Option<String>,
    },
    /// Build proximity maps and export them with their gap reports.
    Map {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        sweep: SweepArgs,
        #[command(flatten)]
        output: OutputArgs,
        /// Also write `x y` series files for external plotting (needs --out).
        #[arg(long)]
        plot_data: bool,
    },
    /// Print the LzC frame at one angle as JSON.
    Frame {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, allow_hyphen_values = true)]
        theta: String,
        #[command(flatten)]
        optimizer: OptimizerArgs,
    },
    /// Print the coefficients of p(z - a), whose roots are those of p moved by a.
    Shift {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_name = "RE,IM", allow_hyphen_values = true)]
        shift: String,
    },
    /// Solve a quartic exactly through its resolvent cubic.
    Quartic {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Run the HTTP API.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value_t = lc_service::DEFAULT_MAX_N)]
        max_n: usize,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
pub struct InputArgs {
    /// Coefficients C1..Cn, e.g. "1 1, 2 2" or "1+i, 2+2i".
    #[arg(long, allow_hyphen_values = true)]
    pub coeffs: Option<String>,
    /// File with one coefficient per line.
    #[arg(long)]
    pub file: Option<PathBuf>,
}

#[derive(Args)]
pub struct OptimizerArgs {
    #[arg(long, value_enum, default_value_t = MethodArg::Grid)]
    pub method: MethodArg,
    /// Annealing evaluations.
    #[arg(long)]
    pub maxit: Option<usize>,
    /// Starting annealing temperature.
    #[arg(long)]
    pub temp: Option<f64>,
    /// Annealing evaluations per temperature level.
    #[arg(long)]
    pub tmax: Option<usize>,
    /// Upper end of the t-grid searched by the grid method.
    #[arg(long)]
    pub grid_t_max: Option<f64>,
    #[arg(long)]
    pub grid_points: Option<usize>,
    #[arg(long, env = "LC_SEED")]
    pub seed: Option<u64>,
}

#[derive(Args)]
pub struct SweepArgs {
    /// Number of partition points.
    #[arg(long, default_value_t = 2500)]
    pub n: usize,
    #[arg(long, default_value = "-pi", allow_hyphen_values = true)]
    pub from: String,
    #[arg(long, default_value = "pi", allow_hyphen_values = true)]
    pub to: String,
    /// Maps to build; defaults to e plus every derivative map given a tol.
    #[arg(long, value_delimiter = ',')]
    pub kinds: Option<Vec<String>>,
    #[arg(long)]
    pub tol_e: Option<f64>,
    #[arg(long)]
    pub tol_dd2: Option<f64>,
    #[arg(long)]
    pub tol_dt: Option<f64>,
    /// Merge replica rows that share a crossing.
    #[arg(long)]
    pub dedup: bool,
    /// Sweep threads; defaults to all cores.
    #[arg(long)]
    pub workers: Option<usize>,
    #[command(flatten)]
    pub optimizer: OptimizerArgs,
}

#[derive(Args)]
pub struct OutputArgs {
    /// Directory for exported files.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Grid,
    Twophase,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn ext(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}
