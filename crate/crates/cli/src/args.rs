use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use incidence_core::Scalar;
use num_bigint::BigInt;

#[derive(Debug, Parser)]
#[command(
    name = "incidence",
    version,
    about = "Exact point-line incidence toolkit"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write an arrangement document.
    Generate {
        #[command(subcommand)]
        source: Source,
    },
    /// Incidence statistics, rich-line bounds and the triangle monitor.
    Analyze(AnalyzeArgs),
    /// Median partition of the point set.
    Partition(PartitionArgs),
    /// Search for a local general-position tuple.
    Theorem1(Box<Theorem1Args>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Output file; stdout when absent.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Arrangement document; stdin when absent or `-`.
    #[arg(long, short)]
    pub input: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Source {
    /// `[0, N) × [0, 2N²)` with the lines `y = mx + b`, `m < N`, `b < N²`.
    Grid {
        #[arg(long)]
        n: u32,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// All lines spanned by a point set.
    Spanned {
        /// Use the `side × side` integer grid.
        #[arg(long, conflicts_with = "input", required_unless_present = "input")]
        side: Option<u32>,
        /// Take the points of this document.
        #[arg(long)]
        input: Option<PathBuf>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Seeded random points in `[0, bound]²` and lines through random pairs.
    Random {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        n_points: usize,
        #[arg(long)]
        n_lines: usize,
        #[arg(long, default_value_t = 100)]
        bound: u32,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// `n` lines through the origin.
    Pencil {
        #[arg(long)]
        n: usize,
        /// Leave the common point out of the point set.
        #[arg(long)]
        without_center: bool,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Constant in the rich-line bound `C·(n²/m³ + n/m)`.
    #[arg(long, default_value = "4", value_parser = parse_scalar)]
    pub constant: Scalar,
    /// Count triangles and compare with `|P|·|L|`.
    #[arg(long)]
    pub monitor: bool,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct PartitionArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long)]
    pub r: usize,
    /// Also write an SVG drawing.
    #[arg(long)]
    pub svg: Option<PathBuf>,
    /// Number of arrangement lines drawn in the SVG.
    #[arg(long, default_value_t = 0)]
    pub svg_lines: usize,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct Theorem1Args {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long)]
    pub k: usize,
    /// Density constant; measured from the input when absent.
    #[arg(long, value_parser = parse_scalar)]
    pub c: Option<Scalar>,
    /// Partition constant; `c/(2k)` when absent.
    #[arg(long, value_parser = parse_scalar)]
    pub beta: Option<Scalar>,
    /// Largest dual-point multiplicity kept in the graph.
    #[arg(long)]
    pub threshold: Option<usize>,
    #[arg(long, value_parser = parse_scalar)]
    pub slack: Option<Scalar>,
    #[arg(long)]
    pub fallback_cap: Option<usize>,
    #[arg(long)]
    pub max_tuples: Option<usize>,
    /// Partition parameter, overriding the computed one.
    #[arg(long)]
    pub r: Option<usize>,
    /// Recorded in the report; the search itself is deterministic.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Add wall-clock duration to the report.
    #[arg(long)]
    pub timing: bool,
    #[arg(long)]
    pub svg: Option<PathBuf>,
    #[command(flatten)]
    pub out: OutputArgs,
}

/// `p`, `p/q` or a finite decimal such as `-0.396`.
pub fn parse_scalar(s: &str) -> Result<Scalar, String> {
    let s = s.trim();
    let bad = || format!("{s:?} is not a rational number");
    if let Some((int_part, frac)) = s.split_once('.') {
        let (neg, digits) = match int_part.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, int_part.strip_prefix('+').unwrap_or(int_part)),
        };
        let all_digits = |t: &str| t.bytes().all(|b| b.is_ascii_digit());
        if (digits.is_empty() && frac.is_empty()) || !all_digits(digits) || !all_digits(frac) {
            return Err(bad());
        }
        let num = BigInt::from_str(&format!("0{digits}{frac}")).map_err(|_| bad())?;
        let den = BigInt::from(10).pow(frac.len() as u32);
        let v = Scalar::new(num, den);
        return Ok(if neg { -v } else { v });
    }
    Scalar::from_str(s).map_err(|_| bad())
}
