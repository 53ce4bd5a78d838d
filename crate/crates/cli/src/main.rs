//! `planecc` command-line tool.

mod commands;
mod error;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "planecc",
    version,
    about = "Euler characteristic curves of plane graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
pub(crate) enum LayoutArg {
    Uniform,
    Parabola,
}

#[derive(Subcommand)]
pub(crate) enum Command {
    /// Generate a random plane graph, or write a named fixture.
    Gen {
        #[arg(long, default_value_t = 8)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        forbid_deg2: bool,
        /// Coordinate grid denominator.
        #[arg(long)]
        denom: Option<u64>,
        #[arg(long, value_enum, default_value = "uniform")]
        layout: LayoutArg,
        /// fig1_trick, fig3_same, fig3_neighbor, fig3_opposite or fig2_collinear(t).
        #[arg(long, conflicts_with_all = ["n", "seed", "forbid_deg2", "denom"])]
        fixture: Option<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Compute the ECC in one direction.
    Ecc {
        #[arg(short, long)]
        graph: PathBuf,
        /// Direction as `dx,dy`.
        #[arg(long, allow_hyphen_values = true)]
        dir: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Print witness heights and witnessed vertices for one direction.
    Witness {
        #[arg(short, long)]
        graph: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        dir: String,
    },
    /// Analyse degree-2 vertices.
    Deg2 {
        #[arg(short, long)]
        graph: PathBuf,
        /// Vertex index; all degree-2 vertices when omitted.
        #[arg(short, long)]
        vertex: Option<usize>,
    },
    /// Recover vertex locations from six ECCs.
    Reconstruct {
        #[arg(short, long, conflicts_with = "ecc", required_unless_present = "ecc")]
        graph: Option<PathBuf>,
        /// Six ECC files: E, W, N, S and the pair (1, t), (-1, -t) in any order.
        #[arg(long, num_args = 6)]
        ecc: Vec<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Print directions and phase timings to stderr.
        #[arg(long)]
        report: bool,
    },
    /// Choose three witnessing directions per vertex.
    Plan3n {
        #[arg(short, long)]
        graph: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100_000)]
        max_tries: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Check the arrangement and print a summary to stderr.
        #[arg(long)]
        verify: bool,
        /// Also write an SVG of the verified arrangement.
        #[arg(long, requires = "verify")]
        svg: Option<PathBuf>,
    },
    /// Draw a graph with optional witness lines as SVG.
    Render {
        #[arg(short, long)]
        graph: PathBuf,
        #[arg(long)]
        plan: Option<PathBuf>,
        /// Extra direction `dx,dy`; repeat for more.
        #[arg(long, allow_hyphen_values = true)]
        lines: Vec<String>,
        #[arg(long, default_value_t = 800)]
        width: u32,
        #[arg(long, default_value_t = 800)]
        height: u32,
        #[arg(long)]
        no_vertices: bool,
        #[arg(long)]
        no_edges: bool,
        #[arg(long)]
        no_lines: bool,
        #[arg(long)]
        no_markers: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Time the reconstruction phases over graph sizes.
    Bench {
        #[arg(long, value_delimiter = ',', default_value = "4096,8192,16384,32768")]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        reps: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error {}: {}", e.code(), e);
            ExitCode::FAILURE
        }
    }
}
