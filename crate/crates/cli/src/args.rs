use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "boxcolour",
    version,
    about = "Acyclic edge colourings of graphs and their cartesian products"
)]
#[command(args_override_self = true)]
pub struct Cli {
    /// Graph file format for reading and writing graphs.
    #[arg(long, value_enum, default_value_t = Format::Edgelist, global = true)]
    pub format: Format,

    /// Seed for every randomised step.
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,

    /// File of `key = value` lines, one per long flag. Flags given on the
    /// command line take precedence.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Edgelist,
    Graph6,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Path,
    Cycle,
    Complete,
    Grid,
    Hypercube,
    Petersen,
}

#[derive(Debug, Args)]
pub struct Budget {
    /// Stop the exact search after this many nodes.
    #[arg(long, default_value_t = 100_000_000)]
    pub budget_nodes: u64,

    /// Stop the exact search after this many seconds.
    #[arg(long, default_value_t = 60.0)]
    pub budget_secs: f64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a graph from a standard family.
    Gen {
        #[arg(value_enum)]
        family: Family,
        /// Size parameters: n for path, cycle and complete, m n for grid,
        /// d for hypercube, none for petersen.
        params: Vec<usize>,
    },
    /// Write the cartesian product of two graphs.
    Product { g: PathBuf, h: PathBuf },
    /// Acyclic chromatic index of a graph, with a witness colouring.
    Aci {
        graph: PathBuf,
        #[command(flatten)]
        budget: Budget,
        /// Only report the lower bound.
        #[arg(long, conflicts_with = "greedy")]
        lower_only: bool,
        /// Report a greedy colouring instead of searching.
        #[arg(long)]
        greedy: bool,
    },
    /// A greedy acyclic edge colouring.
    Greedy { graph: PathBuf },
    /// A proper vertex colouring within the Brooks bound, as `{vertex: colour}`.
    VertexColor { graph: PathBuf },
    /// Compose acyclic colourings of two factors into one of their product.
    Compose {
        #[arg(long)]
        g: PathBuf,
        #[arg(long)]
        h: PathBuf,
        /// Colouring JSON for the first factor.
        #[arg(long)]
        xg: Option<PathBuf>,
        /// Colouring JSON for the second factor.
        #[arg(long)]
        xh: Option<PathBuf>,
        /// Colour each factor optimally first (otherwise greedily, unless
        /// given).
        #[arg(long, conflicts_with_all = ["xg", "xh"])]
        solve_factors: bool,
        /// Also write the product graph here.
        #[arg(long, value_name = "FILE")]
        graph_out: Option<PathBuf>,
        #[command(flatten)]
        budget: Budget,
    },
    /// The d-cube with a (d+1)-colouring.
    Hypercube { d: usize },
    /// Check that a colouring is proper and acyclic.
    Verify {
        colouring: PathBuf,
        /// Graph the colouring must be a colouring of.
        #[arg(long)]
        graph: Option<PathBuf>,
    },
    /// Exact indices over a graph corpus, as CSV.
    Scan {
        /// Every connected graph with this many vertices or fewer.
        #[arg(long, required_unless_present = "input", conflicts_with = "input")]
        max_n: Option<usize>,
        /// Smallest order to include with `--max-n`.
        #[arg(long, default_value_t = 1)]
        min_n: usize,
        /// Graphs to scan, one per line in graph6.
        #[arg(long)]
        input: Option<PathBuf>,
        #[command(flatten)]
        budget: Budget,
    },
}
