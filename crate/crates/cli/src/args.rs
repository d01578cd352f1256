use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "qcolor", version, about = "Exact graph colouring with modelled Grover query costs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Chromatic number of a DIMACS graph.
    Chromatic(ChromaticArgs),
    /// Decide k-colourability, optionally with a bound on colour class sizes.
    Kcolor(KcolorArgs),
    /// Enumerate maximal independent sets.
    Mis(MisArgs),
    /// Regenerate an exponent table.
    Exponents(ExponentsArgs),
    /// Write a generated graph as DIMACS.
    Gen(GenArgs),
    /// Run a seeded corpus through one algorithm.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ChrAlgo {
    Lawler,
    Chr,
}

#[derive(Debug, Args)]
pub struct ChromaticArgs {
    pub path: PathBuf,
    #[arg(long, value_enum, default_value = "chr")]
    pub algo: ChrAlgo,
    /// Write the precomputed table of small subsets.
    #[arg(long, value_name = "FILE")]
    pub dump_table: Option<PathBuf>,
    /// Use a previously dumped table instead of recomputing it.
    #[arg(long, value_name = "FILE", conflicts_with = "dump_table")]
    pub load_table: Option<PathBuf>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KAlgo {
    Auto,
    R1,
    R2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum F3Arg {
    Be,
    Simple,
}

#[derive(Debug, Args)]
pub struct KcolorArgs {
    pub path: PathBuf,
    #[arg(short)]
    pub k: u32,
    /// Largest allowed colour class.
    #[arg(long, value_name = "U")]
    pub bound: Option<u32>,
    #[arg(long, value_enum, default_value = "auto")]
    pub algo: KAlgo,
    /// Split point for `--algo r2`.
    #[arg(long, value_name = "P")]
    pub kprime: Option<u32>,
    #[arg(long, value_enum, default_value = "be")]
    pub f3: F3Arg,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct MisArgs {
    pub path: PathBuf,
    /// Only sets of exactly this size.
    #[arg(long, value_name = "T")]
    pub size: Option<u32>,
    #[arg(long)]
    pub count_only: bool,
    /// Check that every leaf of the search tree is reachable by index.
    #[arg(long)]
    pub check_index: bool,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Grid,
    Golden,
    Stationary,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct ExponentsArgs {
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..=3))]
    pub table: u32,
    /// Defaults to stationary for table 2 and golden otherwise.
    #[arg(long, value_enum)]
    pub method: Option<MethodArg>,
    #[arg(long, default_value_t = 16)]
    pub grid_bits: u32,
    #[arg(long, value_enum, default_value = "be")]
    pub f3: F3Arg,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[command(subcommand)]
    pub family: Family,
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
    #[arg(short, value_name = "FILE", global = true)]
    pub o: Option<PathBuf>,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Family {
    Cycle {
        n: usize,
    },
    Complete {
        n: usize,
    },
    Path {
        n: usize,
    },
    Petersen,
    /// Disjoint cliques, e.g. `4,3,3`.
    CliqueUnion {
        #[arg(value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
    },
    /// G(n, p) with `p` written as a decimal or `a/b`.
    Gnp {
        n: usize,
        p: String,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BenchAlgo {
    Chr,
    Lawler,
    Mis,
    Col,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// `gnp:<n>:<p>:<seeds>` with seeds `a..b` (inclusive) or a single seed,
    /// or `cycle:<n>`, `complete:<n>`, `path:<n>`, `petersen`, `clique-union:<a,b,..>`.
    pub corpus: String,
    #[arg(long, value_enum, default_value = "chr")]
    pub algo: BenchAlgo,
    /// Colours for `--algo col`.
    #[arg(short)]
    pub k: Option<u32>,
    #[arg(long)]
    pub json: bool,
    /// Cross-check every answer against an independent method.
    #[arg(long)]
    pub verify: bool,
}
