use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use relift::hom::{MapMode, SearchConfig, DEFAULT_NODE_BUDGET};
use relift::ramsey::Reading;

use crate::report::{input, CliError};

/// Seed used when `--seed` is absent, so runs are reproducible by default.
pub const DEFAULT_SEED: u64 = 0x5EED;

pub const BUDGET_ENV: &str = "RELIFT_BUDGET_NODES";

#[derive(Parser, Debug)]
#[command(
    name = "relift",
    version,
    about = "Relational structures, canonical lifts and universal structures",
    after_help = "Exit codes: 0 true, 1 false or counterexample, 2 unknown (budget), 3 usage or input error.\n\
                  Inputs are .rel paths, '-' for stdin, or generators such as gen:cycle:5."
)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    #[arg(long, default_value_t = DEFAULT_SEED, global = true)]
    pub seed: u64,
    /// Search node budget per call; overrides RELIFT_BUDGET_NODES.
    #[arg(long, global = true)]
    pub budget: Option<u64>,
    /// Wall-clock limit; on expiry the result is unknown (exit 2).
    #[arg(long = "timeout-s", global = true)]
    pub timeout_s: Option<f64>,
}

impl Global {
    pub fn search_config(&self) -> Result<SearchConfig, CliError> {
        let budget = match self.budget {
            Some(b) => b,
            None => match std::env::var(BUDGET_ENV) {
                Ok(v) => v
                    .trim()
                    .parse()
                    .map_err(|_| input(format!("{BUDGET_ENV}={v:?} is not a node count")))?,
                Err(_) => DEFAULT_NODE_BUDGET,
            },
        };
        Ok(SearchConfig::with_budget(budget))
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModeArg {
    Hom,
    Mono,
    Embed,
}

impl From<ModeArg> for MapMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Hom => MapMode::Hom,
            ModeArg::Mono => MapMode::Mono,
            ModeArg::Embed => MapMode::Embed,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReadingArg {
    Corrected,
    Literal,
}

impl From<ReadingArg> for Reading {
    fn from(r: ReadingArg) -> Self {
        match r {
            ReadingArg::Corrected => Reading::Corrected,
            ReadingArg::Literal => Reading::Literal,
        }
    }
}

/// `(n, k, N)` for the Ramsey structure `S(n, k, N)`.
#[derive(Args, Debug, Clone)]
pub struct RamseyArgs {
    pub n: usize,
    pub k: usize,
    #[arg(value_name = "N")]
    pub big_n: usize,
    #[arg(long, value_enum, default_value_t = ReadingArg::Corrected)]
    pub reading: ReadingArg,
}

/// A catalog file, or a family to build one from.
#[derive(Args, Debug, Clone)]
pub struct CatalogSource {
    #[arg(long)]
    pub catalog: Option<String>,
    /// Family files (repeatable; each may hold several documents).
    #[arg(short = 'F', long = "family")]
    pub family: Vec<String>,
}

/// A corpus given as files or generated planar graphs.
#[derive(Args, Debug, Clone)]
pub struct CorpusArgs {
    /// Corpus files (each may hold several documents).
    #[arg(long = "corpus", num_args = 1..)]
    pub corpus: Vec<String>,
    /// Generate this many random planar graphs instead.
    #[arg(long)]
    pub planar: Option<usize>,
    /// Largest planar graph.
    #[arg(long = "max-n", default_value_t = 12)]
    pub max_n: usize,
    /// Edge deletion probability for planar graphs.
    #[arg(long = "delete-p", default_value_t = 0.2)]
    pub delete_p: f64,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Parse files and report their sizes.
    Validate {
        #[arg(required = true)]
        inputs: Vec<String>,
    },
    /// Gaifman graph of a structure.
    Gaifman { input: String },
    /// Connected components (vertex names).
    Components { input: String },
    /// Induced substructure on named vertices.
    Induced {
        input: String,
        #[arg(long)]
        vertices: String,
    },
    /// Disjoint union of two structures.
    Union { a: String, b: String },
    /// Generate a named structure.
    Generate {
        /// path, cycle, clique, oriented-path, transitive-tournament, petersen, random, random-directed
        name: String,
        #[arg(long, default_value_t = 5)]
        n: usize,
        #[arg(long, default_value_t = 0.3)]
        p: f64,
    },
    /// Isomorphism test.
    Iso { a: String, b: String },
    /// Search a map A -> B.
    Hom {
        a: String,
        b: String,
        #[arg(long, value_enum, default_value_t = ModeArg::Hom)]
        mode: ModeArg,
        /// Fixed assignments `a=x,b=y`.
        #[arg(long)]
        fix: Option<String>,
    },
    /// Count maps A -> B.
    Count {
        a: String,
        b: String,
        #[arg(long, value_enum, default_value_t = ModeArg::Hom)]
        mode: ModeArg,
    },
    /// Membership of A in Forb_h(F).
    Forbh {
        input: String,
        #[arg(required = true)]
        family: Vec<String>,
    },
    /// Membership of A in Forb_e(F) (no embedding of any member).
    Forbe {
        input: String,
        #[arg(required = true)]
        family: Vec<String>,
    },
    /// Core and retraction.
    Core { input: String },
    /// Drop members that are redundant for Forb_h, then take cores.
    Minimize {
        #[arg(required = true)]
        family: Vec<String>,
    },
    /// Minimal cuts of a connected structure.
    Cuts {
        input: String,
        #[arg(long)]
        bound: Option<usize>,
    },
    /// Pieces with provenance.
    Pieces { input: String },
    /// Piece catalog of a family.
    Catalog {
        #[arg(required = true)]
        family: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Cut-size predicates of a family.
    Predicates {
        #[arg(required = true)]
        family: Vec<String>,
    },
    /// Canonical lift of a structure.
    Lift {
        input: String,
        #[command(flatten)]
        source: CatalogSource,
        /// Write the catalog built from -F here and reference it.
        #[arg(long = "catalog-out")]
        catalog_out: Option<PathBuf>,
    },
    /// Shadow of a lift.
    Shadow {
        lift: String,
        #[arg(long)]
        catalog: Option<String>,
    },
    /// Induced sublift on named vertices.
    LiftInduce {
        lift: String,
        #[arg(long)]
        vertices: String,
        #[arg(long)]
        catalog: Option<String>,
    },
    /// Membership of a lift in the class of induced sublifts of canonical lifts.
    LiftMember {
        lift: String,
        #[arg(short = 'F', long = "family", required = true)]
        family: Vec<String>,
        /// Extra witness vertices to try.
        #[arg(long = "size-bound", default_value_t = 3)]
        size_bound: usize,
        #[arg(long)]
        catalog: Option<String>,
    },
    /// Free amalgam of A and B over shared vertices.
    Amalgam {
        a: String,
        b: String,
        /// Identified pairs `a1=b1,a2=b2`.
        #[arg(long, default_value = "")]
        shared: String,
    },
    /// Amalgamate canonical lifts and verify both claims.
    LiftAmalgam {
        a: Option<String>,
        b: Option<String>,
        #[arg(long, default_value = "")]
        shared: String,
        #[arg(short = 'F', long = "family", required = true)]
        family: Vec<String>,
        /// Sample this many random problems instead of reading A and B.
        #[arg(long)]
        random: Option<usize>,
        #[arg(long = "max-size", default_value_t = 5)]
        max_size: usize,
    },
    /// Grow a finite approximation of the generic lift.
    Grow {
        #[arg(short = 'F', long = "family", required = true)]
        family: Vec<String>,
        #[arg(long = "max-vertices", default_value_t = 12)]
        max_vertices: usize,
        #[arg(long, default_value_t = 64)]
        rounds: usize,
        #[arg(long = "max-demand")]
        max_demand: Option<usize>,
        /// Write lift, catalog and metadata into this directory.
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        /// Continue from a checkpoint directory.
        #[arg(long)]
        resume: Option<PathBuf>,
    },
    /// Universality probe across growth budgets.
    Probe {
        #[arg(short = 'F', long = "family", required = true)]
        family: Vec<String>,
        /// Vertex budgets, e.g. `4,8,12`.
        #[arg(long, default_value = "12")]
        budgets: String,
        #[arg(long, default_value_t = 50)]
        sample: usize,
        #[arg(long = "max-test-size", default_value_t = 6)]
        max_test_size: usize,
    },
    /// Relational tree test for each structure.
    TreeCheck {
        #[arg(required = true)]
        inputs: Vec<String>,
    },
    /// Check a dual pair exhaustively or on a corpus.
    DualVerify {
        family: String,
        dual: String,
        #[arg(long)]
        exhaustive: Option<usize>,
        /// Allow tuples with repeated entries in the exhaustive scope.
        #[arg(long)]
        loops: bool,
        #[command(flatten)]
        corpus: CorpusArgs,
    },
    /// Duality restricted to a corpus.
    RestrictedDual {
        family: String,
        dual: String,
        #[command(flatten)]
        corpus: CorpusArgs,
    },
    /// Whether every corpus member maps into D.
    HomUniversal {
        dual: String,
        #[command(flatten)]
        corpus: CorpusArgs,
    },
    /// Build the Ramsey structure S(n, k, N).
    Ramsey {
        #[command(flatten)]
        params: RamseyArgs,
    },
    /// Verify the four properties of S(n, k, N).
    RamseyVerify {
        #[command(flatten)]
        params: RamseyArgs,
        /// Random colorings instead of the exhaustive search.
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long, default_value_t = relift::ramsey::DEFAULT_COLORING_CAP)]
        cap: u128,
    },
    /// Indicator construction S(n, k, N) * pattern.
    Indicator {
        #[command(flatten)]
        params: RamseyArgs,
        /// Rooted pattern with 2n roots.
        pattern: String,
    },
    /// Counterexample gadget for a member with a minimal cut of size >= 2.
    Counterexample {
        #[arg(required = true)]
        family: Vec<String>,
        /// Index of the member within the family.
        #[arg(long, default_value_t = 0)]
        member: usize,
        /// Cut vertex names; defaults to the first cut of size >= 2.
        #[arg(long)]
        cut: Option<String>,
        #[arg(long, default_value_t = 0)]
        k: usize,
        /// Ground set size; defaults to 2|cut| + 1.
        #[arg(long = "big-n")]
        big_n: Option<usize>,
    },
}
