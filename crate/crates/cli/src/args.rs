use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

#[derive(Debug, Parser, Serialize)]
#[command(name = "polygraph", version, about = "Single-vertex k-graph toolkit")]
pub struct Cli {
    /// Worker threads (default: available parallelism)
    #[arg(long, global = true)]
    pub jobs: Option<usize>,

    /// Write JSON (or DOT) output here instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Record a run manifest
    #[arg(long, global = true)]
    #[serde(skip)]
    pub manifest: Option<PathBuf>,

    /// Override every default budget (same as POLYGRAPH_BUDGET)
    #[arg(long, global = true)]
    pub budget: Option<u128>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Check a presentation file: bijectivity and the cubic condition
    Validate { path: PathBuf },
    /// All valid presentations with the given color sizes
    Enumerate {
        #[arg(long, value_delimiter = ',', required = true)]
        m: Vec<usize>,
        /// Also group them into isomorphism classes
        #[arg(long)]
        classify: bool,
    },
    /// Isomorphism classes of all presentations with the given color sizes
    Classify {
        #[arg(long, value_delimiter = ',', required = true)]
        m: Vec<usize>,
    },
    /// Infinite tails: Σ-data, tail symmetry, spliced tails
    #[command(subcommand)]
    Tail(TailCommand),
    /// Test a single π for periodicity and print its certificate
    Periodicity {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        pi: Vec<i64>,
        /// Run the tail transducer even when the check is automatic
        #[arg(long)]
        force_transducer: bool,
        /// Transducer state cap (default 10^7, or POLYGRAPH_BUDGET)
        #[arg(long)]
        state_cap: Option<usize>,
    },
    /// Bounded search for the symmetry lattice, with a structure report
    Symmetry {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = polygraph::periodicity::DEFAULT_BOUND)]
        bound: usize,
        /// Also write the structure report JSON here
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Group construction representations
    #[command(subcommand)]
    Rep(RepCommand),
    /// Run the acceptance criteria and print a pass/fail table
    PaperSuite {
        /// Directory holding the example presentation files
        #[arg(long)]
        data_dir: Option<PathBuf>,
        /// Criteria to run, e.g. 1,6c
        #[arg(long, value_delimiter = ',')]
        only: Vec<String>,
        #[arg(long, default_value_t = 2024)]
        seed: u64,
    },
    /// Re-run a recorded manifest and compare the output hash
    Replay { manifest: PathBuf },
    /// List catalog names, or print one catalog presentation
    Catalog { name: Option<String> },
}

#[derive(Debug, Args, Serialize, Clone)]
pub struct Source {
    /// Presentation file, or a catalog name such as flip or transposition:3:2
    #[arg(long = "presentation", short = 'p')]
    pub presentation: String,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TailCommand {
    /// Σ(τ,n) on the box −bound ≤ n ≤ 0
    Sigma {
        #[command(flatten)]
        tail: TailArgs,
        #[arg(long = "box", value_delimiter = ',', required = true)]
        #[serde(rename = "box")]
        box_bound: Vec<usize>,
    },
    /// Shifts h with |h_i| ≤ bound under which the tail is eventually invariant
    Symmetry {
        #[command(flatten)]
        tail: TailArgs,
        #[arg(long, default_value_t = 2)]
        bound: usize,
        #[arg(long, default_value_t = 2)]
        depth: usize,
    },
    /// Greedy periodic tail whose symmetry group is as small as possible
    Splice {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 1)]
        bound: usize,
        #[arg(long, default_value_t = 1)]
        depth: usize,
        #[arg(long, default_value_t = 6)]
        blocks: usize,
    },
}

#[derive(Debug, Args, Serialize)]
pub struct TailArgs {
    #[command(flatten)]
    pub source: Source,
    /// Repeated block, as a chain like 1:1.2:2
    #[arg(long)]
    pub period: String,
    #[arg(long, default_value = "ε")]
    pub preperiod: String,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RepCommand {
    /// Construction from commuting color words, e.g. --words 112,112,112
    Build {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_delimiter = ',', required = true)]
        words: Vec<String>,
        /// Constant phases per color, e.g. 0,1/3,2/3
        #[arg(long, value_delimiter = ',')]
        alphas: Vec<String>,
    },
    /// Split a construction into irreducible summands
    Decompose {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        input: PathBuf,
    },
    /// Equivalent construction with constant scalars
    Normalize {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        input: PathBuf,
    },
    /// Graphviz rendering of the atomic graph
    ExportDot {
        #[arg(long)]
        input: PathBuf,
    },
    /// Commuting words from arbitrary seeds
    Cycle {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_delimiter = ',', required = true)]
        seeds: Vec<String>,
    },
}

impl Command {
    /// Files the command reads, for the manifest.
    pub fn input_files(&self) -> Vec<PathBuf> {
        let src = |s: &Source| {
            let p = PathBuf::from(&s.presentation);
            if p.is_file() {
                vec![p]
            } else {
                vec![]
            }
        };
        match self {
            Command::Validate { path } => vec![path.clone()],
            Command::Periodicity { source, .. } | Command::Symmetry { source, .. } => src(source),
            Command::Tail(TailCommand::Sigma { tail, .. }) | Command::Tail(TailCommand::Symmetry { tail, .. }) => {
                src(&tail.source)
            }
            Command::Tail(TailCommand::Splice { source, .. }) => src(source),
            Command::Rep(RepCommand::Build { source, .. }) | Command::Rep(RepCommand::Cycle { source, .. }) => {
                src(source)
            }
            Command::Rep(RepCommand::Decompose { source, input }) | Command::Rep(RepCommand::Normalize { source, input }) => {
                let mut v = src(source);
                v.push(input.clone());
                v
            }
            Command::Rep(RepCommand::ExportDot { input }) => vec![input.clone()],
            Command::PaperSuite { data_dir: Some(dir), .. } => polygraph::suite::DATA_FILES
                .iter()
                .map(|n| dir.join(format!("{n}.json")))
                .filter(|p| p.is_file())
                .collect(),
            Command::Replay { manifest } => vec![manifest.clone()],
            _ => vec![],
        }
    }

    pub fn presentation(&self) -> Option<String> {
        match self {
            Command::Periodicity { source, .. } | Command::Symmetry { source, .. } => Some(source.presentation.clone()),
            Command::Tail(TailCommand::Sigma { tail, .. }) | Command::Tail(TailCommand::Symmetry { tail, .. }) => {
                Some(tail.source.presentation.clone())
            }
            Command::Tail(TailCommand::Splice { source, .. })
            | Command::Rep(RepCommand::Build { source, .. })
            | Command::Rep(RepCommand::Cycle { source, .. })
            | Command::Rep(RepCommand::Decompose { source, .. })
            | Command::Rep(RepCommand::Normalize { source, .. }) => Some(source.presentation.clone()),
            Command::Validate { path } => Some(path.display().to_string()),
            _ => None,
        }
    }
}
