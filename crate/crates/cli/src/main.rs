//! `ceerlab`: batch front end for the ceer library.
//!
//! Exit codes: 0 success, 2 parse or input error, 3 insufficient horizon,
//! 4 budget or timeout, 5 partial reduction map.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub const DEFAULT_STAGES: &str = "1000";
pub const DEFAULT_HORIZON: &str = "500";

#[derive(Parser, Debug)]
#[command(name = "ceerlab", version, about = "Stage-bounded experiments with ceers")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct StageArg {
    /// Stage at which relations are read.
    #[arg(long, env = "CEERLAB_STAGES", default_value = DEFAULT_STAGES)]
    pub stage: u64,
}

#[derive(Args, Debug, Clone)]
pub struct HorizonArg {
    /// Largest number inspected.
    #[arg(long = "max", env = "CEERLAB_HORIZON", default_value = DEFAULT_HORIZON)]
    pub max: u64,
}

#[derive(Args, Debug, Clone)]
pub struct RunArgs {
    /// Number of stages to run.
    #[arg(long, env = "CEERLAB_STAGES", default_value = DEFAULT_STAGES)]
    pub stages: u64,
    /// Horizon for reported tables and checks.
    #[arg(long, env = "CEERLAB_HORIZON", default_value = DEFAULT_HORIZON)]
    pub horizon: u64,
    /// Trace file; defaults to `<construction>.trace`.
    #[arg(long)]
    pub trace: Option<PathBuf>,
    /// Wall-clock limit; on expiry the partial trace is kept and the exit
    /// code is 4.
    #[arg(long)]
    pub timeout_ms: Option<u64>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Is `x R_s y`?
    Decide {
        spec: String,
        x: u64,
        y: u64,
        #[command(flatten)]
        stage: StageArg,
    },
    /// Classes of `R_s` meeting `[0, max]`, one per line as `least: members`.
    Classes {
        spec: String,
        #[command(flatten)]
        stage: StageArg,
        #[command(flatten)]
        horizon: HorizonArg,
    },
    /// Least elements of the `R_s` classes meeting `[0, max]`.
    Principal {
        spec: String,
        #[command(flatten)]
        stage: StageArg,
        #[command(flatten)]
        horizon: HorizonArg,
        /// Report only the value of the principal function at this index.
        #[arg(long)]
        index: Option<u64>,
    },
    /// Run a construction and its stage-by-stage checks.
    Construct {
        #[command(subcommand)]
        which: Construction,
    },
    /// Word problems of the semigroups over {a, b}.
    Semigroup {
        #[command(subcommand)]
        which: SemigroupCommand,
    },
    /// Bounded check that a program reduces one ceer to another.
    Reduce(ReduceArgs),
    /// Print the index of an assembly file.
    Assemble { file: PathBuf },
    /// Print the program with the given index.
    Disasm { index: String },
}

#[derive(Subcommand, Debug)]
pub enum Construction {
    /// Interval priority construction against the fixed numbering.
    Allhigh {
        #[command(flatten)]
        run: RunArgs,
        /// A requirement counts as settled if no higher-or-equal priority
        /// requirement acted in this many final stages.
        #[arg(long, default_value = "100")]
        window: u64,
    },
    /// Weak disjoint array over a ceer with finite classes.
    Weakarray {
        #[arg(long)]
        spec: String,
        #[command(flatten)]
        run: RunArgs,
        /// Class size above which a class-growth warning is emitted.
        #[arg(long, default_value = "64")]
        class_cap: usize,
    },
    /// Post-style simple set of words with an avoidance census.
    Postsimple {
        #[command(flatten)]
        run: RunArgs,
        /// Census lengths `1..=L`.
        #[arg(long, default_value = "20")]
        census: usize,
        /// Check `|Z ∩ X^{≤k+4}| ≤ k` for all `k` up to this.
        #[arg(long, default_value = "25")]
        k_max: usize,
    },
    /// Transversal extraction from a finitely generated algebra.
    Kk {
        /// Algebra file: `generators: ...`, `op arity=k program=e` lines, `wp: (spec)`.
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long, default_value = "50")]
        depth: usize,
        /// Step budget per operation call.
        #[arg(long, default_value = "100000")]
        budget: u64,
        #[arg(long, default_value = "10000")]
        level_cap: usize,
        #[command(flatten)]
        run: RunArgs,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum VariantArg {
    Sr,
    Fincl,
}

#[derive(Args, Debug, Clone)]
pub struct ClosureArgs {
    #[arg(long)]
    pub spec: String,
    #[command(flatten)]
    pub stage: StageArg,
    /// Most words a closure may visit.
    #[arg(long, default_value = "10000")]
    pub cap: usize,
    /// Longest word a closure may visit (required to bound `sr` closures).
    #[arg(long)]
    pub max_len: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub enum SemigroupCommand {
    /// Stratum of each word: `coding i`, `contains-coding` or `avoiding`.
    Classify { words: Vec<String> },
    Decide {
        #[arg(long, value_enum, default_value = "sr")]
        variant: VariantArg,
        #[command(flatten)]
        closure: ClosureArgs,
        u: String,
        v: String,
    },
    /// Image of a word in `R ⊕ Id_ω`.
    Tojoin { word: String },
    /// Word representing a number of `R ⊕ Id_ω`.
    Fromjoin { n: u64 },
    /// Class of a word by breadth-first rewriting.
    Closure {
        #[arg(long, value_enum, default_value = "fincl")]
        variant: VariantArg,
        #[command(flatten)]
        closure: ClosureArgs,
        word: String,
    },
    /// Class size in the finite-class variant, with the product prediction.
    Classsize {
        #[command(flatten)]
        closure: ClosureArgs,
        word: String,
    },
}

#[derive(Args, Debug)]
pub struct ReduceArgs {
    /// Program index of the map.
    #[arg(long = "f", conflicts_with = "asm", required_unless_present = "asm")]
    pub f: Option<String>,
    /// Assembly file of the map.
    #[arg(long)]
    pub asm: Option<PathBuf>,
    #[arg(long)]
    pub from: String,
    #[arg(long)]
    pub to: String,
    /// Target `S ⊕ Id_n` instead of `S`.
    #[arg(long)]
    pub plus_idn: Option<u64>,
    #[command(flatten)]
    pub stage: StageArg,
    /// Stage at which missing facts are confirmed; defaults past every
    /// number involved.
    #[arg(long)]
    pub verify_stage: Option<u64>,
    #[command(flatten)]
    pub horizon: HorizonArg,
    /// Step budget per evaluation of the map.
    #[arg(long, default_value = "100000")]
    pub budget: u64,
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let cli = Cli::parse();
    match commands::run(cli.command, &report::echo(&args)) {
        Ok(outcome) => {
            print!("{}", outcome.report);
            ExitCode::from(outcome.code)
        }
        Err(err) => {
            eprintln!("error: {}", err.message);
            ExitCode::from(err.code)
        }
    }
}
