//! Command-line arguments.

use std::path::PathBuf;

use admissible_core::{Kind, Nat, Rule};
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::bench::DEFAULT_SEED;
use crate::dyadic::Dyadic;
use crate::output::{Format, OUT_DIR_ENV};
use crate::verify::Suite;

/// Admissible permutations and quantile random-walk arrays.
#[derive(Debug, Clone, Parser)]
#[command(name = "admissible", version, about)]
pub struct RunConfig {
    /// Output encoding.
    #[arg(long, value_enum, default_value_t = Format::Plain, global = true)]
    pub format: Format,
    /// Output file; overrides the output directory.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Directory for data files named after the command.
    #[arg(long, env = OUT_DIR_ENV, global = true)]
    pub out_dir: Option<PathBuf>,
    /// Seed for random atoms.
    #[arg(long, default_value_t = DEFAULT_SEED, global = true)]
    pub seed: u64,
    /// Worker threads for verification sweeps.
    #[arg(long, default_value_t = 1, global = true)]
    pub jobs: usize,
    /// What to run.
    #[command(subcommand)]
    pub command: Command,
}

/// Subcommands.
#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Evaluate one function and print the exact value.
    Eval(EvalArgs),
    /// Run a verification suite; exits 1 if any check fails.
    Verify {
        /// Which suite.
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        /// Largest resolution swept.
        #[arg(long)]
        n: Option<u32>,
    },
    /// List every admissible permutation at resolution n <= 4.
    Enumerate {
        /// Resolution.
        #[arg(long)]
        n: u32,
    },
    /// Walk and sorted-walk values on every atom.
    Walkdata {
        /// Resolution.
        #[arg(long)]
        n: u32,
    },
    /// Compare S*_n(x)/√n with the normal quantile.
    Converge {
        /// Resolutions, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<u32>,
        /// Probes `num/2^exp` or `num/den` with `den` a power of two.
        #[arg(long, value_delimiter = ',', required = true)]
        x: Vec<Dyadic>,
    },
    /// Time F, G and H at random atoms.
    Bench {
        /// Resolutions, comma separated.
        #[arg(long, value_delimiter = ',', default_values_t = [256, 512, 1024])]
        n: Vec<u32>,
        /// Rules to time.
        #[arg(long, value_enum, value_delimiter = ',', default_values_t = [RuleArg::F, RuleArg::G, RuleArg::H])]
        rules: Vec<RuleArg>,
        /// Evaluations per rule and resolution.
        #[arg(long, default_value_t = 5)]
        samples: usize,
    },
}

/// Function selector for `eval`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Function {
    /// `C(n, i)`.
    Binomial,
    /// `SBC(n, i)`.
    Sbc,
    /// Popcount of `k`.
    Weight,
    /// `istep(n, k)`.
    Istep,
    /// `S_n` on atom `k`.
    Walk,
    /// `S*_n` on atom `k`.
    Quantile,
    /// `t`-th positive integer of weight `j`.
    Ew,
    /// Weight-`j` values in `{1, …, m}`.
    Beta,
    /// `F(n, k)`.
    F,
    /// `F⁻¹(n, m)`.
    #[value(name = "inv-f", alias = "inv_f")]
    InvF,
    /// `G(n, k)`.
    G,
    /// `H(n, k)`.
    H,
    /// `|X ∩ {1, …, k}|` for the relation given by `--kind`.
    Card,
    /// Whether `k` belongs to the relation.
    Member,
    /// Size of the relation.
    Size,
    /// `t`-th smallest member of the relation.
    Enumerate,
}

/// Arguments of `eval`.
#[derive(Debug, Clone, Args)]
pub struct EvalArgs {
    /// Function to evaluate.
    #[arg(value_enum)]
    pub function: Function,
    /// Resolution.
    #[arg(long)]
    pub n: Option<u32>,
    /// Atom or argument.
    #[arg(long)]
    pub k: Option<Nat>,
    /// Image value.
    #[arg(long)]
    pub m: Option<Nat>,
    /// First index.
    #[arg(long)]
    pub i: Option<u32>,
    /// Second index or weight.
    #[arg(long)]
    pub j: Option<u32>,
    /// Rank.
    #[arg(long)]
    pub t: Option<Nat>,
    /// Relation family for card, member, size and enumerate.
    #[arg(long, value_enum)]
    pub kind: Option<KindArg>,
}

/// Relation families on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
#[allow(missing_docs)]
pub enum KindArg {
    A,
    B,
    A1,
    B1,
    C1,
    #[value(name = "c1bar")]
    C1Bar,
    A2,
    B2,
}

impl From<KindArg> for Kind {
    fn from(k: KindArg) -> Kind {
        match k {
            KindArg::A => Kind::A,
            KindArg::B => Kind::B,
            KindArg::A1 => Kind::A1,
            KindArg::B1 => Kind::B1,
            KindArg::C1 => Kind::C1,
            KindArg::C1Bar => Kind::C1Bar,
            KindArg::A2 => Kind::A2,
            KindArg::B2 => Kind::B2,
        }
    }
}

/// Rules on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
#[allow(missing_docs)]
pub enum RuleArg {
    #[value(name = "F", alias = "f")]
    F,
    #[value(name = "G", alias = "g")]
    G,
    #[value(name = "H", alias = "h")]
    H,
}

impl From<RuleArg> for Rule {
    fn from(r: RuleArg) -> Rule {
        match r {
            RuleArg::F => Rule::F,
            RuleArg::G => Rule::G,
            RuleArg::H => Rule::H,
        }
    }
}
