use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "setsat", version, about = "Promise SetSAT toolkit", propagate_version = true)]
pub struct Cli {
    /// Report style.
    #[arg(long, value_enum, default_value_t = OutputFormat::Text, global = true)]
    pub format: OutputFormat,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Text,
    Kv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Random walk for (1,g,k)-SetSAT.
    Solve(SolveArgs),
    /// Exhaustive search for the largest g with a g-satisfying assignment.
    BestG(BestGArgs),
    /// Check that an assignment g-satisfies an instance.
    Check(CheckArgs),
    /// Generate a planted instance.
    Gen(GenArgs),
    /// Polymorphism analysis.
    #[command(subcommand)]
    Poly(PolyCommand),
    /// Explicit function constructions.
    #[command(subcommand)]
    Build(BuildCommand),
    /// Apply or verify a gadget reduction.
    Reduce(ReduceArgs),
    /// Bipartite and layered label cover.
    #[command(subcommand)]
    Lc(LcCommand),
    /// Minor conditions.
    #[command(subcommand)]
    Mc(McCommand),
}

#[derive(Args, Debug)]
pub struct Input {
    /// Input file.
    #[arg(long = "in", value_name = "FILE")]
    pub input: PathBuf,
}

#[derive(Args, Debug)]
pub struct Output {
    /// Write the produced file here instead of standard output.
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct Budget {
    /// Work limit for exhaustive searches.
    #[arg(long)]
    pub budget: Option<u128>,
}

#[derive(Args, Debug)]
pub struct ParamsArg {
    /// Promise parameters `d,s,a,g,k`.
    #[arg(long, value_name = "D,S,A,G,K")]
    pub params: String,
}

#[derive(Args, Debug)]
pub struct SolveArgs {
    #[command(flatten)]
    pub input: Input,
    /// Promised g, used to report whether the walk's regime applies.
    #[arg(long)]
    pub g: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Steps per round (default 100·n²).
    #[arg(long)]
    pub steps_cap: Option<u64>,
    #[arg(long, default_value_t = 8)]
    pub rounds: usize,
}

#[derive(Args, Debug)]
pub struct BestGArgs {
    #[command(flatten)]
    pub input: Input,
    #[command(flatten)]
    pub budget: Budget,
}

#[derive(Args, Debug)]
pub struct CheckArgs {
    #[command(flatten)]
    pub input: Input,
    /// Assignment values, space or comma separated.
    #[arg(long, value_name = "VALUES")]
    pub assign: String,
    /// Required satisfied-literal count per clause.
    #[arg(long, alias = "a", default_value_t = 1)]
    pub g: usize,
}

#[derive(Args, Debug)]
pub struct GenArgs {
    #[command(flatten)]
    pub params: ParamsArg,
    /// Number of variables.
    #[arg(long)]
    pub n: usize,
    /// Number of clauses.
    #[arg(long)]
    pub m: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Subcommand, Debug)]
pub enum PolyCommand {
    /// Decide whether a function is a polymorphism.
    Check {
        /// Function file (`.fun`).
        #[arg(long = "in", alias = "fun", value_name = "FILE")]
        input: PathBuf,
        #[command(flatten)]
        params: ParamsArg,
        #[command(flatten)]
        budget: Budget,
    },
    /// All polymorphisms of a given arity.
    Enumerate {
        #[command(flatten)]
        params: ParamsArg,
        #[arg(long)]
        arity: usize,
        #[command(flatten)]
        budget: Budget,
        #[command(flatten)]
        out: Output,
    },
    /// Smug sets of a function with witnesses.
    Smug {
        #[arg(long = "in", alias = "fun", value_name = "FILE")]
        input: PathBuf,
        /// List every smug set, not only the minimal ones.
        #[arg(long)]
        all: bool,
        #[command(flatten)]
        budget: Budget,
    },
    /// Small and disjoint smug sets of a polymorphism.
    FindSmug {
        #[arg(long = "in", alias = "fun", value_name = "FILE")]
        input: PathBuf,
        #[command(flatten)]
        params: ParamsArg,
        #[command(flatten)]
        budget: Budget,
    },
    /// Apply a minor map `π`, giving `g(x) = f(x_π(1), ..., x_π(n))`.
    Minor {
        #[arg(long = "in", alias = "fun", value_name = "FILE")]
        input: PathBuf,
        /// 1-based images of the coordinates of f.
        #[arg(long, value_name = "MAP")]
        map: String,
        /// Arity of the minor (default: largest image).
        #[arg(long)]
        arity: Option<usize>,
        #[command(flatten)]
        budget: Budget,
        #[command(flatten)]
        out: Output,
    },
    /// Check a named identity set: olsak, siggers or gloop:<n>:<u-v,...>.
    Identities {
        #[arg(long = "in", alias = "fun", value_name = "FILE")]
        input: PathBuf,
        #[arg(long)]
        set: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum BuildCommand {
    /// `q_m` for (1,g,k) with k-g+1 = 3.
    Qm {
        #[arg(long)]
        m: usize,
        #[command(flatten)]
        params: ParamsArg,
        #[command(flatten)]
        out: Output,
    },
    Olsak {
        #[command(flatten)]
        params: ParamsArg,
        #[command(flatten)]
        out: Output,
    },
    Siggers {
        #[command(flatten)]
        params: ParamsArg,
        #[command(flatten)]
        out: Output,
    },
    Plurality {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        arity: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Function of a smug-set family `<ground>:<set>;<set>|<set>`.
    Family {
        #[arg(long)]
        spec: String,
        #[command(flatten)]
        params: ParamsArg,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Args, Debug)]
pub struct ReduceArgs {
    /// shift-up, shift-down, extend-domain, lift-set-size, widen-clause,
    /// from-3sat, from-graph-coloring, pad-to-2g, from-hypergraph-coloring
    pub kind: String,
    /// Source file: `.setsat`, `.cnf`, `.graph` or `.hgr` depending on the kind.
    #[arg(long = "in", value_name = "FILE")]
    pub input: Option<PathBuf>,
    /// Source parameters for SetSAT sources.
    #[arg(long, value_name = "D,S,A,G,K")]
    pub params: Option<String>,
    /// Set size for 3-SAT sources.
    #[arg(long)]
    pub s: Option<usize>,
    /// Colour count for graph and hypergraph sources.
    #[arg(long)]
    pub colors: Option<usize>,
    /// Target g of pad-to-2g; the g of hypergraph sources.
    #[arg(long)]
    pub g: Option<usize>,
    /// Check the reduction on random sources instead of transforming a file.
    #[arg(long)]
    pub verify: bool,
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub budget: Budget,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Subcommand, Debug)]
pub enum LcCommand {
    /// Layered instance of a bipartite one.
    Layer {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        ell: usize,
        #[command(flatten)]
        budget: Budget,
        #[command(flatten)]
        out: Output,
    },
    /// Chain count and per-constraint chain multiplicity.
    Chains {
        #[command(flatten)]
        input: Input,
    },
    /// Satisfied (bipartite) or weakly satisfied (layered) fraction.
    Eval {
        #[command(flatten)]
        input: Input,
        /// 1-based values; `/` separates Y from Z, or layer from layer.
        #[arg(long, value_name = "VALUES")]
        assign: String,
    },
    /// Layer a bipartite instance and decode a layered assignment.
    Decode {
        /// Bipartite source (`.blc`).
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        ell: usize,
        /// Layered assignment, layers separated by `/`.
        #[arg(long, value_name = "VALUES")]
        assign: String,
        #[command(flatten)]
        budget: Budget,
    },
    /// Exhaustive optimum.
    Solve {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        budget: Budget,
    },
}

#[derive(Subcommand, Debug)]
pub enum McCommand {
    /// Minor condition of a label cover instance.
    FromLc {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        out: Output,
    },
    /// The minor condition `f →π_i g`, i = 1..m, satisfied by `q_m`.
    Qm {
        #[arg(long)]
        m: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Largest fraction of identities satisfiable by projections.
    Robustness {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        budget: Budget,
    },
    /// Decode functions on a layered instance into labels.
    Decode {
        /// Layered instance (`.llc`).
        #[command(flatten)]
        input: Input,
        /// Concatenated `.fun` tables, one per variable in layer-major order.
        #[arg(long, value_name = "FILE")]
        tables: PathBuf,
        #[command(flatten)]
        params: ParamsArg,
        #[command(flatten)]
        budget: Budget,
    },
}
