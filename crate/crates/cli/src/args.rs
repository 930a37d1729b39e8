use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Exact constructions and checks for superalgebras, queerification,
/// Dunkl operators and truncated U(sl2).
#[derive(Debug, Parser)]
#[command(name = "queerify", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Cap on enumeration sizes (condition checks, surveys).
    #[arg(long, global = true)]
    pub budget: Option<u128>,
    /// Seed for every randomized strategy.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Expected verdict; a mismatch exits with status 1.
    #[arg(long, global = true)]
    pub expect: Option<String>,
    /// Field for algebra expressions without an `@FIELD` suffix.
    #[arg(long, global = true, default_value = "Q")]
    pub field: String,
}

/// An algebra: a qalg/1 file, or an expression such as `psq(3)`.
#[derive(Debug, Clone, Args)]
pub struct AlgebraArg {
    pub algebra: String,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArg {
    /// Write the resulting algebra as qalg/1.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum QueerKind {
    Assoc,
    Lie,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LieModeArg {
    Plain,
    Super,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    Exhaustive,
    Sample,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReadingArg {
    NonzeroSquare,
    Literal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CenterModeArg {
    Plain,
    Super,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a named algebra, e.g. `construct psq 3` or `construct 'mat-super(1,2)'`.
    Construct {
        name: String,
        params: Vec<String>,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Check associativity or super-Jacobi, grading and unit.
    Validate(AlgebraArg),
    /// Q(A) (assoc) or q(A) (lie).
    Queerify {
        kind: QueerKind,
        #[command(flatten)]
        input: AlgebraArg,
        #[command(flatten)]
        out: OutputArg,
    },
    /// The Lie superalgebra of an associative one.
    LieOf {
        #[command(flatten)]
        input: AlgebraArg,
        #[arg(long, value_enum, default_value_t = LieModeArg::Super)]
        mode: LieModeArg,
        #[command(flatten)]
        out: OutputArg,
    },
    /// The derived algebra [L, L].
    Derived {
        #[command(flatten)]
        input: AlgebraArg,
        #[command(flatten)]
        out: OutputArg,
    },
    Center(AlgebraArg),
    Supercenter(AlgebraArg),
    /// q(n), sq(n), pq(n) and psq(n) for Mat(n).
    QtrTower {
        n: usize,
        /// Directory receiving q.qalg, sq.qalg, pq.qalg and psq.qalg.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// L(A): derived Lie algebra modulo its center.
    Herstein {
        #[command(flatten)]
        input: AlgebraArg,
        #[command(flatten)]
        out: OutputArg,
    },
    /// SL(A): derived Lie superalgebra modulo the supercenter.
    MontgomerySl {
        #[command(flatten)]
        input: AlgebraArg,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Search for odd u outside the supercenter with u^2 in it.
    ConditionCheck {
        #[command(flatten)]
        input: AlgebraArg,
        #[arg(long, value_enum)]
        strategy: Option<StrategyArg>,
        /// Random samples after the structured candidates.
        #[arg(long, default_value_t = 256)]
        count: usize,
        #[arg(long, value_enum, default_value_t = ReadingArg::NonzeroSquare)]
        reading: ReadingArg,
    },
    /// Decide simplicity with a witness ideal or an envelope certificate.
    Simplicity {
        #[command(flatten)]
        input: AlgebraArg,
        /// Also require a one-dimensional (super)center.
        #[arg(long)]
        central: bool,
        #[arg(long, value_enum)]
        center_mode: Option<CenterModeArg>,
    },
    /// Isomorphism invariants; with --compare, exit 1 unless equal.
    Fingerprint {
        #[command(flatten)]
        input: AlgebraArg,
        #[arg(long)]
        compare: Option<String>,
    },
    /// A # K[G] for a cyclic or symmetric group.
    Smash {
        #[command(flatten)]
        input: AlgebraArg,
        /// `cyclic:N` or `symmetric:N`.
        #[arg(long)]
        group: String,
        /// JSON `{"generators": [g, ...], "matrices": [[["1", ...], ...], ...]}`;
        /// the trivial action when absent.
        #[arg(long)]
        actions: Option<PathBuf>,
        #[command(flatten)]
        out: OutputArg,
    },
    /// [D_i, D_j] = 0 on all monomials up to a degree.
    DunklCheck {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 4)]
        dmax: u32,
        /// Check [D_1, x_1] instead; expected nonzero.
        #[arg(long)]
        negative_control: bool,
    },
    /// Apply an operator word sum, e.g. `--op "D:1 x:2 + K:1:2"`.
    DunklApply {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        op: String,
        #[arg(long)]
        poly: String,
        /// Fixed rational coupling; formal nu when absent.
        #[arg(long)]
        nu: Option<String>,
    },
    /// Ranks of operator-word spans on truncated polynomial spaces.
    DunklSurvey {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        word_len: usize,
        #[arg(long)]
        dmax: u32,
        #[arg(long, default_value = "1/2")]
        nu: String,
    },
    /// Simplicity of H_{1,c} for S_n.
    Losev {
        #[arg(long)]
        c: String,
        #[arg(long)]
        n: u64,
    },
    /// Centrality of C = h^2 + 2h + 4fe and its highest-weight values.
    GlambdaCasimir {
        #[arg(long, default_value_t = 3)]
        cutoff: u32,
        #[arg(long, value_delimiter = ',', default_values_t = [0, 1, 2])]
        mu: Vec<i64>,
    },
    /// Rank of the image of U_n in Mat(n) up to a degree.
    GlambdaProbe {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        degree: u32,
    },
    /// Both displayed Hamiltonians on symmetric monomials.
    CompareHamiltonians {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 4)]
        dmax: u32,
    },
    /// Run a manifest of commands with expected exit codes.
    Batch {
        manifest: PathBuf,
        #[arg(long, default_value_t = 4)]
        jobs: usize,
    },
}
