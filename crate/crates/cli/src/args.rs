use clap::{Args, Parser, Subcommand};

/// Exact computations in Cuntz semigroups of lower semicontinuous functions
/// on one-dimensional spaces.
///
/// Exit status: 0 success or witness, 1 counterexample or negative answer,
/// 2 usage or input error, 3 inconclusive within the search bounds.
#[derive(Parser, Debug)]
#[command(name = "cuntzkit", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Spaces: finite disjoint unions of arcs, circles and points.
    #[command(subcommand)]
    Space(SpaceCmd),
    /// Elements of Lsc(X, N̄): order, lattice operations, sums.
    #[command(subcommand)]
    Lsc(LscCmd),
    /// Chains and almost chains of open covers.
    #[command(subcommand)]
    Chains(ChainsCmd),
    /// Decide weak chainability, refinable sums, almost ordered sums, axioms.
    #[command(subcommand)]
    Check(CheckCmd),
    /// Run the randomized lemma suite.
    #[command(subcommand)]
    Verify(VerifyCmd),
}

/// Options shared by commands that work over a space.
#[derive(Args, Debug, Clone, Default)]
pub struct Common {
    /// Space document (file or inline JSON).
    #[arg(short = 's', long = "space")]
    pub space: Option<String>,
    /// Emit JSON (the only output format; accepted for scripts).
    #[arg(long)]
    pub json: bool,
}

#[derive(Subcommand, Debug)]
pub enum SpaceCmd {
    /// Parse a space document and print its canonical form.
    Validate {
        #[command(flatten)]
        common: Common,
        /// Space document; alternatively pass it with -s.
        file: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
pub enum LscCmd {
    /// Values of an element at points (`component:t`), or on its grid.
    Eval {
        #[command(flatten)]
        common: Common,
        f: String,
        #[arg(long = "at")]
        at: Vec<String>,
    },
    /// f + g.
    Add(Binary),
    /// f ∨ g.
    Join(Binary),
    /// f ∧ g.
    Meet(Binary),
    /// Whether f ≤ g (exit 1 when not).
    Leq(Binary),
    /// Whether f ≪ g (exit 1 when not).
    Wb(Binary),
    /// The almost complement y∖z: the largest x with x + y ≤ z.
    Complement(Binary),
    /// Rewrite Σ(x_i + y_i) for two decreasing lists below the unit as one
    /// decreasing list.
    OrderedSum {
        #[command(flatten)]
        common: Common,
        xs: String,
        ys: String,
    },
    /// Split y ≤ n·e into its level indicators.
    Decompose {
        #[command(flatten)]
        common: Common,
        y: String,
        #[arg(long)]
        n: Option<u64>,
    },
}

#[derive(Args, Debug)]
pub struct Binary {
    #[command(flatten)]
    pub common: Common,
    pub f: String,
    pub g: String,
}

#[derive(Subcommand, Debug)]
pub enum ChainsCmd {
    /// A chain of mesh < eps covering a connected target.
    EpsilonChain {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        eps: String,
        /// Open set to cover (default: the whole space).
        #[arg(long)]
        target: Option<String>,
    },
    /// An almost chain refining a cover of the target.
    Refine {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        cover: String,
        #[arg(long)]
        target: Option<String>,
    },
    /// Decide (almost, piecewise) chainability, with a bounded search on circles.
    Decide {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        target: Option<String>,
        /// Which answer sets the exit status.
        #[arg(long, value_enum, default_value_t = Property::Chainable)]
        property: Property,
        /// Grid depth of the bounded search.
        #[arg(long)]
        depth: Option<u32>,
    },
    /// The Lebesgue number of a cover of the space.
    Lebesgue {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        cover: String,
    },
    /// Validate a chain witness against a target and cover.
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        witness: String,
        #[arg(long)]
        cover: Option<String>,
        #[arg(long)]
        target: Option<String>,
    },
}

#[derive(clap::ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Property {
    Chainable,
    AlmostChainable,
    PiecewiseChainable,
}

#[derive(Subcommand, Debug)]
pub enum CheckCmd {
    /// Refinable sums for an instance {"x": [...], "x_prime": [...]}.
    RefinableSums(CheckArgs),
    /// Almost ordered sums for an instance {"x": [...]}.
    AlmostOrdered(CheckArgs),
    /// Weak chainability for an instance {"x", "y", "parts"}.
    WeakChain(CheckArgs),
    /// The Cu-semigroup axioms of a finite table.
    Axioms {
        #[command(flatten)]
        common: Common,
        /// table:<path>
        #[arg(long)]
        model: String,
    },
}

#[derive(Args, Debug)]
pub struct CheckArgs {
    #[command(flatten)]
    pub common: Common,
    /// lsc, z, zprime, nbar, table:<path>, or a sum such as z+nbar.
    #[arg(long)]
    pub model: Option<String>,
    #[arg(long)]
    pub instance: String,
    /// Rounds of candidate closure (default 3, or CUNTZKIT_MAX_DEPTH).
    #[arg(long)]
    pub depth: Option<u32>,
}

#[derive(Subcommand, Debug)]
pub enum VerifyCmd {
    /// Run every lemma check on seeded random cases.
    Lemmas {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        cases: usize,
        /// Run only these checks.
        #[arg(long)]
        only: Vec<String>,
        /// Inject a fault to confirm the suite catches it.
        #[arg(long, hide = true)]
        mutate: Option<String>,
        #[arg(long)]
        json: bool,
    },
}
