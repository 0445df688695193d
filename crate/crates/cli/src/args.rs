use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::suites::DEFAULT_SEED;

#[derive(Debug, Parser)]
#[command(name = "ybhom", version, about = "Braided and Hochschild homology of idempotent Yang-Baxter solutions")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalArgs {
    /// Degree bound K: complexes are built through degree K, homology reported below it (K ≤ 8).
    #[arg(long, global = true, default_value_t = 4)]
    pub maxdeg: usize,
    /// Coefficients: trivial[:r], adjoint, structure:L, mod:m (products), regular (monoids), or a bimodule file.
    #[arg(long, global = true, default_value = "trivial")]
    pub coeff: String,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Write the report here (atomically) instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<String>,
    /// Attach a pseudo-unit (element index) to the braiding.
    #[arg(long, global = true)]
    pub pseudo_unit: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check braiding axioms, coefficients, or run the property suites.
    Verify(VerifyArgs),
    /// Enumerate idempotent braidings on a small set up to isomorphism.
    Classify(ClassifyArgs),
    /// Homology of the full, critical, bar or double complex.
    Homology(HomologyArgs),
    /// Critical homology against bar homology of the reduced structure monoid.
    Compare(CompareArgs),
    /// Cup, circle and symmetrizer computations on cochains.
    Products(ProductsArgs),
    /// Write a braided set or an assembled complex as JSON.
    Export(ExportArgs),
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Catalog name (identity:n, minmax:n, flip:n, size2:tag, lattice:F, factorization:F, assoc:F) or braided-set file.
    #[arg(long)]
    pub braiding: Option<String>,
    #[arg(long)]
    pub ybe: bool,
    #[arg(long)]
    pub idempotent: bool,
    /// Check the pseudo-unit conditions.
    #[arg(long = "unit")]
    pub unit: bool,
    /// Braided commutative semigroup laws on normal words of length ≤ --bound.
    #[arg(long)]
    pub semigroup: bool,
    /// Bimodule laws for --coeff.
    #[arg(long)]
    pub bimodule: bool,
    /// Word-length bound for the pseudo-unit and semigroup checks.
    #[arg(long, default_value_t = 4)]
    pub bound: usize,
    /// Run the property suites (all, or a comma-separated subset such as a,c,e).
    #[arg(long, num_args = 0..=1, default_missing_value = "all")]
    pub suites: Option<String>,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[arg(long)]
    pub size: usize,
    /// Re-verify every representative.
    #[arg(long)]
    pub check: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Variant {
    Full,
    Critical,
    Bar,
    Double,
}

#[derive(Debug, Args)]
pub struct HomologyArgs {
    #[arg(long)]
    pub braiding: Option<String>,
    /// Finite monoid file, for the bar complex.
    #[arg(long)]
    pub monoid: Option<String>,
    #[arg(long, conflicts_with_all = ["critical", "bar", "double"])]
    pub full: bool,
    #[arg(long, conflicts_with_all = ["bar", "double"])]
    pub critical: bool,
    #[arg(long, conflicts_with = "double")]
    pub bar: bool,
    #[arg(long)]
    pub double: bool,
    /// Cohomology of the dual complex instead.
    #[arg(long)]
    pub cohomology: bool,
    /// Also report Betti numbers over 𝔽_p.
    #[arg(long)]
    pub prime: Option<u64>,
    /// Largest reduced structure monoid enumerated for --bar on a braiding.
    #[arg(long, default_value_t = 256)]
    pub bound: usize,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[arg(long)]
    pub braiding: String,
    /// Largest reduced structure monoid to enumerate.
    #[arg(long, default_value_t = 256)]
    pub bound: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Operation {
    /// f ⌣ g
    Cup,
    /// The two halves of f ⌣ g
    CupLeftRight,
    /// f ∘ g (trivial coefficients)
    Circle,
    /// d f
    Differential,
    /// d(f∘g) against the cup commutator
    Homotopy,
    /// Exhaustive Hirsch-formula search on degree-1 cochains
    Hirsch,
    /// Pull a Hochschild cochain back along the quantum symmetrizer
    Qs,
    /// QS pullback of F·G against QS F ⌣ QS G
    QsCup,
}

#[derive(Debug, Args)]
pub struct ProductsArgs {
    #[arg(value_enum)]
    pub operation: Operation,
    #[arg(long)]
    pub braiding: String,
    /// First cochain file.
    #[arg(long)]
    pub f: Option<String>,
    /// Second cochain file.
    #[arg(long)]
    pub g: Option<String>,
    /// Draw the operands at random with these degrees, e.g. 2,1.
    #[arg(long, value_delimiter = ',')]
    pub random: Option<Vec<usize>>,
    /// Value range searched by `hirsch`.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true, default_value = "-1,0,1")]
    pub values: Vec<i64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExportKind {
    Braiding,
    Full,
    Cochain,
    Critical,
    CriticalCochain,
    Bar,
    Double,
}

#[derive(Debug, Args)]
pub struct ExportArgs {
    #[arg(long, value_enum, default_value_t = ExportKind::Critical)]
    pub kind: ExportKind,
    #[arg(long)]
    pub braiding: Option<String>,
    #[arg(long)]
    pub monoid: Option<String>,
    #[arg(long, default_value_t = 256)]
    pub bound: usize,
}
