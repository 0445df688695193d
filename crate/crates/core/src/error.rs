use alloc::string::String;

/// Errors raised by the algebraic routines of this crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("element index {index} out of range for a set of size {size}")]
    ElementOutOfRange { index: usize, size: usize },
    #[error("braiding table has {found} entries, expected {expected}")]
    TableSize { expected: usize, found: usize },
    #[error("braided set must be nonempty")]
    EmptySet,
    #[error("generator index exceeds strand count (b_{index} on {strands} strands)")]
    GeneratorOutOfRange { index: usize, strands: usize },
    #[error("delta normal form requires idempotent braiding")]
    NotIdempotent,
    #[error("star product requires normal operands")]
    NotNormal,
    #[error("operand contains the pseudo-unit letter")]
    ContainsPseudoUnit,
    #[error("braided set has no pseudo-unit")]
    MissingPseudoUnit,
    #[error("pseudo-unit check failed: {0}")]
    NotPseudoUnit(String),
    #[error("lattice axiom violated: {0}")]
    LatticeAxiom(String),
    #[error("monoid axiom violated: {0}")]
    MonoidAxiom(String),
    #[error("not an exact factorization: {0}")]
    Factorization(String),
    #[error("unknown catalog tag `{0}`")]
    UnknownTag(String),
    #[error("enumeration bound exceeded")]
    EnumerationBound,
    #[error("reduced structure monoid not finite within bound {0}")]
    MonoidBound(usize),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("degree {degree} out of range (valid degrees 0..={max})")]
    DegreeOutOfRange { degree: usize, max: usize },
    #[error("not a chain map in degree {degree}: entry ({row}, {col}) differs")]
    NotChainMap { degree: usize, row: usize, col: usize },
    #[error("not a complex: d∘d nonzero in degree {degree}")]
    NotAComplex { degree: usize },
    #[error("bimodule law violated: {0}")]
    Bimodule(String),
    #[error("R-quotient not free over ℤ; rerun with modular coefficients")]
    TorsionQuotient,
    #[error("R-subgroup conditions fail: {0}")]
    RConditions(String),
    #[error("coefficient mismatch: {0}")]
    CoefficientMismatch(String),
    #[error("circle product requires trivial commutative coefficients")]
    CircleCoefficients,
}

pub type Result<T> = core::result::Result<T, Error>;
