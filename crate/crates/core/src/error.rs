use thiserror::Error;

/// Failure modes of the construction and verification pipeline.
///
/// Variant names double as the machine-readable error names printed by the CLI.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("NUMERICAL_RANK_AMBIGUOUS: singular-value gap {gap:e} at rank {rank} is below {threshold:e}")]
    NumericalRankAmbiguous { rank: usize, gap: f64, threshold: f64 },

    #[error("GRAM_SCHMIDT_DEGENERATE: norm {norm:e} of element {index} is below the cutoff")]
    GramSchmidtDegenerate { index: usize, norm: f64 },

    #[error("NOT_CLOSED: bracket [c{i}, c{j}] leaves the span (residual {residual:e})")]
    NotClosed { i: usize, j: usize, residual: f64 },

    #[error("AMBIGUOUS_SOLUTION: least-squares system has rank {rank}, expected {expected}")]
    AmbiguousSolution { rank: usize, expected: usize },

    #[error("HIGH_RESIDUAL: f4 generator {index} fits the table with residual {residual:e}")]
    HighResidual { index: usize, residual: f64 },

    #[error("CORRUPT_DATASET: {0}")]
    CorruptDataset(String),

    #[error("CARTAN_DIM_MISMATCH: found a maximal abelian subalgebra of dimension {found}")]
    CartanDimMismatch { found: usize },

    #[error("DEGENERATE_ROOT_SPACE: eigenvalue cluster of size {size} at {root:?}")]
    DegenerateRootSpace { size: usize, root: Vec<f64> },

    #[error("NOT_ANTIHERMITIAN: deviation {deviation:e} in the orthonormal frame")]
    NotAntiHermitian { deviation: f64 },

    #[error("MISSING_GENERATOR: {0}")]
    MissingGenerator(String),

    #[error("NONCONVERGED: quadrature order {order} vs {doubled} differ by {relative:e} (relative)")]
    NonConverged { order: usize, doubled: usize, relative: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// Short upper-case name of the variant.
    pub fn name(&self) -> &'static str {
        match self {
            Error::NumericalRankAmbiguous { .. } => "NUMERICAL_RANK_AMBIGUOUS",
            Error::GramSchmidtDegenerate { .. } => "GRAM_SCHMIDT_DEGENERATE",
            Error::NotClosed { .. } => "NOT_CLOSED",
            Error::AmbiguousSolution { .. } => "AMBIGUOUS_SOLUTION",
            Error::HighResidual { .. } => "HIGH_RESIDUAL",
            Error::CorruptDataset(_) => "CORRUPT_DATASET",
            Error::CartanDimMismatch { .. } => "CARTAN_DIM_MISMATCH",
            Error::DegenerateRootSpace { .. } => "DEGENERATE_ROOT_SPACE",
            Error::NotAntiHermitian { .. } => "NOT_ANTIHERMITIAN",
            Error::MissingGenerator(_) => "MISSING_GENERATOR",
            Error::NonConverged { .. } => "NONCONVERGED",
            Error::InvalidArgument(_) => "INVALID_ARGUMENT",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
