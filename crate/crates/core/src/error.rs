use thiserror::Error;

/// Every failure the library can report.
///
/// Each variant maps to a stable upper-case code through [`Error::code`],
/// which the command-line frontend prints verbatim.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands belong to different fields ({0} vs {1})")]
    MixedFields(String, String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("modulus {0} is not a prime below 2^31")]
    NotPrime(u64),
    #[error("invalid space: {0}")]
    InvalidSpace(String),
    #[error("factor {0} of the point is the zero vector")]
    ZeroFactor(usize),
    #[error("the zero vector is not a projective point")]
    ZeroTensor,
    #[error("points are not pairwise distinct (index {0} and {1})")]
    DuplicatePoint(usize, usize),
    #[error("vectors are linearly dependent")]
    Dependent,
    #[error("operation requires a finite prime field")]
    FieldNotFinite,
    #[error("field characteristic {0} is too large for the exhaustive search")]
    FieldTooLarge(u64),
    #[error("objects live on different spaces")]
    SpaceMismatch,
    #[error("the point set is empty")]
    EmptySet,
    #[error("operation needs multidegree one in the factors involved")]
    UnsupportedDegree,
    #[error("operation needs every factor dimension to be positive")]
    DegenerateSpace,
    #[error("tensor is not contained in the given subspace")]
    NotContained,
    #[error("input decomposition does not irredundantly span its target")]
    NotIrredundantInput,
    #[error("input decomposition is not of minimal cardinality (size {size}, rank {rank})")]
    NotMinimal { size: usize, rank: usize },
    #[error("no fiber escapes the span of the decomposition")]
    NoEscapingFiber,
    #[error("no valid random choice found after {0} attempts")]
    GenericityExhausted(usize),
    #[error("field too small: need {needed} distinct nonzero parameters, only {available} exist")]
    FieldTooSmall { needed: u64, available: u64 },
    #[error("the target or the points are not contained in Y")]
    NotContainedInY,
    #[error("the subspace Y equals the whole space W")]
    YEqualsW,
    #[error("the target is not concise for the subspace")]
    NotConcise,
    #[error("m must be at least 2, got {0}")]
    BadM(usize),
    #[error("operation needs a Veronese space (one factor)")]
    NotVeronese,
    #[error("target dimension {target} is smaller than the current span dimension {current}")]
    TargetTooSmall { target: usize, current: usize },
    #[error("search of {needed} candidates exceeds the budget of {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("no concise witness with at most {0} points")]
    NoConciseWitness(usize),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::MixedFields(..) => "MIXED_FIELDS",
            Error::DivisionByZero => "DIVISION_BY_ZERO",
            Error::DimensionMismatch { .. } => "DIMENSION_MISMATCH",
            Error::NotPrime(_) => "NOT_PRIME",
            Error::InvalidSpace(_) => "INVALID_SPACE",
            Error::ZeroFactor(_) => "ZERO_FACTOR",
            Error::ZeroTensor => "ZERO_TENSOR",
            Error::DuplicatePoint(..) => "DUPLICATE_POINT",
            Error::Dependent => "DEPENDENT",
            Error::FieldNotFinite => "FIELD_NOT_FINITE",
            Error::FieldTooLarge(_) => "FIELD_TOO_LARGE",
            Error::SpaceMismatch => "SPACE_MISMATCH",
            Error::EmptySet => "EMPTY_SET",
            Error::UnsupportedDegree => "UNSUPPORTED_DEGREE",
            Error::DegenerateSpace => "DEGENERATE_SPACE",
            Error::NotContained => "NOT_CONTAINED",
            Error::NotIrredundantInput => "NOT_IRREDUNDANT_INPUT",
            Error::NotMinimal { .. } => "NOT_MINIMAL",
            Error::NoEscapingFiber => "NO_ESCAPING_FIBER",
            Error::GenericityExhausted(_) => "GENERICITY_EXHAUSTED",
            Error::FieldTooSmall { .. } => "FIELD_TOO_SMALL",
            Error::NotContainedInY => "NOT_CONTAINED_IN_Y",
            Error::YEqualsW => "Y_EQUALS_W",
            Error::NotConcise => "NOT_CONCISE",
            Error::BadM(_) => "BAD_M",
            Error::NotVeronese => "NOT_VERONESE",
            Error::TargetTooSmall { .. } => "TARGET_TOO_SMALL",
            Error::BudgetExceeded { .. } => "BUDGET_EXCEEDED",
            Error::NoConciseWitness(_) => "NO_CONCISE_WITNESS",
            Error::Parse(_) => "PARSE",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
