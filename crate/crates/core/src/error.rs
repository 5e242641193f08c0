use thiserror::Error;

/// Every failure the engine reports.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("shape mismatch: ({0}, {1}) vs ({2}, {3}) (generators, truncation)")]
    ShapeMismatch(usize, usize, usize, usize),
    #[error("arity mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("substitution argument {0} has a nonzero constant term")]
    ValuationZeroArgument(usize),
    #[error("series has a nonzero constant term")]
    ValuationZero,
    #[error("empty word")]
    EmptyWord,
    #[error("word {0:?} is not a Lyndon word")]
    NotLyndon(Vec<usize>),
    #[error("single letter has no standard factorization")]
    SingleLetter,
    #[error("letter {letter} outside an alphabet of size {generators}")]
    LetterOutOfRange { letter: usize, generators: usize },
    #[error("word of degree {degree} exceeds truncation {truncation}")]
    DegreeExceedsTruncation { degree: usize, truncation: usize },
    #[error("series is not a Lie element (residual at word {0:?})")]
    NotLieElement(Vec<usize>),
    #[error("degree {degree} outside 1..={truncation}")]
    DegreeOutOfRange { degree: usize, truncation: usize },
    #[error("element is not group-like: {0}")]
    NotGroupLike(String),
    #[error("constant term of a group element must be 1")]
    NotUnitConstant,
    #[error("truncation {got} too small (need at least {need})")]
    TruncationTooSmall { got: usize, need: usize },
    #[error("structure constants violate the Jacobi identity at ({0}, {1}, {2})")]
    JacobiViolation(usize, usize, usize),
    #[error("structure constants are not antisymmetric at ({0}, {1})")]
    NotAntisymmetric(usize, usize),
    #[error("algebra is not nilpotent (lower central series stabilises at dimension {0})")]
    NotNilpotent(usize),
    #[error("reconstruction mismatch: {0}")]
    ReconstructionMismatch(String),
    #[error("equation is singular: augmentation is zero")]
    SingularEquation,
    #[error("solver did not reach a zero residual: {0}")]
    NonConvergence(String),
    #[error("vector of length {got} in an algebra of dimension {dim}")]
    DimensionMismatch { dim: usize, got: usize },
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::ShapeMismatch(..) => "ShapeMismatch",
            Error::ArityMismatch { .. } => "ArityMismatch",
            Error::ValuationZeroArgument(_) => "ValuationZeroArgument",
            Error::ValuationZero => "ValuationZero",
            Error::EmptyWord => "EmptyWord",
            Error::NotLyndon(_) => "NotLyndon",
            Error::SingleLetter => "SingleLetter",
            Error::LetterOutOfRange { .. } => "LetterOutOfRange",
            Error::DegreeExceedsTruncation { .. } => "DegreeExceedsTruncation",
            Error::NotLieElement(_) => "NotLieElement",
            Error::DegreeOutOfRange { .. } => "DegreeOutOfRange",
            Error::NotGroupLike(_) => "NotGroupLike",
            Error::NotUnitConstant => "NotUnitConstant",
            Error::TruncationTooSmall { .. } => "TruncationTooSmall",
            Error::JacobiViolation(..) => "JacobiViolation",
            Error::NotAntisymmetric(..) => "NotAntisymmetric",
            Error::NotNilpotent(_) => "NotNilpotent",
            Error::ReconstructionMismatch(_) => "ReconstructionMismatch",
            Error::SingularEquation => "SingularEquation",
            Error::NonConvergence(_) => "NonConvergence",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::Parse(_) => "Parse",
        }
    }

    /// True for input-syntax failures as opposed to violated preconditions.
    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
