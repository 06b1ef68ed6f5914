use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("unknown identifier `{0}`")]
    UnknownVariable(String),

    #[error("exponent 0 is not allowed in `{0}`")]
    ZeroExponent(String),

    #[error("duplicate vertex label `{0}`")]
    DuplicateVertex(String),

    #[error("void complex has no f-vector")]
    VoidComplex,

    #[error("ideal is not Artinian: variable `{0}` has no pure power in the ideal")]
    NotArtinian(String),

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("{count} maximal minors exceed the enumeration bound {bound}; use the Smith normal form instead")]
    TooManyMinors { count: u128, bound: u128 },

    #[error("monomials have unequal degrees")]
    UnequalDegrees,

    #[error("empty monomial list")]
    EmptyMonomialList,

    #[error("zero ideal has no analytic spread")]
    ZeroIdeal,

    #[error("complex has no {0}-dimensional faces")]
    NoFaces(isize),

    #[error("polytope exceeds desk-scale bounds: {0}")]
    VolumeBounds(String),

    /// A theorem's hypothesis does not hold for this input.
    #[error("theorem hypothesis violated: {0}")]
    Hypothesis(String),

    /// Two independent routes disagreed. Always a bug.
    #[error("internal cross-check disagreement: {0}")]
    CrossCheck(String),
}

/// Coarse classification used for process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Input,
    Precondition,
    Internal,
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::Malformed(_)
            | Error::UnknownVariable(_)
            | Error::ZeroExponent(_)
            | Error::DuplicateVertex(_)
            | Error::EmptyMonomialList => ErrorClass::Input,
            Error::CrossCheck(_) => ErrorClass::Internal,
            _ => ErrorClass::Precondition,
        }
    }
}
