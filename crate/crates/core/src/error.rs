use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("boundary composition is nonzero: the chain condition fails")]
    CompositionNonzero,
    #[error("rational function has a pole at t = 0")]
    PoleAtZero,
    #[error("series constant term is {0}, expected 1")]
    ConstantTermNotOne(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid automorphism: {0}")]
    InvalidAutomorphism(String),
    #[error("automorphism unverified: {0}")]
    UnverifiedAutomorphism(String),
    #[error("representation violates relator {0}")]
    RelatorViolation(usize),
    #[error("representation image exceeds the closure cap of {0} elements")]
    ClosureCapExceeded(usize),
    #[error("unsupported homology degree {0}")]
    UnsupportedDegree(usize),
    #[error("chain map condition fails in degree {0}")]
    ChainCondition(usize),
    #[error("decoration word {word:?} has fibered-class value {value}, expected 1")]
    GradingViolation { word: Vec<i32>, value: i64 },
    #[error("matrix is not unimodular (determinant {0})")]
    NotUnimodular(String),
    #[error("invalid modulus {0}")]
    InvalidModulus(u64),
    #[error("invalid decomposition: {0}")]
    InvalidDecomposition(String),
    #[error("orbit data incomplete for piece {0}")]
    OrbitDataIncomplete(String),
    #[error("zero slope vector")]
    ZeroSlope,
    #[error("unknown group {0}")]
    UnknownGroup(String),
    #[error("class id {0} out of range")]
    ClassIdMismatch(usize),
    #[error("character routes disagree for class {0}")]
    CharacterDisagreement(usize),
    #[error("internal assertion failed: {0}")]
    Internal(String),
}

impl Error {
    /// Input errors map to exit code 2, assertion failures to 1.
    pub fn is_input_error(&self) -> bool {
        !matches!(self, Error::Internal(_) | Error::CharacterDisagreement(_))
    }
}
