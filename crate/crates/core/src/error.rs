use thiserror::Error;

/// Crate-wide error type. Variants mirror the failure modes of the public
/// operations; parse errors carry a position for diagnostics.
#[derive(Error, Debug, Clone, PartialEq)]
pub enum Error {
    #[error("conductor {found} does not divide target conductor {target}")]
    InvalidEmbedding { found: u32, target: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("arity mismatch: {0}")]
    Arity(String),
    #[error("gcd of two zero polynomials is undefined")]
    UndefinedGcd,
    #[error("zero input: {0}")]
    ZeroInput(String),
    #[error("component must be non-constant: {0}")]
    InvalidComponent(String),
    #[error("group closure exceeds the order bound {0}")]
    OrderBound(usize),
    #[error("generator is not invertible")]
    InvalidGenerator,
    #[error("unknown builtin family `{0}`")]
    UnknownFamily(String),
    #[error("quotient tensor calculus requires a group generated by pseudo-reflections")]
    UnsupportedQuotient,
    #[error("not invariant: {0}")]
    NotInvariant(String),
    #[error("incomplete invariant generators: {0}")]
    IncompleteGenerators(String),
    #[error("internal incompleteness: linear system for `{0}` has no solution (bad chart?)")]
    InternalIncompleteness(String),
    #[error("chart mismatch: expected `{expected}`, found `{found}`")]
    ChartMismatch { expected: String, found: String },
    #[error("tensor field is zero; divisor operations need a nonzero field")]
    ZeroTensor,
    #[error("no admissible adapted chart: every partial of `{0}` is divisible by it")]
    SingularComponent(String),
    #[error("divisor multiplicities must be >= 1 (got {0})")]
    InvalidDivisor(i64),
    #[error("singular chart: the coordinate change has vanishing Jacobian determinant")]
    SingularChart,
    #[error("symmetry violation: {0}")]
    NotSymmetric(String),
    #[error("parse error at {line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn parse(line: usize, col: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            col,
            msg: msg.into(),
        }
    }

    /// Exit-code class of the error for the CLI: all library errors are
    /// precondition failures (class 1); falsification events are reported
    /// separately by the commands that can produce them.
    pub fn is_precondition(&self) -> bool {
        true
    }
}
