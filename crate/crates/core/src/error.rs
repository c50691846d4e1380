use thiserror::Error;

/// Errors raised by construction, parsing and evaluation. Verification
/// outcomes of the theorem checkers are verdicts, never errors.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at {line}:{col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("unknown name `{0}`")]
    UnknownName(String),
    #[error("`{0}` is already declared")]
    Redeclared(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("inversion of zero")]
    InversionOfZero,
    #[error("scalars belong to different parameter rings")]
    RingMismatch,
    #[error("elements belong to different algebras")]
    AlgebraMismatch,
    #[error("tensor signatures differ")]
    SignatureMismatch,
    #[error("negative power of non-invertible generator `{0}`")]
    NegativePower(String),
    #[error("`{0}` is not a unit")]
    NotUnit(String),
    #[error("relation {relation} violated: {witness}")]
    RelationViolation { relation: String, witness: String },
    #[error("not an automorphism: {0}")]
    NotAutomorphism(String),
    #[error("axiom {axiom} fails: {witness}")]
    Axiom { axiom: String, witness: String },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("evaluation error: {0}")]
    Eval(String),
    #[error("re-verification failed (engine bug): {0}")]
    Reverify(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    /// Usage and parse problems, as opposed to failures during execution.
    pub fn is_usage(&self) -> bool {
        matches!(self, Error::Syntax { .. } | Error::UnknownName(_) | Error::Redeclared(_))
    }
}
