use thiserror::Error;

use crate::diffpoly::DiffPoly;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("polynomials live over different variable lists")]
    RingMismatch,

    #[error("variable index {index} out of range for a ring with {len} variables")]
    InvalidVariable { index: usize, len: usize },

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("polynomial does not involve variable `{0}`")]
    VariableAbsent(String),

    #[error("polynomial is constant and has no leader")]
    ConstantPolynomial,

    #[error("division by the zero polynomial")]
    ZeroDivisor,

    #[error("division by a nonzero constant")]
    ConstantDivisor,

    #[error("invalid ranking: {0}")]
    InvalidRanking(String),

    #[error("ranking mismatch: {0}")]
    RankingMismatch(String),

    #[error("inconsistent system: reduction produced the nonzero constant {witness}")]
    Inconsistent { witness: String },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("not a permutation: {0}")]
    InvalidPermutation(String),

    #[error("argument is not a single cycle")]
    NotACycle,

    #[error("hypothesis violated: {0}")]
    HypothesisFailure(String),

    #[error("matrix is not in {0}")]
    NotInForm(&'static str),

    #[error("degenerate situation: the separant {separant} of equation {equation} in `{var}` lies in the component")]
    Degenerate {
        equation: usize,
        var: String,
        separant: String,
    },

    #[error("separant {separant} of equation {equation} in `{var}` is not a unit; supply a characteristic set of the component")]
    NonUnitSeparant {
        equation: usize,
        var: String,
        separant: String,
    },

    #[error("graph is not {k}-regular: vertex {vertex} on the {side} side has degree {degree}")]
    NotRegular {
        k: usize,
        side: &'static str,
        vertex: usize,
        degree: usize,
    },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("ill-formed script entry {index}: {reason}")]
    BadScriptEntry { index: usize, reason: String },

    #[error("no convergence after {0} steps")]
    NoConvergence(usize),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),
}

impl Error {
    pub(crate) fn degenerate(equation: usize, var: &str, separant: &DiffPoly) -> Self {
        Error::Degenerate {
            equation,
            var: var.to_string(),
            separant: separant.to_string(),
        }
    }

    /// True for errors that signal a bug (or a counterexample to a theorem)
    /// rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::InvariantViolation(_))
    }
}
