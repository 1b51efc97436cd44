use thiserror::Error;

/// Errors raised while constructing or interrogating finite rings and modules.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid modulus {0}: integers-mod-n requires n >= 2")]
    InvalidModulus(i64),
    #[error("coefficient ring of a polynomial quotient must be a prime field, got Z/{0}")]
    NotPrimeField(u64),
    #[error("quotient is not recognisably finite: {0}")]
    InfiniteQuotient(String),
    #[error("construction yields the zero ring")]
    ZeroRing,
    #[error("{what} exceeds cap: {actual} > {limit}")]
    CapExceeded {
        what: &'static str,
        limit: usize,
        actual: usize,
    },
    #[error("operands live over different rings: {0} vs {1}")]
    RingMismatch(String, String),
    #[error("operands live in different modules: {0} vs {1}")]
    ModuleMismatch(String, String),
    #[error("ring {0} has a nonzero nilpotent and is not a product of fields")]
    NotSemisimple(String),
    #[error("polynomial product of degree {degree} exceeds working bound {bound}")]
    DegreeOverflow { degree: usize, bound: usize },
    #[error("hypothesis failed: {0}")]
    HypothesisFailed(String),
    #[error("degenerate instance: {0}")]
    Degenerate(String),
    #[error("unknown property `{0}`")]
    UnknownProperty(String),
    #[error("cannot read `{text}` as an element of {structure}")]
    InvalidElement { text: String, structure: String },
    #[error("invalid polynomial `{0}`")]
    InvalidPolynomial(String),
    #[error("syntax error at {line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unresolved name `{name}` at {line}:{column}")]
    Resolution { name: String, line: usize, column: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn cap(what: &'static str, limit: usize, actual: usize) -> Self {
        Error::CapExceeded { what, limit, actual }
    }

    pub fn is_cap(&self) -> bool {
        matches!(self, Error::CapExceeded { .. })
    }
}
