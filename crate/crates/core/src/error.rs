use thiserror::Error;

/// Failure while tokenizing or parsing an expression.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at offset {position}: {message}")]
pub struct ParseError {
    /// Character offset into the input, always `<= input.len()`.
    pub position: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(position: usize, message: impl Into<String>) -> Self {
        Self {
            position,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("unbound variable `{0}`")]
    Unbound(String),

    #[error("domain error in `{node}`: {message}")]
    Domain { node: String, message: String },

    #[error("invalid order alpha = {alpha}: {message}")]
    Alpha { alpha: f64, message: String },

    #[error("invalid step: {0}")]
    Step(String),

    #[error("positivity precondition violated at t = {t}: {message}")]
    Positivity { t: f64, message: String },

    #[error("weight is undefined at t = {t}: classical derivative vanishes")]
    Singular { t: f64 },

    #[error("invalid grid: {0}")]
    Grid(String),

    #[error("weight `{0}` depends on t; a t-independent weight is required")]
    WeightClass(String),

    #[error("invalid weight: {0}")]
    Weight(String),

    #[error("no witness found on ({a}, {b}): {message}")]
    NoWitness { a: f64, b: f64, message: String },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("solution blew up at t = {t} (|y| = {y})")]
    Blowup { t: f64, y: f64 },
}

impl Error {
    pub(crate) fn domain(node: impl ToString, message: impl Into<String>) -> Self {
        Error::Domain {
            node: node.to_string(),
            message: message.into(),
        }
    }

    /// True for errors raised by evaluating an expression outside its domain.
    pub fn is_domain(&self) -> bool {
        matches!(self, Error::Domain { .. } | Error::Unbound(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
