//! Error type shared across the crate.

use std::fmt;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// All failure modes of the library.
///
/// Each variant maps to a stable category string (see [`Error::category`])
/// so callers can emit machine-parsable `error: <category>: ...` lines.
#[derive(Debug)]
pub enum Error {
    /// Argument outside its mathematical domain (orders, grid sizes, ...).
    Domain(String),
    /// Fractional order too close to an odd integer: kappa = 1/(2 cos(nu pi/2))
    /// is unbounded there.
    SingularOrder(f64),
    /// Row/node index outside the valid range.
    IndexOutOfRange(String),
    /// Matrix/vector shapes do not agree.
    DimensionMismatch(String),
    /// LU elimination hit a pivot below the singularity threshold.
    SingularMatrix {
        pivot_row: usize,
    },
    /// A solution field stopped being finite at the given time step.
    NonFinite {
        step: usize,
    },
    /// Expression text could not be parsed; `offset` is a byte position.
    Syntax {
        offset: usize,
        message: String,
    },
    /// Identifier not in the variable/function whitelist.
    UnknownIdentifier {
        offset: usize,
        name: String,
    },
    /// Function called with the wrong number of arguments.
    Arity {
        offset: usize,
        name: String,
        expected: usize,
        found: usize,
    },
    /// Expression evaluation produced NaN or infinity.
    Eval(String),
    /// Config file violated the schema; the message names the offending key.
    Schema(String),
    /// Problem specification failed validation (sign conditions, compatibility).
    Spec(String),
    Io(std::io::Error),
}

impl Error {
    /// Stable one-word category used as the machine-parsable error prefix.
    pub fn category(&self) -> &'static str {
        match self {
            Error::Domain(_) => "domain",
            Error::SingularOrder(_) => "singular-order",
            Error::IndexOutOfRange(_) => "index",
            Error::DimensionMismatch(_) => "dimension",
            Error::SingularMatrix { .. } => "singular-matrix",
            Error::NonFinite { .. } => "non-finite",
            Error::Syntax { .. } => "syntax",
            Error::UnknownIdentifier { .. } => "unknown-identifier",
            Error::Arity { .. } => "arity",
            Error::Eval(_) => "eval",
            Error::Schema(_) => "schema",
            Error::Spec(_) => "spec",
            Error::Io(_) => "io",
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(msg) => write!(f, "{msg}"),
            Error::SingularOrder(nu) => write!(
                f,
                "order {nu} is too close to an odd integer; kappa(nu) = 1/(2 cos(nu pi/2)) blows up"
            ),
            Error::IndexOutOfRange(msg) => write!(f, "{msg}"),
            Error::DimensionMismatch(msg) => write!(f, "{msg}"),
            Error::SingularMatrix { pivot_row } => {
                write!(f, "matrix is numerically singular at pivot row {pivot_row}")
            }
            Error::NonFinite { step } => {
                write!(f, "solution field became non-finite at time step {step}")
            }
            Error::Syntax { offset, message } => write!(f, "at byte {offset}: {message}"),
            Error::UnknownIdentifier { offset, name } => {
                write!(f, "at byte {offset}: unknown identifier `{name}`")
            }
            Error::Arity {
                offset,
                name,
                expected,
                found,
            } => write!(
                f,
                "at byte {offset}: `{name}` takes {expected} argument(s), found {found}"
            ),
            Error::Eval(msg) => write!(f, "{msg}"),
            Error::Schema(msg) => write!(f, "{msg}"),
            Error::Spec(msg) => write!(f, "{msg}"),
            Error::Io(err) => write!(f, "{err}"),
        }
    }
}

impl std::error::Error for Error {}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err)
    }
}
