use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Text input did not match the expected grammar.
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    /// A character table parsed fine but violates one of the orthogonality
    /// or dimension identities.
    #[error("invalid character table: {0}")]
    TableValidation(String),

    /// Operands live over different groups, or an index is out of range.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("not a virtual character: multiplicity of {irrep} is {value}")]
    NotVirtualCharacter { irrep: String, value: String },

    #[error("unsupported: {0}")]
    Unsupported(String),

    /// Input violates a documented precondition (non-integral Furuta
    /// coefficient, even group order at J, bad covering data, ...).
    #[error("{0}")]
    Precondition(String),

    /// An integrality or consistency assertion failed that cannot fail for
    /// valid inputs. Seeing this means a bug or a corrupted table.
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}
