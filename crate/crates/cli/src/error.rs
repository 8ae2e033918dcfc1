use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },

    #[error("unknown name {0:?}")]
    UnknownName(String),

    #[error("name {0:?} is bound twice")]
    DuplicateName(String),

    #[error("{name:?} is {found}, expected {expected}")]
    WrongKind { name: String, expected: &'static str, found: &'static str },

    #[error("schema violation at {path}: {message}")]
    Schema { path: String, message: String },

    #[error("bad polynomial at {path}: {source}")]
    Polynomial {
        path: String,
        #[source]
        source: weiljets::Error,
    },

    #[error("binding {0:?} failed earlier in the session")]
    FailedBinding(String),

    #[error(transparent)]
    Kernel(#[from] weiljets::Error),

    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub(crate) fn schema(path: impl Into<String>, message: impl Into<String>) -> Self {
        CliError::Schema { path: path.into(), message: message.into() }
    }

    /// Exit code: 2 for anything detected while parsing, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Kernel(_) | CliError::FailedBinding(_) => 1,
            _ => 2,
        }
    }
}
