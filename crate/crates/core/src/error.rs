use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("group too large: closure exceeded {bound} elements")]
    GroupTooLarge { bound: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid complex: {0}")]
    InvalidComplex(String),

    #[error("generator {generator} does not act simplicially: image of simplex {simplex} is not a simplex")]
    NotSimplicial { generator: String, simplex: String },

    #[error("{what} too large: exceeded budget of {budget}")]
    Budget { what: &'static str, budget: usize },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("{stage} verification failed: {witness}")]
    Verification { stage: String, witness: String },

    #[error("integer overflow during {0}")]
    Overflow(&'static str),

    #[error("{0}")]
    Invalid(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn verification(stage: impl Into<String>, witness: impl Into<String>) -> Self {
        Error::Verification {
            stage: stage.into(),
            witness: witness.into(),
        }
    }

    pub fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }

    /// Process exit code used by the command line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Verification { .. } => 1,
            Error::Budget { .. } | Error::GroupTooLarge { .. } => 3,
            _ => 2,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
