use std::path::PathBuf;

use lorenz_core::braid::BraidError;
use lorenz_core::flow::FlowError;
use lorenz_core::invariants::InvariantError;
use lorenz_core::jones::JonesError;
use lorenz_core::modular::ModularError;
use lorenz_core::tlink::TLinkError;
use lorenz_core::words::WordError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Braid(#[from] BraidError),
    #[error(transparent)]
    TLink(#[from] TLinkError),
    #[error(transparent)]
    Jones(#[from] JonesError),
    #[error(transparent)]
    Modular(#[from] ModularError),
    #[error(transparent)]
    Flow(#[from] FlowError),
    #[error(transparent)]
    Invariant(#[from] InvariantError),
    #[error("bad input: {0}")]
    BadInput(String),
    #[error("bad filter {0:?}: {1}")]
    BadFilter(String, String),
    #[error("{what} {requested} exceeds the cap {cap}")]
    CapExceeded {
        what: &'static str,
        requested: usize,
        cap: usize,
    },
    #[error("atlas line {line}: {reason}")]
    Corrupt { line: usize, reason: String },
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("output: {0}")]
    Output(#[from] std::io::Error),
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Self::Io {
            path: path.into(),
            source,
        }
    }

    /// 2 for invalid input, 3 for resource caps, 4 for I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::CapExceeded { .. } | Self::Jones(JonesError::TooManyCrossings { .. }) => 3,
            Self::Io { .. } | Self::Output(_) => 4,
            _ => 2,
        }
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        Self::Output(std::io::Error::other(e))
    }
}
