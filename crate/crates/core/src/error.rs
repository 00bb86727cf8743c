use alloc::string::String;
use core::fmt;

/// Errors surfaced by the simulation core.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Malformed edge-list input; carries the 1-based line number.
    Parse { line: usize, msg: String },
    /// Invalid parameter or architecture configuration.
    Config(String),
    /// Tables and architecture disagree (e.g. a subgraph pattern missing
    /// from the configuration table).
    Consistency(String),
    /// An engine invariant was violated (e.g. reconfiguring a sealed
    /// static crossbar).
    Engine(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Parse { line, msg } => write!(f, "parse error at line {line}: {msg}"),
            Error::Config(msg) => write!(f, "configuration error: {msg}"),
            Error::Consistency(msg) => write!(f, "consistency error: {msg}"),
            Error::Engine(msg) => write!(f, "engine error: {msg}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
