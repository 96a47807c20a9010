use thiserror::Error;

/// Errors raised by the pipeline.
///
/// Every message is prefixed by the module that raised it so that command
/// line diagnostics can attribute failures.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("lie_core: invalid type {0}")]
    InvalidType(String),

    #[error("level_class: {0} is not in the Deligne exceptional series")]
    NotDeligneSeries(String),

    #[error("level_class: Deligne level k = {0} is a nonnegative integer and is excluded")]
    ExcludedLevel(String),

    #[error("{module}: critical level k = {level}")]
    CriticalLevel { module: &'static str, level: String },

    #[error("vacuum_engine: degree {requested} exceeds the engine bound {bound}")]
    Truncation { requested: usize, bound: usize },

    #[error("vacuum_engine: {0}")]
    Uncertified(String),

    #[error("assoc_variety: the ideal is the unit ideal (empty variety)")]
    UnitIdeal,

    #[error("modular_mlde: {rows} coefficient rows available, {needed} required")]
    InsufficientTruncation { rows: usize, needed: usize },

    #[error("modular_mlde: root {0} is a repeated indicial root (logarithmic case)")]
    LogarithmicCase(String),

    #[error("modular_mlde: root {root} is resonant with another indicial root at shift {shift}")]
    ResonantRoot { root: String, shift: usize },

    #[error("modular_mlde: {0} is not an indicial root")]
    NotIndicialRoot(String),

    #[error("modular_mlde: series exponents {0} and {1} do not differ by a nonnegative integer")]
    MisalignedSeries(String, String),

    #[error("{module}: {message}")]
    Unsupported { module: &'static str, message: String },

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Process exit code used by the command line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidType(_) | Error::Parse(_) => 2,
            Error::Truncation { .. } | Error::InsufficientTruncation { .. } => 4,
            _ => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
