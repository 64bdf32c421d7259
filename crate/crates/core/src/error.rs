use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A rung on one of the two grids, counted from the top digit down and from
/// the line of each digit upward.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RungAddr {
    pub grid: GridId,
    pub digit: usize,
    pub rung: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GridId {
    Lower,
    Upper,
}

impl std::fmt::Display for RungAddr {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let g = match self.grid {
            GridId::Lower => "lower",
            GridId::Upper => "upper",
        };
        write!(f, "{g}[{}].{}", self.digit, self.rung)
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("digit {digit} out of range for base {base}")]
    DigitOutOfRange { digit: u64, base: u32 },
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("capacity exceeded: {0}")]
    Capacity(String),
    #[error("illegal move{}: {reason}", at.map(|a| format!(" at {a}")).unwrap_or_default())]
    IllegalMove { at: Option<RungAddr>, reason: String },
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid digit budget {budget} (allowed 1..={max})")]
    Budget { budget: usize, max: usize },
    #[error("script error: {0}")]
    Script(String),
    #[error("replay failed at step {step}: {reason}")]
    Replay { step: usize, reason: String },
    #[error("invalid argument: {0}")]
    Invalid(String),
}

impl Error {
    pub(crate) fn illegal(at: impl Into<Option<RungAddr>>, reason: impl Into<String>) -> Self {
        Error::IllegalMove { at: at.into(), reason: reason.into() }
    }

    /// Process exit code used by the command line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) | Error::DigitOutOfRange { .. } | Error::Invalid(_) | Error::Config(_) => 2,
            Error::Capacity(_) | Error::Budget { .. } => 3,
            Error::DivisionByZero => 4,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
