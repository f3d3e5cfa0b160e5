use std::path::PathBuf;

use thiserror::Error;

use crate::phoneset::PhoneSet;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    /// Malformed line in one of the tabular input formats.
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// Malformed rule in the rule DSL.
    #[error("line {line}, column {column}: {msg}")]
    Syntax {
        line: usize,
        column: usize,
        msg: String,
    },

    #[error("line {line}: duplicate {column} token `{token}`")]
    DuplicateSymbol {
        line: usize,
        column: &'static str,
        token: String,
    },

    #[error("line {line}: symbol `{symbol}` has no IPA glyph")]
    MissingIpa { line: usize, symbol: String },

    #[error("unknown {set} token `{token}` at position {position}")]
    UnknownToken {
        token: String,
        position: usize,
        set: PhoneSet,
    },

    #[error("phone `{phone}` has no {set} mapping")]
    Unmapped { phone: String, set: PhoneSet },

    #[error("entries with phones unmapped in {set}: {}", words.join(", "))]
    UnmappedWords { set: PhoneSet, words: Vec<String> },

    #[error("{0}")]
    InvalidRule(String),

    #[error("duplicate rule id `{0}`")]
    DuplicateRuleId(String),

    #[error("unknown language `{0}`")]
    UnknownLanguage(String),

    #[error("unknown group {0} (expected 1-5)")]
    UnknownGroup(u8),

    #[error("unknown characteristic tag `{0}`")]
    UnknownTag(String),

    #[error("{language}: declared {declared} phones but lists {listed}")]
    CountMismatch {
        language: String,
        declared: usize,
        listed: usize,
    },

    #[error("label sequences differ in length ({left} vs {right})")]
    LengthMismatch { left: usize, right: usize },

    #[error("label sequences are empty")]
    EmptyLabels,

    #[error("chance agreement is 1 but observed agreement is {p_o}")]
    DegenerateKappa { p_o: f64 },

    #[error("threshold {0} outside (0, 1]")]
    InvalidThreshold(f64),

    #[error("frequency map is empty")]
    EmptyFrequencies,
}

impl Error {
    /// True for failures to render a phone in a target phone set.
    pub fn is_mapping(&self) -> bool {
        matches!(self, Error::Unmapped { .. } | Error::UnmappedWords { .. })
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

pub(crate) fn read_to_string(path: &std::path::Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::io(path, e))
}
