use std::io;

use thiserror::Error;

/// Errors raised while reading, aligning, segmenting or evaluating corpora.
#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("sentence {sentence}: {message}")]
    Structure { sentence: String, message: String },

    #[error("gold line {line}: {message}")]
    Gold { line: usize, message: String },

    #[error("sentence {sentence}, offset {offset}: {message}")]
    Align {
        sentence: String,
        offset: usize,
        message: String,
    },

    #[error("score line {line}: {message}")]
    Scores { line: usize, message: String },

    #[error("sentence has {len} tokens, above the enumeration cap of {cap}")]
    OracleCap { len: usize, cap: usize },

    #[error("corpus is empty")]
    EmptyCorpus,

    #[error("mismatch: {0}")]
    Mismatch(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    TomlRead(#[from] toml::de::Error),

    #[error(transparent)]
    TomlWrite(#[from] toml::ser::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
