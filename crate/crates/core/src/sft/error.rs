use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SftError {
    #[error("alphabet is empty")]
    EmptyAlphabet,
    #[error("duplicate token `{0}`")]
    DuplicateToken(String),
    #[error("invalid token `{0}`")]
    InvalidToken(String),
    #[error("unknown token `{0}`")]
    UnknownToken(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("pattern is empty")]
    EmptyPattern,
    #[error("conflicting symbols at {0}")]
    ConflictingCell(String),
    #[error("symbol index {index} out of range for alphabet of size {size}")]
    SymbolOutOfRange { index: u32, size: usize },
    #[error("tileset is empty")]
    EmptyTileset,
    #[error("duplicate tile name `{0}`")]
    DuplicateTile(String),
    #[error("duplicate layer name `{0}`")]
    DuplicateLayer(String),
    #[error("unknown layer `{0}`")]
    UnknownLayer(String),
    #[error("allowed set is empty")]
    EmptyAllowed,
    #[error("block code has no entry for window {0}")]
    TableMiss(String),
    #[error("configuration does not fit the specification: {0}")]
    Mismatch(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

impl SftError {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        SftError::Parse { line, msg: msg.into() }
    }
}
