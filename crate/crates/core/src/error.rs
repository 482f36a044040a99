use alloc::string::String;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("syntax error at offset {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("operands belong to different algebras")]
    SpaceMismatch,
    #[error("operation not supported for space {0}")]
    UnsupportedSpace(String),
    #[error("no R-matrix data for space {0}")]
    MissingRMatrix(String),
    #[error("singular linear system at degree {degree} for {space} ({kind})")]
    Singular {
        degree: usize,
        space: String,
        kind: String,
    },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("lattice sums need q > 1, got {0}")]
    QOutOfRange(f64),
    #[error("quasipoint outside the lattice window")]
    OutsideWindow,
    #[error("zero norm on the chosen window")]
    ZeroNorm,
    #[error("norm is not a positive real number: {0}")]
    NormNotPositive(String),
    #[error("invalid data: {0}")]
    Invalid(String),
}

pub type Result<T> = core::result::Result<T, Error>;
