use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("objects are defined over different base fields")]
    FieldMismatch,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("degree {degree} exceeds the bound {bound}")]
    DegreeOverflow { degree: u32, bound: u32 },
    #[error("exponent {exponent} leaves the window [{lo}, {hi}]")]
    WindowOverflow { exponent: i64, lo: i64, hi: i64 },
    #[error("element is not annihilated by D")]
    NotDegreeZero,
    #[error("element is not a unit")]
    NotAUnit,
    #[error("inconclusive: {0}")]
    Inconclusive(String),
    #[error("out of supported range: {0}")]
    OutOfRange(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("modules are over different algebras")]
    AlgebraMismatch,
    #[error("not a cover: the elements generate a proper ideal")]
    NotACover,
}

pub type Result<T> = std::result::Result<T, Error>;
