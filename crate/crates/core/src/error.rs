use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands live in different fields")]
    DescriptorMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("p-adic precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("invalid field descriptor: {0}")]
    InvalidDescriptor(String),
    #[error("operation unsupported for characteristic {0}")]
    UnsupportedCharacteristic(u64),
    #[error("zero input")]
    ZeroInput,
    #[error("Hensel hypothesis failed: v(f(x0)) = {residual} <= 2 * v(f'(x0)) = {twice_derivative}")]
    HenselHypothesisFailed { residual: String, twice_derivative: String },
    #[error("field is infinite")]
    InfiniteField,
    #[error("unsupported field for this operation: {0}")]
    UnsupportedField(String),
    #[error("constant polynomial where a nonconstant one is required")]
    ConstantInput,
    #[error("unsupported degree {0}")]
    UnsupportedDegree(usize),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("degree too small: {0}")]
    DegreeTooSmall(usize),
    #[error("dimension {0} too large")]
    DimensionTooLarge(usize),
    #[error("degree {0} too large")]
    DegreeTooLarge(usize),
    #[error("degenerate degree n = 1")]
    DegenerateDegree,
    #[error("vector is not in U (p_a not separable and irreducible)")]
    NotInU,
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("enumeration budget exceeded: {needed} > {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("inconclusive: {0}")]
    Inconclusive(String),
    #[error("scale entries must be nonzero")]
    ZeroScale,
    #[error("point is not witnessed in its cover")]
    WitnessMissing,
    #[error("negative input")]
    NegativeInput,
    #[error("element is not invertible")]
    NotInvertible,
    #[error("invalid cover: {0}")]
    InvalidCover(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
