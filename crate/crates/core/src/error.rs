use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("operation requires a field, got {0}")]
    NotAField(String),
    #[error("element is not a unit: {0}")]
    NotAUnit(String),
    #[error("Pfaffian of an odd-size ({0}x{0}) matrix")]
    OddSizePfaffian(usize),
    #[error("Pfaffian order {0} is odd")]
    OddOrder(usize),
    #[error("operation requires an odd size, got {0}")]
    EvenSize(usize),
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("colon by the zero polynomial")]
    ColonByZero,
    #[error("matrix is not alternating")]
    NotAlternating,
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("not a graph of an alternating map: {0}")]
    NonAlternatingGraph(String),
    #[error("subspaces are not complementary: {0}")]
    NotComplementary(String),
    #[error("parity violation: {0}")]
    ParityViolation(String),
    #[error("not a subbundle: {0}")]
    NotSubbundle(String),
    #[error("grade condition fails: {0}")]
    GradeViolation(String),
    #[error("twist parity: {0}")]
    TwistParityError(String),
    #[error("determinant is a zero divisor")]
    ZeroDivisorDet,
    #[error("unknown lemma id `{0}`")]
    UnknownLemma(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("not Lagrangian: {0}")]
    NotLagrangian(String),
    #[error("degenerate form: {0}")]
    DegenerateForm(String),
    #[error("maps do not form a complex: {0}")]
    NotAComplex(String),
    #[error("not homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("invalid input: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
