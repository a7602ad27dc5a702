use thiserror::Error;

/// Errors raised by the algebraic constructions in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cyclotomic order must be positive")]
    ZeroOrder,
    #[error("division by zero")]
    DivisionByZero,
    #[error("scalars live in different cyclotomic fields (orders {0} and {1})")]
    FieldMismatch(u32, u32),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("variable count mismatch ({0} vs {1})")]
    VariableMismatch(usize, usize),
    #[error("a numeric value is required but `{0}` depends on parameters")]
    NotNumeric(String),
    #[error("elimination cannot proceed: {0}")]
    Elimination(String),
    #[error("degree {degree} exceeds the bound {bound}")]
    DegreeOverflow { degree: u32, bound: u32 },
    #[error("bracket ({i},{j}) has weighted degree {degree} above the filtration bound {bound}")]
    FiltrationViolated {
        i: usize,
        j: usize,
        degree: u32,
        bound: u32,
    },
    #[error("invalid structure data: {0}")]
    InvalidStructure(String),
    #[error("algebra is not graded quadratic: {0}")]
    NotGradedQuadratic(String),
    #[error("action does not preserve degree: {0}")]
    NotLinear(String),
    #[error("letter `{0}` is not central")]
    NotCentral(String),
    #[error("degenerate skew parameter for pair ({0},{1}): lambda * c = +-1")]
    Degenerate(usize, usize),
    #[error("operation requires a Taft algebra")]
    NotTaft,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
