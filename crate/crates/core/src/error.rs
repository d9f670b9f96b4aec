use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("polynomials live in different rings")]
    RingMismatch,
    #[error("expected {expected} values, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("variable index {0} out of range")]
    BadVariable(usize),
    #[error("division leaves a nonzero remainder")]
    NotDivisible,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },
    #[error("polynomial is not homogeneous of degree {0}")]
    NotHomogeneous(u32),
    #[error("{0}")]
    Invalid(String),
    #[error("quotient algebra is not finite dimensional")]
    NotFinite,
    #[error("relations have a nontrivial common zero (not very stable)")]
    NotVeryStable,
    #[error("top graded piece has dimension {0}, expected 1")]
    SocleNotOneDimensional(usize),
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("degenerate parameters: {0}")]
    DegenerateParameters(String),
    #[error("point has irrational coordinates but no quadratic extension was declared")]
    ExtensionRequired,
    #[error("curve is singular")]
    SingularCurve,
    #[error("groebner basis computation exceeded its deadline")]
    Timeout,
    #[error("parse error: {0}")]
    Parse(String),
}
