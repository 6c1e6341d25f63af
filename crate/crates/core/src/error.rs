use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// A named hypothesis of a criterion that the input failed.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Precondition {
    #[error("gamma must lie in m^2 (found a term of degree {degree})")]
    GammaNotInSquare { degree: u32 },
    #[error("gamma must lie in m (found a nonzero constant term)")]
    GammaNotInMaximal,
    #[error("gamma has a non-isolated critical point (dim of critical locus at 0 is {dim})")]
    NonIsolatedCritical { dim: usize },
    #[error("the quotient is not a complete intersection ({generators} minimal generators in {nvars} variables)")]
    NotCompleteIntersection { generators: usize, nvars: usize },
    #[error("the quotient is not Artin: dim V(I) = {dim} > 0 at the origin")]
    NotArtin { dim: usize },
    #[error("the divisor is not reduced (dim V(f, df) = {dim} > n - 2)")]
    NotReduced { dim: i64 },
    #[error("derivation {index} is not logarithmic along the divisor")]
    NotTangent { index: usize },
    #[error("transition identity fails for row {row}: delta_j(gamma) != sum delta_j(x_i) g_i")]
    TransitionMismatch { row: usize },
    #[error("gamma must be homogeneous")]
    NonHomogeneous,
    #[error("{0}")]
    Other(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("polynomials live in different rings")]
    RingMismatch,
    #[error("variable index {index} out of range for a ring with {nvars} variables")]
    VariableIndex { index: usize, nvars: usize },
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    Shape(String),
    #[error("invalid divisor: {0}")]
    InvalidDivisor(String),
    #[error("colon by the zero ideal is the whole ring")]
    ColonByZero,
    #[error("infinite colength: dim V(I) = {dim} at the origin")]
    InfiniteColength { dim: usize },
    #[error("invalid gamma space: {0}")]
    InvalidGammaSpace(String),
    #[error("precondition failed: {0}")]
    Precondition(#[from] Precondition),
    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },
}
