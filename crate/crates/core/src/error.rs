use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("polynomial division left a nonzero remainder")]
    NotDivisible,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("degenerate parameters: {0}")]
    DegenerateParameters(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("no operator within the degree bounds reproduces the fold")]
    NoSolution,
    #[error("fold is not unique within the degree bounds (nullspace dimension {0})")]
    NonUnique(usize),
    #[error("band c[{n}][{k}] vanishes")]
    ZeroBand { n: usize, k: i64 },
    #[error("recurrence block A_{0} is singular")]
    SingularBlock(usize),
    #[error("leading coefficient of P_{0} is singular")]
    SingularLeadingCoefficient(usize),
    #[error("weight has irrational moments: {0}")]
    IrrationalMoments(String),
    #[error("solver did not stabilize (last dimensions {last:?})")]
    DidNotStabilize { last: Vec<usize> },
    #[error("P_{0} is not an eigenfunction of the operator")]
    NotAnEigenfunction(usize),
    #[error("coefficient system of P_{0} is rank deficient")]
    RankDeficient(usize),
    #[error(
        "eigenvalue table is not polynomial of the requested degree (first deviation at n = {0})"
    )]
    NotPolynomial(usize),
    #[error("parse error: {0}")]
    Parse(String),
}
