use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A division that an algebraic identity says is exact left a remainder.
    #[error("not divisible: {0}")]
    NotDivisible(String),
    #[error("seed factors are not pairwise coprime mod {0}")]
    NotSquarefree(u64),
    #[error("defining polynomial is reducible: {0}")]
    Reducible(String),
    #[error("element is not integral: {0}")]
    NotIntegral(String),
    #[error("element is not a unit: {0}")]
    NotUnit(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("valuation only known to be at least {0}")]
    PrecisionExceeded(i64),
    #[error("degree budget exceeded: degree {degree} > budget {budget}")]
    BudgetExceeded { degree: u128, budget: u128 },
    #[error("no orbit repetition within bound {0}")]
    BoundExceeded(usize),
    #[error("shape violation: {0}")]
    ShapeViolation(String),
    #[error("hypothesis unmet: {0}")]
    HypothesisUnmet(String),
    #[error("oracle mismatch: {0}")]
    OracleMismatch(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
