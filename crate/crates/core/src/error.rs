use alloc::string::String;
use thiserror::Error;

/// Errors raised by the core algebra.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("subtraction leaves a negative coefficient at {0}")]
    NegativeCoefficient(String),
    #[error("coefficient overflow")]
    CoefficientOverflow,
    #[error("{0} is not a product of A-monomials")]
    NotInLattice(String),
    #[error("right-negativity is undefined for the identity monomial")]
    EmptyMonomial,
    #[error("strings have different steps ({0} and {1})")]
    StepMismatch(i32, i32),
    #[error("{0} is not dominant")]
    NotDominant(String),
    #[error("{0} is not reachable from the base by A-inverse steps")]
    NotAPullback(String),
    #[error("string decomposition of {0} is not in general position")]
    DecompositionFailed(String),
    #[error("second dominant monomial {0}")]
    SecondDominantFound(String),
    #[error("colouring is inconsistent at {0}")]
    FmInconsistent(String),
    #[error("more than {0} distinct monomials")]
    TermCapExceeded(usize),
    #[error("work budget of {0} monomial products exceeded")]
    WorkBudgetExceeded(u64),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("identity fails: {0}")]
    IdentityFails(String),
    #[error("polynomial is not exactly divisible")]
    NotDivisible,
    #[error("non-integral result: {0}")]
    NonIntegralResult(String),
    #[error("recursion cycle through {0}")]
    RecursionCycle(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = core::result::Result<T, Error>;
