use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime below 65536")]
    NotPrime(u32),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("hypothesis of ψ requires dim V ≥ 2")]
    PsiNeedsPlane,

    #[error("enumeration needs {required} cases, budget is {budget}")]
    BudgetExceeded { required: String, budget: u64 },

    #[error("bilinear structure is not alternating")]
    NotAlternating,

    #[error("class-2 exponent-p groups need an odd prime, got {0}")]
    EvenPrime(u32),

    #[error("group is not nilpotent: lower central series stalls at order {order}")]
    NotNilpotent { order: usize },

    #[error("lemma hypothesis requires class 3 (group has class {class})")]
    ClassTooLarge { class: usize },

    #[error("group order {0} is not a prime power")]
    NotPrimePower(usize),

    #[error("no non-central element")]
    NoNonCentral,

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}
