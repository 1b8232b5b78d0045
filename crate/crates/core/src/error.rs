use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("point is not on the curve")]
    NotOnCurve,
    #[error("singular curve: {0}")]
    SingularCurve(String),
    #[error("bad reduction at p = {0}")]
    BadPrime(u64),
    #[error("identity check `{name}` failed: {detail}")]
    IdentityFailed { name: String, detail: String },
    #[error("verification failed at n = {index}: {detail}")]
    VerificationFailed { index: usize, detail: String },
    #[error("polynomial is not squarefree; repeated factor {0}")]
    NotSquarefree(String),
    #[error("non-minimal Weierstrass model at {0}")]
    NonMinimal(String),
    #[error("inconsistent fiber data: {0}")]
    InconsistentFibers(String),
    #[error("functional equation sign is undetermined by the available power sums")]
    AmbiguousSign,
    #[error("stage `{stage}` failed: {detail}")]
    Stage { stage: String, detail: String },
    #[error("computation too large: {0}")]
    TooLarge(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
