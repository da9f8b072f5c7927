use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("pole: polylogarithm evaluated at 1")]
    DegeneratePole,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("outside the closed-form domain: {0}")]
    OutOfClosedFormDomain(String),
    #[error("monodromy sum {sum} is not divisible by {n}")]
    MonodromyViolation { n: u32, sum: u64 },
    #[error("all monodromies must be nontrivial")]
    NontrivialMonodromyRequired,
    #[error("degenerate rank: r1 + r1bar = 0")]
    DegenerateRank,
    #[error("degenerate degree: 2g-3+m = {0} < 0")]
    DegenerateDegree(i64),
    #[error("polylogarithm order {0} is positive")]
    LiOrderPositive(i64),
    #[error("series registries differ")]
    RegistryMismatch,
    #[error("bad constant term for {0}")]
    BadConstantTerm(&'static str),
    #[error("exponent outside truncation")]
    OutOfTruncation,
}

pub type Result<T> = std::result::Result<T, Error>;
