use crate::real::RealError;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("universe size {n} exceeds the configured cap {cap}")]
    UniverseTooLarge { n: u64, cap: u32 },
    #[error("shift-down index would hold {predicted} triples, over the budget of {budget}")]
    ShiftDownBudget { predicted: u64, budget: u64 },
    #[error(
        "gamma reduction exhausted after {steps} step(s): accumulated prefix {prefix:?} \
         left {final_len} member(s) of cardinality {final_m}"
    )]
    ReductionExhausted { steps: usize, prefix: Vec<u32>, final_len: usize, final_m: usize },
    #[error(transparent)]
    Real(#[from] RealError),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
