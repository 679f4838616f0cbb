use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("field degree k = {0} out of range 1..=16")]
    FieldDegree(u32),
    #[error("encoding {bits} is not an element of GF(2^{k})")]
    ElementRange { bits: u32, k: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live in different fields (GF(2^{0}) vs GF(2^{1}))")]
    FieldMismatch(u32, u32),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("t-action does not square to zero")]
    NotNilpotent,
    #[error("map does not commute with the t-action")]
    NotEquivariant,
    #[error("gram matrix violates the t-compatibility law beta(t.u, u') = beta(u, t.u')")]
    Incompatible,
    #[error("subspace is not stable under t")]
    NotStable,
    #[error("form is not symmetric")]
    NotSymmetric,
    #[error("form is not alternating")]
    NotAlternating,
    #[error("form is degenerate")]
    Degenerate,
    #[error("matrix is singular")]
    Singular,
    #[error("classification requires k >= 2, got GF(2^{0})")]
    FieldTooSmall(u32),
    #[error("invalid canonical class: {0}")]
    InvalidClass(String),
    #[error("non-degenerate quadratic form needs an even number of trivial summands, got m = {0}")]
    OddTrivialPart(usize),
    #[error("enumeration of 2^{needed} candidates exceeds budget 2^{budget}")]
    Budget { needed: u32, budget: u32 },
    #[error("parse error: {0}")]
    Parse(String),
    /// Invariants disagree with each other; indicates a defect, not bad input.
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

impl Error {
    /// True for errors that signal a defect rather than invalid input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Inconsistent(_))
    }
}
