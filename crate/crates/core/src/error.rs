use thiserror::Error;

use crate::simplicial::Vertex;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid composition vector: {0}")]
    InvalidComposition(String),
    #[error("invalid monomial {exponents:?} for c = {c:?}")]
    InvalidMonomial { exponents: Vec<u32>, c: Vec<u32> },
    #[error("multicomplex is full (not proper)")]
    NotProper,
    #[error("census too large: {cells} grid cells exceeds cap {cap}")]
    CensusTooLarge { cells: u64, cap: u64 },
    #[error("{what} too large: {size} exceeds cap {cap}")]
    TooLarge {
        what: &'static str,
        size: u64,
        cap: u64,
    },
    #[error("facet vertex {0} is outside the vertex universe")]
    InvalidFacet(Vertex),
    #[error("join of complexes with overlapping vertex universes")]
    OverlappingUniverses,
    #[error("invalid cyclic polytope parameters p = {p}, q = {q}")]
    InvalidCyclic { p: usize, q: usize },
    #[error("no vector assigned to vertex {0}")]
    MissingAssignment(Vertex),
    #[error("integer overflow in exact arithmetic")]
    Overflow,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
}

impl Error {
    /// True for errors caused by a configured size cap rather than bad input.
    pub fn is_size_cap(&self) -> bool {
        matches!(self, Error::CensusTooLarge { .. } | Error::TooLarge { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
