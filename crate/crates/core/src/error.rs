use thiserror::Error;

/// Errors raised by group construction and analysis.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("generators act on different degrees ({expected} vs {found})")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("permutation degree {0} exceeds the supported maximum of 16")]
    DegreeTooLarge(usize),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("group universe exceeds the cap of {cap} elements")]
    UniverseOverflow { cap: usize },
    #[error("element id {id} is out of range for a group of order {order}")]
    InvalidId { id: usize, order: usize },
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("collection did not terminate within {0} rewrite steps")]
    NonTerminating(u64),
    #[error("presentation is inconsistent: {0}")]
    Inconsistent(String),
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("group order {order} exceeds the lattice cap {cap}")]
    OrderCapExceeded { order: usize, cap: usize },
    #[error("subgroups belong to different parent groups")]
    ParentMismatch,
    #[error("operation requires a non-trivial group")]
    TrivialGroup,
    #[error("group of order {0} is not a p-group")]
    NotPGroup(usize),
    #[error("group of order {0} is not a 2-group")]
    NotTwoGroup(usize),
    #[error("subgroup is not abelian")]
    NotAbelian,
    #[error("generator search exceeded its budget of {0} closures")]
    SearchBudgetExceeded(usize),
    #[error("unknown group family `{0}`")]
    UnknownFamily(String),
    #[error("parameter out of range: {0}")]
    ParamOutOfRange(String),
    #[error("identified subgroup is not central")]
    NotCentral,
    #[error("identification map is not an isomorphism")]
    NotIsomorphism,
    #[error("action of generator {0} is not an automorphism")]
    NotAutomorphism(usize),
    #[error("action does not define a homomorphism")]
    ActionNotHomomorphic,
    #[error("invalid Cayley table: {0}")]
    InvalidTable(String),
    #[error("schema violation: {0}")]
    SchemaViolation(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
