use thiserror::Error;

/// Errors raised by group constructions and searches.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("image list is not a bijection of 0..{0}")]
    NotBijective(usize),

    #[error("generator list is empty")]
    EmptyGenerators,

    #[error("group order {order} exceeds the bound {bound}")]
    OrderBoundExceeded { order: u128, bound: u128 },

    #[error("element is not a member of the group")]
    NotMember,

    #[error("subgroup is not normal")]
    NotNormal,

    #[error("subgroup is not characteristic")]
    NotCharacteristic,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid group spec: {0}")]
    InvalidSpec(String),

    #[error("map is not a homomorphism: {0}")]
    NotHomomorphism(String),

    #[error("no generating set of size at most 3 was found")]
    NoSmallGeneratingSet,

    #[error("search bound exceeded: {0}")]
    SearchBoundExceeded(String),

    #[error("search cancelled")]
    Cancelled,

    #[error("kernel has nontrivial center (order {0}); liens here require a trivial center, which makes the kernel representable")]
    NontrivialCenter(u128),

    #[error("invalid Lie-type parameters: {0}")]
    InvalidLieParams(String),

    #[error("recursion depth exceeded composition length bound {0}")]
    RecursionDepth(usize),

    #[error("invariant violated: {0}")]
    Invariant(String),
}

impl GroupError {
    /// True for errors caused by a size cap rather than bad input.
    pub fn is_bound(&self) -> bool {
        matches!(
            self,
            GroupError::OrderBoundExceeded { .. } | GroupError::SearchBoundExceeded(_)
        )
    }

    pub fn is_parse(&self) -> bool {
        matches!(self, GroupError::Parse(_) | GroupError::InvalidSpec(_))
    }
}

pub type Result<T, E = GroupError> = std::result::Result<T, E>;
