use thiserror::Error;

/// Errors raised by the poset, category and semigroup machinery.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("`{0}` is not below `{1}`")]
    NotComparable(String, String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("duplicate element `{0}`")]
    DuplicateElement(String),
    #[error("order relation has a cycle through `{0}` and `{1}`")]
    Cyclic(String, String),
    #[error("relation is not transitive: `{0}` <= `{1}` <= `{2}`")]
    NotTransitive(String, String, String),

    #[error("morphism `{0}` is not factorization-closed in this slice")]
    IncompleteSlice(String),
    #[error("incidence function vanishes on identity `{0}`")]
    NotInvertible(String),
    #[error("slice is not Möbius: {0}")]
    NotMoebius(String),
    #[error("incidence function has {got} values but the slice has {expected} morphisms")]
    LengthMismatch { expected: usize, got: usize },
    #[error("malformed slice: {0}")]
    MalformedSlice(String),

    #[error("interval has {count} morphisms between two factorizations")]
    NotThin { count: usize },
    #[error("not one-way: {0}")]
    NotOneWay(String),
    #[error("interval has no least or greatest factorization")]
    Unbounded,

    #[error("modulus must be at least 2, got {0}")]
    InvalidModulus(i64),
    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),
    #[error("invalid window: {0}")]
    InvalidWindow(String),
    #[error("cannot compose: {0}")]
    NotComposable(String),

    #[error("not an inverse semigroup: {0}")]
    NotInverseSemigroup(String),
    #[error("not an idempotent transversal: {0}")]
    NotTransversal(String),
    #[error("semigroup has a non-trivial subgroup at idempotent `{0}`")]
    NotCombinatorial(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
