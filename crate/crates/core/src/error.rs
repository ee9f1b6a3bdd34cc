use thiserror::Error;

/// Failures while constructing or querying a lattice.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("lattice has no elements")]
    Empty,
    #[error("duplicate element name `{0}`")]
    DuplicateName(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("order relation has a cycle through `{0}` and `{1}`")]
    NotAPoset(String, String),
    #[error("`{0}` and `{1}` have no {2}")]
    NotALattice(String, String, &'static str),
    #[error("lattice is not modular (witness a={0}, b={1}, c={2})")]
    NotModular(String, String, String),
    #[error("`{0}` is not below `{1}`")]
    NotComparable(String, String),
    #[error("size {size} exceeds the configured limit {limit}")]
    SizeLimitExceeded { size: usize, limit: usize },
    #[error("malformed lattice input: {0}")]
    Parse(String),
}

/// Failures while certifying or combining linear morphisms.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MorphismError {
    #[error("map has {got} entries but the domain has {expected} elements")]
    NotTotal { expected: usize, got: usize },
    #[error("map sends `{0}` outside the codomain")]
    OutOfRange(String),
    #[error("no kernel: f({x}) differs from f({x} ∨ {kernel})")]
    NoKernel { x: String, kernel: String },
    #[error("restriction to [{kernel}, 1] is not an isomorphism onto [0, {image_top}]: {detail}")]
    NotIntervalIso {
        kernel: String,
        image_top: String,
        detail: String,
    },
    #[error("cannot compose: codomain `{0}` differs from domain `{1}`")]
    DomainMismatch(String, String),
    #[error("`{0}` is not a complement of `{1}`")]
    NotAComplement(String, String),
    #[error("interval is not of the required form: {0}")]
    BadInterval(String),
    #[error("malformed morphism input: {0}")]
    Parse(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// Failures while building an endomorphism monoid.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MonoidError {
    #[error("member set is not closed: {0}")]
    NotClosed(String),
    #[error("morphism is not an endomorphism of `{0}`")]
    NotAnEndomorphism(String),
    #[error("monoid does not contain all projections")]
    MissingProjections,
    #[error("malformed monoid input: {0}")]
    Parse(String),
    #[error("monoid size {size} exceeds the configured limit {limit}")]
    SizeLimitExceeded { size: usize, limit: usize },
    #[error(transparent)]
    Morphism(#[from] MorphismError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// Failures in the finite abelian group bridge.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("malformed group spec `{0}`")]
    Parse(String),
    #[error("invariant factors must form a divisibility chain: {0:?}")]
    NotAChain(Vec<u64>),
    #[error("{what} {size} exceeds the configured limit {limit}")]
    SizeLimitExceeded {
        what: &'static str,
        size: u128,
        limit: u128,
    },
    #[error("column {column} has order not dividing {modulus}")]
    IllDefined { column: usize, modulus: u64 },
    #[error("module side says {module} but lattice side says {lattice} for {property}")]
    Disagreement {
        property: String,
        module: bool,
        lattice: bool,
    },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Monoid(#[from] MonoidError),
}

/// Failures in random generation and conformance runs.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HarnessError {
    #[error("no modular lattice with at most {max_size} elements after {attempts} attempts")]
    GiveUp { attempts: usize, max_size: usize },
    #[error("max_size {size} is outside 1..={cap}")]
    BadSize { size: usize, cap: usize },
    #[error("unknown check `{0}`")]
    UnknownCheck(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}
