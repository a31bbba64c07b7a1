use thiserror::Error;

/// Why an element of the Clifford algebra failed the GPin membership test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum NonMemberReason {
    NonInvertible,
    MixedParity,
    DoesNotStabilizeV,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("characteristic 2 is not supported")]
    CharacteristicTwo,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("operands live in different spaces or fields")]
    SpaceMismatch,
    #[error("the Gram matrix is not symmetric")]
    NotSymmetric,
    #[error("the quadratic form is degenerate")]
    DegenerateForm,
    #[error("vector is isotropic")]
    IsotropicVector,
    #[error("scalar must be nonzero")]
    ZeroScalar,
    #[error("matrix is not an isometry of the space")]
    NotIsometry,
    #[error("not a member of GPin(V): {0:?}")]
    NotMember(NonMemberReason),
    #[error("factorization over Q needs splitting of a degree-{0} factor; supply the factorization manually")]
    FactorizationUnsupported(usize),
    #[error("polynomial is not irreducible")]
    Reducible,
    #[error("the generator is not a unit in the extension (modulus has zero constant term)")]
    NonUnitGenerator,
    #[error("the modulus is not self-reciprocal, so x -> 1/x is not an automorphism")]
    NotSelfReciprocal,
    #[error("element is not semisimple (minimal polynomial not squarefree)")]
    NotSemisimple,
    #[error("isometry has determinant -1")]
    NotSpecial,
    #[error("element is not in GSpin(V)")]
    NotEven,
    #[error("requires even dimension greater than 2")]
    WrongParityDimension,
    #[error("cannot realise determinant -1 on a zero-dimensional block")]
    UnreachableDet,
    #[error("conjugator repair failed: {0}")]
    RepairFailed(String),
    #[error("group enumeration exceeds cap {cap}")]
    CapExceeded { cap: usize },
    #[error("group enumeration needs a prime field")]
    NotEnumerable,
    #[error("element lies outside the plain subgroup of this extended group")]
    OutsideSubgroup,
    #[error("no witness found")]
    NotFound,
    #[error("unknown suite '{0}'")]
    UnknownSuite(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
