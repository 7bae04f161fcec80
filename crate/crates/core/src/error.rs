use thiserror::Error;

/// Errors surfaced by constructions and verifications.
///
/// Failed *checks* (an axiom that does not hold, a map that is not a
/// homomorphism) are not errors; they are reported through
/// [`crate::report::Status`]. Errors mean the requested object cannot be
/// built at all.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("elements belong to different fields")]
    FieldMismatch,

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("minimal polynomial must be monic of degree >= 1")]
    BadMinimalPolynomial,

    #[error("minimal polynomial is reducible: {0}")]
    ReduciblePolynomial(String),

    #[error("nested extensions are not supported; present the field with a single primitive generator over Q or GF(p)")]
    NestedExtension,

    #[error("automorphism `{0}` is not declared for this field")]
    UnknownAutomorphism(String),

    #[error("invalid automorphism `{label}`: {reason}")]
    InvalidAutomorphism { label: String, reason: String },

    #[error("declared automorphisms are not closed under composition")]
    AutomorphismsNotClosed,

    #[error("no primitive root of unity of order {order} in the field")]
    NoPrimitiveRoot { order: u64 },

    #[error("coefficient vector has length {got}, expected {expected}")]
    BadCoefficientLength { got: usize, expected: usize },

    #[error("invalid Cayley table: {0}")]
    BadGroupTable(String),

    #[error("group is not abelian")]
    NotAbelian,

    #[error("cyclic invariant must be >= 2, got {0}")]
    BadInvariant(u64),

    #[error("not a 2-cocycle: identity fails at ({sigma}, {tau}, {rho})")]
    CocycleIdentity {
        sigma: String,
        tau: String,
        rho: String,
    },

    #[error("cocycle value at ({sigma}, {tau}) is zero")]
    CocycleZeroValue { sigma: String, tau: String },

    #[error("cocycle value at ({sigma}, {tau}) lies outside the declared subgroup of order {order}")]
    ValueOutsideSubgroup {
        sigma: String,
        tau: String,
        order: u64,
    },

    #[error("cocycle is not normalized")]
    NotNormalized,

    #[error("operation requires a roots-of-unity value subgroup; import an explicit witness instead")]
    FreeValuedCocycle,

    #[error("witness rejected: alpha^m != df at ({sigma}, {tau})")]
    WitnessMismatch { sigma: String, tau: String },

    #[error("witness rejected: alpha^{smaller} is already a coboundary, so m = {claimed} is not minimal")]
    WitnessNotMinimal { claimed: u64, smaller: u64 },

    #[error("no m-th roots of the witness cochain exist in the field; extend the field and retry")]
    MissingRoots,

    #[error("cocycle values must be m-th roots of unity with witness f = 1; apply root normalization first")]
    RootNormalizeRequired,

    #[error("norm invariant b is not fixed by the Galois group; input is not a cocycle over L")]
    NormNotFixed,

    #[error("group is not cyclic")]
    NotCyclic,

    #[error("cocycle must take values in the base field")]
    CocycleNotBaseValued,

    #[error("not a Galois extension: the fixed subspace has dimension {fixed_dim}, expected 1")]
    NotGalois { fixed_dim: usize },

    #[error("group order {group} does not match extension degree {degree}")]
    DegreeMismatch { group: usize, degree: usize },

    #[error("group action is not a faithful homomorphism onto the declared automorphisms: {0}")]
    BadGroupAction(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error("algebras live over different fields")]
    AlgebraFieldMismatch,

    #[error("linear map dimensions do not match: {0}")]
    MapDimensionMismatch(String),

    #[error("block index {index} out of range (m = {m})")]
    BlockOutOfRange { index: u64, m: u64 },

    #[error("the cocycle of A and the Galois group of L/k do not match: {0}")]
    AmalgamMismatch(String),

    #[error("search space too large: {0}")]
    SearchSpaceTooLarge(String),

    #[error("tensor factors live over different base fields")]
    TensorFieldMismatch,
}

pub type Result<T> = std::result::Result<T, Error>;
