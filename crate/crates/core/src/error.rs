//! Error taxonomy shared by every module of the crate.
//!
//! Variants are grouped loosely by provenance: carrier validation, lattice
//! preconditions, linear algebra, cube/diagram validation, resource caps.

/// Crate-wide error type.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    #[error("multiplication table is not associative at triple ({a}, {b}, {c})")]
    NonAssociative { a: u32, b: u32, c: u32 },
    #[error("claimed identity {claimed} is not an identity (witness element {witness})")]
    NoIdentity { claimed: u32, witness: u32 },
    #[error("element {element} has no inverse")]
    MissingInverse { element: u32 },
    #[error("element index {index} out of range for carrier of order {order}")]
    IndexOutOfRange { index: u32, order: u32 },
    #[error("subobjects belong to different parent carriers")]
    MismatchedParent,
    #[error("setwise product is not closed under multiplication (witness element {witness})")]
    NotASubgroup { witness: u32 },
    #[error("subgroup is not normal (conjugate of {element} by {by} escapes)")]
    NotNormal { element: u32, by: u32 },
    #[error("denominator subobject is not normal inside the numerator")]
    NotNormalIn,
    #[error("size limit exceeded: construction needs {needed} elements, cap is {cap}")]
    SizeLimitExceeded { needed: u128, cap: u64 },
    #[error("expected {expected} subobject arguments, got {got}")]
    BadArity { expected: usize, got: usize },
    #[error("map is not a homomorphism (violated at pair ({x}, {y}))")]
    NotAHomomorphism { x: u32, y: u32 },

    #[error("antisymmetry fails at basis pair ({i}, {j})")]
    NotAntisymmetric { i: usize, j: usize },
    #[error("Jacobi identity fails at basis triple ({i}, {j}, {k})")]
    JacobiViolation { i: usize, j: usize, k: usize },
    #[error("algebra is not nilpotent")]
    NotNilpotent,
    #[error("subspace is not an ideal")]
    NotAnIdeal,
    #[error("unsupported nilpotency class {class}")]
    UnsupportedClass { class: u32 },
    #[error("matrix is not a Lie algebra morphism (bracket not preserved at ({i}, {j}))")]
    NotALieMorphism { i: usize, j: usize },

    #[error("action table is not a group action by automorphisms (witness ({g}, {c}))")]
    NotAnAction { g: u32, c: u32 },
    #[error("boundary is not equivariant for the action (witness ({g}, {c}))")]
    NotEquivariant { g: u32, c: u32 },
    #[error("component pair is not a precrossed submodule")]
    NotASubmodule,

    #[error("dimension {got} out of range for a {n}-cube")]
    BadDimension { got: usize, n: usize },
    #[error("cube has not been validated as an extension")]
    NotValidated,
    #[error("square does not commute ({at})")]
    NotCommuting { at: String },
    #[error("arrow {at} is not surjective")]
    NotSurjectiveArrow { at: String },
    #[error("reflector {reflector} is not supported on the {backend} backend")]
    UnsupportedReflectorBackend { reflector: String, backend: String },

    #[error("object does not lie in the variety {variety}: {reason}")]
    NotInVariety { variety: String, reason: String },
    #[error("unsupported variety descriptor: {0}")]
    UnsupportedVariety(String),
    #[error("constructed cube failed validation: {0}")]
    ValidationFailed(String),
    #[error("cube is not an n-presentation: {0}")]
    NotAPresentation(String),
    #[error("invariance violated across presentations: {0}")]
    InvarianceViolation(String),

    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Coarse classification used by the CLI exit-code contract:
    /// 2 = validation, 3 = resources, 4 = parse/shape.
    pub fn exit_class(&self) -> i32 {
        match self {
            Error::SizeLimitExceeded { .. } => 3,
            Error::Invalid(_) => 4,
            _ => 2,
        }
    }
}
