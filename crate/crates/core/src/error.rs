use thiserror::Error;

use crate::field::FieldError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("polynomials live over different free algebras")]
    AlphabetMismatch,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("relation is not homogeneous: {0}")]
    Inhomogeneous(String),
    #[error("zero relation")]
    ZeroRelation,
    #[error("cutoff {cutoff} is below the required degree {needed}")]
    CutoffTooSmall { needed: u32, cutoff: u32 },
    #[error("degree {degree} exceeds the cutoff {cutoff}")]
    DegreeExceedsCutoff { degree: u32, cutoff: u32 },
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("generator {0} does not have weight 1")]
    NotWeightOne(String),
    #[error("the map does not descend to an automorphism of the algebra")]
    NotAutomorphism,
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("cohomology cell (j={j}, d={d}) did not stabilize by n={n_max}")]
    Unstable { j: u32, d: i64, n_max: u32 },
    #[error("invalid charge ({rank}, {deg})")]
    InvalidCharge { rank: i64, deg: i64 },
    #[error("charge ({rank}, {deg}) is not stable")]
    NotStable { rank: i64, deg: i64 },
    #[error("expected a quadratic irrational, got a rational number")]
    RationalInput,
    #[error("determinant must be 1, got {0}")]
    NotUnimodular(String),
    #[error("matrix does not fix theta")]
    NotFixing,
    #[error("orbit violates the slope ordering: {0}")]
    SlopeOrder(String),
    #[error("integer overflow while counting {0}")]
    Overflow(&'static str),
    #[error("{0}")]
    Precondition(String),
}
