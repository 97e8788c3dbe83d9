//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("characteristic 2 and 3 are not supported")]
    BadCharacteristic,
    #[error("{0} is not a prime >= 5")]
    NotPrime(u64),
    #[error("field of order {0}^{1} contains no primitive cube root of unity")]
    NoCubeRoot(u64, u32),
    #[error("field order {0}^{1} exceeds the supported range")]
    OrderOverflow(u64, u32),
    #[error("extension degree must be >= 1")]
    BadExtensionDegree,
    #[error("cannot enumerate an infinite field")]
    InfiniteField,
    #[error("unrecognized field spec `{0}` (expected `p`, `p^k`, or `Q(rho)`)")]
    BadFieldSpec(String),
    #[error("operands belong to different fields")]
    MixedFields,
    #[error("division by zero")]
    DivisionByZero,
    #[error("operation requires a nonzero polynomial")]
    ZeroPolynomial,
    #[error("S(t) must have degree 5 or 6, got {0:?}")]
    BadCurveDegree(Option<usize>),
    #[error("S(t) has repeated roots")]
    RepeatedRoots,
    #[error("points lie on different curves")]
    MixedCurves,
    #[error("point does not satisfy the curve equation")]
    NotOnCurve,
    #[error("unsupported field for this operation: {0}")]
    UnsupportedField(String),
    #[error("point lies in the kernel of the isogeny (x = 0)")]
    KernelPoint,
    #[error("vector is not a member of the lattice")]
    NotInLattice,
    #[error("vector is not a root (norm-2 lattice vector)")]
    NotARoot,
    #[error("point is not minimal: height {0} != 2")]
    NotMinimal(u64),
    #[error("permutation generators act on different numbers of points")]
    DegreeMismatch,
    #[error("index {0} out of range for degree {1}")]
    PointOutOfRange(usize, usize),
    #[error("sequence of images is not a permutation")]
    NotAPermutation,
    #[error("branch-point count {0} out of range (even, 4..=8)")]
    BranchPointsOutOfRange(u32),
    #[error("base element not present in the report")]
    BaseNotInSet,
    #[error("enumeration budget exceeded: {0} candidates > budget {1}")]
    BudgetExceeded(u128, u128),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
