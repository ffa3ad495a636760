//! Error type shared by every module of the crate.

use thiserror::Error;

/// Failure modes of exact field, wedge, surface and certificate operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ApError {
    #[error("minimal polynomial is not irreducible over Q")]
    NotIrreducible,
    #[error("minimal polynomial must be monic of degree >= 1")]
    NotMonic,
    #[error("no real root in the isolating interval")]
    NoRootInInterval,
    #[error("more than one real root in the isolating interval")]
    MultipleRootsInInterval,
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live in different number fields")]
    FieldMismatch,
    #[error("elements do not form a Q-basis of the field")]
    NotABasis,
    #[error("element is not a root of the polynomial")]
    NotARoot,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("edge ({0}, {1}) is not glued exactly once")]
    UnmatchedEdge(usize, usize),
    #[error("glued edges ({0}, {1}) and ({2}, {3}) are not opposite vectors")]
    EdgeVectorMismatch(usize, usize, usize, usize),
    #[error("glued complex is disconnected")]
    Disconnected,
    #[error("cone angle is not a positive multiple of 2*pi")]
    BadConeAngle,
    #[error("polygon {0} is not simple and counterclockwise")]
    NonSimplePolygon(usize),
    #[error("holonomy does not span the plane")]
    DegenerateHolonomy,
    #[error("chord leaves the polygon")]
    ChordOutside,
    #[error("chord is degenerate")]
    ChordDegenerate,
    #[error("J is zero")]
    ZeroInvariant,
    #[error("slope is not an algebraically periodic direction")]
    NotAPDirection,
    #[error("slopes are not distinct")]
    SlopesNotDistinct,
    #[error("J is not in standard form")]
    NotStandardized,
    #[error("fewer than three algebraically periodic directions certified")]
    NotAlgebraicallyPeriodic,
    #[error("form is degenerate")]
    Degenerate,
    #[error("bases are not dual for the trace form")]
    NotDualBases,
    #[error("eigenvalue is not simple over its field")]
    EigenvalueNotSimpleOverField,
    #[error("area does not lie in the periodic direction field")]
    AreaNotInK,
    #[error("area is zero")]
    ZeroArea,
    #[error("eigenvector has a zero entry")]
    NonPositiveEntry,
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("triangle angles must be positive integers with gcd 1")]
    BadAngles,
    #[error("parameter out of range")]
    OutOfRange,
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, ApError>;
