use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix entries must be finite")]
    NotFinite,
    #[error("matrix is not unitary (||U^dagger U - 1||_HS = {deviation:e})")]
    NotUnitary { deviation: f64 },
    #[error("matrix is not special unitary (|det - 1| = {deviation:e})")]
    NotSpecialUnitary { deviation: f64 },
    #[error("rotation axis is not a unit vector (norm {norm})")]
    NonUnitAxis { norm: f64 },
    #[error("quaternion is not a unit quaternion (norm {norm})")]
    NonUnitQuaternion { norm: f64 },
    #[error("matrix is not a proper rotation")]
    NotRotation,
    #[error("Euler angles out of range: alpha in [0,2pi), beta in [0,pi], gamma in [0,4pi)")]
    EulerOutOfRange,
    #[error("Pauli index {0} is outside 0..=3")]
    PauliIndexOutOfRange(u8),
    #[error("twirl order t = {0} is not supported here")]
    UnsupportedOrder(usize),
    #[error("unitary set is empty")]
    EmptySet,
    #[error("elements {0} and {1} coincide")]
    DuplicateElement(usize, usize),
    #[error("elements {0} and {1} are proportional and admit no normalization")]
    ProportionalElements(usize, usize),
    #[error("element {0} is not unitary")]
    NotUnitaryElements(usize),
    #[error("set is not an orthogonal basis of 2x2 matrices: {0}")]
    NotOrthogonalBasis(&'static str),
    #[error("set is not a 1-design of minimum size")]
    NotMinimal1Design,
    #[error("unknown design name {0:?}")]
    UnknownName(alloc::string::String),
    #[error("point {0} is not on the unit 3-sphere")]
    NonUnitPoint(usize),
    #[error("quaternion coordinates are not all +-1/2")]
    NotHalfInteger,
    #[error("frame-potential and twirl criteria disagree (gap {frame_gap:e}, deviation {twirl_deviation:e})")]
    InconsistentVerdict { frame_gap: f64, twirl_deviation: f64 },
    #[error("superoperator dimension {0} is not a perfect square")]
    NotSquareDimension(usize),
}
