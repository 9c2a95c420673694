//! Unitary 1- and 2-designs of U(2).
//!
//! The crate builds finite sets of 2x2 unitaries, compares their twirling
//! channels with the closed-form Haar twirls, computes frame potentials,
//! completes any minimal 1-design to a 12-element 2-design, and analyses
//! the resulting set as a subgroup of SU(2) and as a polytope on the
//! 3-sphere.
//!
//! Everything here is pure computation over small dense complex matrices.
//! The crate is `no_std` and only needs `alloc`; file formats, reports and
//! the command-line front end live in the `udes` crate.
//!
//! Conventions, fixed crate-wide:
//!
//! - `kron` flattens `(i, k)` to `i * dim_b + k`, so `|i1 ... it>` is ordered
//!   lexicographically.
//! - Operators are vectorized by stacking columns: `vec(A)[i + j * d] = A[i, j]`.
//! - The Bell basis is ordered `(Psi-, Phi-, Psi+, Phi+)`.
//! - A unit quaternion `(s, x, y, z)` stands for `s 1 - i (x X + y Y + z Z)`.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod design;
pub mod error;
pub mod group;
pub mod linalg;
pub mod qubit;
pub mod sampler;
pub mod su2;
pub mod twirl;

pub use design::{
    classify_min_1design, clifford_bound, extend_to_2design, named_design, verify_design, verify_rotation_sum,
    DesignName, DesignReport, NamedDesign, OneDesignFrame,
};
pub use error::{Error, Result};
pub use group::{
    demitesseract_class, group_profile, polytope_identify, so3_image_table, su2_closure, GroupProfile, PolytopeId,
    PolytopeKind, Su2Closure,
};
pub use linalg::{Mat, UnitaryMat, C64};
pub use qubit::{BellLabel, BlochForm, PauliIndex, TwirlCoefficients};
pub use sampler::HaarSampler;
pub use su2::{AxisAngle, EulerAngles, Quaternion, RotMat};
pub use twirl::{FramePotentialReport, SuperOp, TwirlSource, UnitarySet};

/// Tolerances used when the caller does not supply one.
pub mod tol {
    /// `||U^dagger U - 1||_HS` bound for accepting a matrix as unitary.
    pub const UNITARITY: f64 = 1e-10;
    /// Relative pivot threshold for numerical rank.
    pub const RANK: f64 = 1e-10;
    /// HS-norm bound for calling two matrices equal.
    pub const EQUALITY: f64 = 1e-10;
    /// HS-norm bound for locating a product inside a finite group.
    pub const GROUP: f64 = 1e-9;
    /// Unit-norm slack for axes and quaternions.
    pub const UNIT: f64 = 1e-12;
}
