//! SU(2), SO(3) and unit quaternions.
//!
//! `so3_rep` is the two-to-one covering `R_ij(U) = tr(X_i U X_j U^dagger) / 2`.
//! A unit quaternion `(s, x, y, z)` corresponds to `s 1 - i (x X + y Y + z Z)`,
//! so `i, j, k` correspond to `-iX, -iY, -iZ` and the correspondence is a
//! group isomorphism for the Hamilton product. Antipodal pairs `+-U` are
//! represented canonically by the member whose first non-zero quaternion
//! coordinate, in the order `(s, x, y, z)`, is positive.

use core::f64::consts::PI;
use core::ops::{Mul, Neg};

use crate::error::{Error, Result};
use crate::linalg::{hs_inner, Mat, UnitaryMat, C64, I, ONE, ZERO};
use crate::qubit::pauli_mat;
use crate::tol;

/// Coordinates with magnitude at or below this count as zero when choosing
/// the canonical member of an antipodal pair.
const CANONICAL_EPS: f64 = 1e-9;

/// `U(alpha, beta, gamma) = exp(-i alpha Z/2) exp(-i beta Y/2) exp(-i gamma Z/2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EulerAngles {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

impl EulerAngles {
    /// Checks the standard range `[0, 2pi) x [0, pi] x [0, 4pi)`.
    pub fn new(alpha: f64, beta: f64, gamma: f64) -> Result<Self> {
        let ok = (0.0..2.0 * PI).contains(&alpha) && (0.0..=PI).contains(&beta) && (0.0..4.0 * PI).contains(&gamma);
        if !ok {
            return Err(Error::EulerOutOfRange);
        }
        Ok(EulerAngles { alpha, beta, gamma })
    }

    pub const IDENTITY: EulerAngles = EulerAngles { alpha: 0.0, beta: 0.0, gamma: 0.0 };

    /// The angles of `W`, `(0, pi/2, pi/2)`.
    pub const W: EulerAngles = EulerAngles { alpha: 0.0, beta: PI / 2.0, gamma: PI / 2.0 };

    /// All four triples in the standard range whose Bell-basis triplet block
    /// of `U (x) U` is a phased cyclic shift: `alpha in {0, pi}`,
    /// `beta = pi/2`, `gamma in {pi/2, 5pi/2}`. The first entry is `W`;
    /// nothing singles it out beyond being listed first.
    pub fn shift_solutions() -> [EulerAngles; 4] {
        let b = PI / 2.0;
        [
            EulerAngles::W,
            EulerAngles { alpha: 0.0, beta: b, gamma: 5.0 * PI / 2.0 },
            EulerAngles { alpha: PI, beta: b, gamma: PI / 2.0 },
            EulerAngles { alpha: PI, beta: b, gamma: 5.0 * PI / 2.0 },
        ]
    }
}

/// Rotation by `angle` about the unit vector `axis`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxisAngle {
    axis: [f64; 3],
    angle: f64,
}

impl AxisAngle {
    pub fn new(axis: [f64; 3], angle: f64) -> Result<Self> {
        let norm = norm3(axis);
        if (norm - 1.0).abs() > tol::UNIT {
            return Err(Error::NonUnitAxis { norm });
        }
        Ok(AxisAngle { axis, angle })
    }

    /// From a rotation vector `angle * axis`. The zero vector maps to the
    /// zero rotation about `z`.
    pub fn from_vector(v: [f64; 3]) -> Self {
        let angle = norm3(v);
        if angle == 0.0 {
            return AxisAngle { axis: [0.0, 0.0, 1.0], angle: 0.0 };
        }
        AxisAngle { axis: [v[0] / angle, v[1] / angle, v[2] / angle], angle }
    }

    pub fn axis(&self) -> [f64; 3] {
        self.axis
    }

    pub fn angle(&self) -> f64 {
        self.angle
    }

    /// The rotation vector `angle * axis`.
    pub fn vector(&self) -> [f64; 3] {
        self.axis.map(|c| c * self.angle)
    }
}

/// Quaternion `s + x i + y j + z k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quaternion {
    pub s: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Quaternion {
    pub const ONE: Quaternion = Quaternion { s: 1.0, x: 0.0, y: 0.0, z: 0.0 };

    pub const fn new(s: f64, x: f64, y: f64, z: f64) -> Self {
        Quaternion { s, x, y, z }
    }

    pub fn coords(&self) -> [f64; 4] {
        [self.s, self.x, self.y, self.z]
    }

    pub fn from_coords(c: [f64; 4]) -> Self {
        Quaternion::new(c[0], c[1], c[2], c[3])
    }

    pub fn conj(&self) -> Self {
        Quaternion::new(self.s, -self.x, -self.y, -self.z)
    }

    pub fn norm(&self) -> f64 {
        libm::sqrt(self.coords().iter().map(|c| c * c).sum())
    }

    pub fn is_unit(&self) -> bool {
        (self.norm() - 1.0).abs() <= tol::UNIT
    }

    pub fn normalized(&self) -> Self {
        let n = self.norm();
        Quaternion::from_coords(self.coords().map(|c| c / n))
    }

    pub fn distance(&self, other: &Quaternion) -> f64 {
        let (a, b) = (self.coords(), other.coords());
        libm::sqrt((0..4).map(|i| (a[i] - b[i]) * (a[i] - b[i])).sum())
    }

    /// The vector part `(x, y, z)`.
    pub fn vector(&self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    /// `self` or `-self`, whichever has its first non-zero coordinate positive.
    pub fn canonical(&self) -> Self {
        match self.coords().iter().find(|c| c.abs() > CANONICAL_EPS) {
            Some(&c) if c < 0.0 => -*self,
            _ => *self,
        }
    }

    pub fn is_canonical(&self) -> bool {
        self.canonical() == *self
    }
}

impl Mul for Quaternion {
    type Output = Quaternion;
    fn mul(self, q: Quaternion) -> Quaternion {
        let p = self;
        Quaternion::new(
            p.s * q.s - p.x * q.x - p.y * q.y - p.z * q.z,
            p.s * q.x + p.x * q.s + p.y * q.z - p.z * q.y,
            p.s * q.y - p.x * q.z + p.y * q.s + p.z * q.x,
            p.s * q.z + p.x * q.y - p.y * q.x + p.z * q.s,
        )
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Quaternion {
        Quaternion::new(-self.s, -self.x, -self.y, -self.z)
    }
}

/// A 3x3 real rotation matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RotMat(pub(crate) [[f64; 3]; 3]);

impl RotMat {
    /// Accepts `m` when `m^T m = 1` and `det m = 1`, each within 1e-10.
    pub fn new(m: [[f64; 3]; 3]) -> Result<Self> {
        let r = RotMat(m);
        let orth = r.transpose().compose(&r).distance(&RotMat::IDENTITY);
        if !(orth <= 1e-10 && (r.det() - 1.0).abs() <= 1e-10) {
            return Err(Error::NotRotation);
        }
        Ok(r)
    }

    pub const IDENTITY: RotMat = RotMat([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]);

    /// Right shift `e_i -> e_(i+1)`.
    pub const SHIFT_RIGHT: RotMat = RotMat([[0.0, 0.0, 1.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]]);

    /// Left shift `e_i -> e_(i-1)`.
    pub const SHIFT_LEFT: RotMat = RotMat([[0.0, 1.0, 0.0], [0.0, 0.0, 1.0], [1.0, 0.0, 0.0]]);

    pub fn rows(&self) -> [[f64; 3]; 3] {
        self.0
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.0[i][j]
    }

    pub fn transpose(&self) -> RotMat {
        let m = self.0;
        RotMat([[m[0][0], m[1][0], m[2][0]], [m[0][1], m[1][1], m[2][1]], [m[0][2], m[1][2], m[2][2]]])
    }

    pub fn det(&self) -> f64 {
        let m = self.0;
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    pub fn trace(&self) -> f64 {
        self.0[0][0] + self.0[1][1] + self.0[2][2]
    }

    pub fn apply(&self, v: [f64; 3]) -> [f64; 3] {
        let m = self.0;
        [0, 1, 2].map(|i| m[i][0] * v[0] + m[i][1] * v[1] + m[i][2] * v[2])
    }

    /// Frobenius distance.
    pub fn distance(&self, other: &RotMat) -> f64 {
        let mut s = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                let d = self.0[i][j] - other.0[i][j];
                s += d * d;
            }
        }
        libm::sqrt(s)
    }

    /// Entry-wise sum; the result is generally not a rotation, hence the
    /// raw array.
    pub fn sum<'a>(rs: impl IntoIterator<Item = &'a RotMat>) -> [[f64; 3]; 3] {
        let mut acc = [[0.0; 3]; 3];
        for r in rs {
            for (i, row) in acc.iter_mut().enumerate() {
                for (j, v) in row.iter_mut().enumerate() {
                    *v += r.0[i][j];
                }
            }
        }
        acc
    }

    /// As a complex 3x3 matrix.
    pub fn to_mat(&self) -> Mat {
        Mat::from_fn(3, |i, j| C64::new(self.0[i][j], 0.0))
    }

    /// Unit quaternion `q` whose rotation is `self`, by Shepperd's method:
    /// the largest of `tr R, R_00, R_11, R_22` selects the branch, which keeps
    /// the rotations by pi well-conditioned. The sign is canonical.
    pub fn to_quaternion(&self) -> Quaternion {
        let m = self.0;
        let tr = self.trace();
        let candidates = [tr, m[0][0], m[1][1], m[2][2]];
        let branch = (0..4).max_by(|&a, &b| candidates[a].total_cmp(&candidates[b])).unwrap();
        let q = match branch {
            0 => {
                let w = libm::sqrt(1.0 + tr) / 2.0;
                let f = 4.0 * w;
                Quaternion::new(w, (m[2][1] - m[1][2]) / f, (m[0][2] - m[2][0]) / f, (m[1][0] - m[0][1]) / f)
            }
            1 => {
                let x = libm::sqrt(1.0 + m[0][0] - m[1][1] - m[2][2]) / 2.0;
                let f = 4.0 * x;
                Quaternion::new((m[2][1] - m[1][2]) / f, x, (m[0][1] + m[1][0]) / f, (m[0][2] + m[2][0]) / f)
            }
            2 => {
                let y = libm::sqrt(1.0 - m[0][0] + m[1][1] - m[2][2]) / 2.0;
                let f = 4.0 * y;
                Quaternion::new((m[0][2] - m[2][0]) / f, (m[0][1] + m[1][0]) / f, y, (m[1][2] + m[2][1]) / f)
            }
            _ => {
                let z = libm::sqrt(1.0 - m[0][0] - m[1][1] + m[2][2]) / 2.0;
                let f = 4.0 * z;
                Quaternion::new((m[1][0] - m[0][1]) / f, (m[0][2] + m[2][0]) / f, (m[1][2] + m[2][1]) / f, z)
            }
        };
        q.normalized().canonical()
    }

    /// Axis-angle form with angle in `[0, pi]`. At angle pi the axis is the
    /// one whose first non-zero component is positive.
    pub fn axis_angle(&self) -> AxisAngle {
        let q = self.to_quaternion();
        let v = q.vector();
        let sin_half = norm3(v);
        if sin_half <= 1e-15 {
            return AxisAngle::from_vector([0.0; 3]);
        }
        let angle = 2.0 * libm::atan2(sin_half, q.s.abs());
        AxisAngle { axis: v.map(|c| c / sin_half), angle }
    }
}

impl Mul for RotMat {
    type Output = RotMat;
    fn mul(self, rhs: RotMat) -> RotMat {
        self.compose(&rhs)
    }
}

impl RotMat {
    /// `self * rhs`.
    pub fn compose(&self, rhs: &RotMat) -> RotMat {
        let (a, b) = (self.0, rhs.0);
        let mut out = [[0.0; 3]; 3];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = (0..3).map(|k| a[i][k] * b[k][j]).sum();
            }
        }
        RotMat(out)
    }
}

pub(crate) fn norm3(v: [f64; 3]) -> f64 {
    libm::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2])
}

fn cis(theta: f64) -> C64 {
    C64::new(libm::cos(theta), libm::sin(theta))
}

fn check_qubit(u: &Mat) -> Result<()> {
    if u.dim() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, found: u.dim() });
    }
    Ok(())
}

fn check_special(u: &Mat) -> Result<()> {
    check_qubit(u)?;
    let deviation = (u.det() - ONE).norm();
    if deviation > tol::UNITARITY {
        return Err(Error::NotSpecialUnitary { deviation });
    }
    Ok(())
}

/// `W = (1 - i(X + Y + Z)) / 2 = exp(-i (pi/3) e.X)`, `e = (1,1,1)/sqrt 3`.
pub fn w() -> UnitaryMat {
    let h = 0.5;
    UnitaryMat::from_trusted(
        Mat::from_row_major(2, alloc::vec![C64::new(h, -h), C64::new(-h, -h), C64::new(h, -h), C64::new(h, h)])
            .unwrap(),
    )
}

/// `exp(-i alpha Z/2) exp(-i beta Y/2) exp(-i gamma Z/2)`.
pub fn su2_from_euler(e: EulerAngles) -> UnitaryMat {
    let rz = |a: f64| Mat::diag(&[cis(-a / 2.0), cis(a / 2.0)]);
    let (c, s) = (libm::cos(e.beta / 2.0), libm::sin(e.beta / 2.0));
    let ry = Mat::from_real(2, &[c, -s, s, c]).unwrap();
    UnitaryMat::from_trusted(rz(e.alpha) * &ry * &rz(e.gamma))
}

/// `cos(theta/2) 1 - i sin(theta/2) n.X`.
pub fn su2_from_axis_angle(a: AxisAngle) -> Result<UnitaryMat> {
    AxisAngle::new(a.axis, a.angle)?;
    let (c, s) = (libm::cos(a.angle / 2.0), libm::sin(a.angle / 2.0));
    let q = Quaternion::new(c, s * a.axis[0], s * a.axis[1], s * a.axis[2]);
    Ok(quaternion_to_mat(q))
}

/// `R_ij(U) = tr(X_i U X_j U^dagger) / 2`; phase-blind, so any 2x2 unitary
/// is accepted.
pub fn so3_rep(u: &UnitaryMat) -> Result<RotMat> {
    check_qubit(u)?;
    let ud = u.adjoint();
    let paulis = [pauli_mat(1), pauli_mat(2), pauli_mat(3)];
    let conj: [Mat; 3] = core::array::from_fn(|j| u.as_mat() * &paulis[j] * &ud);
    let mut r = [[0.0; 3]; 3];
    for (i, xi) in paulis.iter().enumerate() {
        for (j, cj) in conj.iter().enumerate() {
            r[i][j] = hs_inner(xi, cj).unwrap().re / 2.0;
        }
    }
    Ok(RotMat(r))
}

/// Rodrigues formula `R x = (x.n) n + cos(phi) (x - (x.n) n) + sin(phi) n x x`.
pub fn rodrigues(a: AxisAngle) -> Result<RotMat> {
    AxisAngle::new(a.axis, a.angle)?;
    let n = a.axis;
    let (c, s) = (libm::cos(a.angle), libm::sin(a.angle));
    let cross = [[0.0, -n[2], n[1]], [n[2], 0.0, -n[0]], [-n[1], n[0], 0.0]];
    let mut r = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let id = if i == j { 1.0 } else { 0.0 };
            r[i][j] = c * id + s * cross[i][j] + (1.0 - c) * n[i] * n[j];
        }
    }
    Ok(RotMat(r))
}

/// The antipodal pair `(U, -U)` covering `r`, canonical member first.
pub fn su2_from_rotation(r: &RotMat) -> (UnitaryMat, UnitaryMat) {
    let u = quaternion_to_mat(r.to_quaternion());
    let minus = u.negate();
    (u, minus)
}

fn quaternion_to_mat(q: Quaternion) -> UnitaryMat {
    let m = Mat::from_row_major(
        2,
        alloc::vec![C64::new(q.s, -q.z), C64::new(-q.y, -q.x), C64::new(q.y, -q.x), C64::new(q.s, q.z),],
    )
    .unwrap();
    UnitaryMat::from_trusted(m)
}

/// Unit quaternion of a special unitary `U = s 1 - i (x X + y Y + z Z)`.
pub fn quaternion_of(u: &UnitaryMat) -> Result<Quaternion> {
    check_special(u)?;
    let s = u.trace().re / 2.0;
    // tr(X_k U) = -2i x_k
    let coord = |k: usize| (I * hs_inner(&pauli_mat(k), u).unwrap()).re / 2.0;
    Ok(Quaternion::new(s, coord(1), coord(2), coord(3)))
}

/// Special unitary of a unit quaternion.
pub fn su2_of_quaternion(q: Quaternion) -> Result<UnitaryMat> {
    let norm = q.norm();
    if (norm - 1.0).abs() > tol::UNIT {
        return Err(Error::NonUnitQuaternion { norm });
    }
    Ok(quaternion_to_mat(q))
}

/// The two normalizations `+-conj(omega) U` of `U` in SU(2), where `omega`
/// is the principal square root of `det U`. Canonical member first.
pub fn normalize_to_su2(u: &UnitaryMat) -> Result<(UnitaryMat, UnitaryMat)> {
    check_qubit(u)?;
    let omega = u.det().sqrt();
    let v = UnitaryMat::from_trusted(u.scale(omega.conj() / omega.norm()));
    let q = quaternion_of(&v)?;
    let first = if q.is_canonical() { v } else { v.negate() };
    let second = first.negate();
    Ok((first, second))
}

/// Complex phase `z` with `U = z V`, assuming `U` and `V` are proportional.
pub fn relative_phase(u: &Mat, v: &Mat) -> C64 {
    let z = hs_inner(v, u).unwrap();
    if z.norm() == 0.0 {
        return ZERO;
    }
    z / z.norm()
}

/// Rotation matrix about a coordinate axis, `R_i(phi)`.
pub fn axis_rotation(axis: usize, angle: f64) -> RotMat {
    let mut n = [0.0; 3];
    n[axis] = 1.0;
    rodrigues(AxisAngle { axis: n, angle }).unwrap()
}

/// `(1,1,1)/sqrt 3`.
pub const E_DIAGONAL: [f64; 3] = [0.577_350_269_189_625_8; 3];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qubit::{imaginary_unit, pauli};
    use crate::PauliIndex;

    fn approx(a: &Mat, b: &Mat, tol: f64) -> bool {
        a.hs_distance(b) <= tol
    }

    #[test]
    fn euler_identity() {
        assert!(approx(&su2_from_euler(EulerAngles::IDENTITY), &Mat::identity(2), 1e-15));
    }

    #[test]
    fn euler_w_and_minus_w() {
        assert!(approx(&su2_from_euler(EulerAngles::W), &w(), 1e-15));
        let e = EulerAngles::new(0.0, PI / 2.0, 5.0 * PI / 2.0).unwrap();
        assert!(approx(&su2_from_euler(e), &w().negate(), 1e-14));
    }

    #[test]
    fn euler_range_is_enforced() {
        assert_eq!(EulerAngles::new(2.0 * PI, 0.0, 0.0), Err(Error::EulerOutOfRange));
        assert_eq!(EulerAngles::new(0.0, 3.5, 0.0), Err(Error::EulerOutOfRange));
        assert!(EulerAngles::new(0.0, PI, 3.9 * PI).is_ok());
    }

    #[test]
    fn shift_solutions_give_shift_blocks() {
        for e in EulerAngles::shift_solutions() {
            let r = so3_rep(&su2_from_euler(e)).unwrap();
            // every solution conjugates the diagonal into a cyclic shift
            let perm = r.rows().map(|row| row.map(|v| v.abs()));
            let sr = RotMat::SHIFT_RIGHT.rows();
            let sl = RotMat::SHIFT_LEFT.rows();
            assert!(perm == sr || perm == sl || RotMat(perm).distance(&RotMat(sr)) < 1e-12);
        }
    }

    #[test]
    fn axis_angle_to_w_identity_and_k() {
        let e = AxisAngle::new(E_DIAGONAL, 2.0 * PI / 3.0).unwrap();
        assert!(approx(&su2_from_axis_angle(e).unwrap(), &w(), 1e-12));
        let zero = AxisAngle::new([0.6, 0.0, 0.8], 0.0).unwrap();
        assert!(approx(&su2_from_axis_angle(zero).unwrap(), &Mat::identity(2), 1e-15));
        let zpi = AxisAngle::new([0.0, 0.0, 1.0], PI).unwrap();
        assert!(approx(&su2_from_axis_angle(zpi).unwrap(), &imaginary_unit(3), 1e-15));
    }

    #[test]
    fn non_unit_axis_is_rejected() {
        assert!(matches!(AxisAngle::new([1.0, 1.0, 0.0], 1.0), Err(Error::NonUnitAxis { .. })));
    }

    #[test]
    fn so3_rep_of_identity_w_and_paulis() {
        let id = UnitaryMat::identity(2);
        assert!(so3_rep(&id).unwrap().distance(&RotMat::IDENTITY) < 1e-15);
        assert!(so3_rep(&id.negate()).unwrap().distance(&RotMat::IDENTITY) < 1e-15);
        assert!(so3_rep(&w()).unwrap().distance(&RotMat::SHIFT_RIGHT) < 1e-12);
        assert!(so3_rep(&w().dagger()).unwrap().distance(&RotMat::SHIFT_LEFT) < 1e-12);
        for i in 1..=3 {
            let u = UnitaryMat::from_trusted(imaginary_unit(i));
            let r = so3_rep(&u).unwrap();
            assert!(r.distance(&axis_rotation(i - 1, PI)) < 1e-12);
        }
    }

    #[test]
    fn so3_rep_rejects_wrong_dimension() {
        assert!(matches!(so3_rep(&UnitaryMat::identity(4)), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn rodrigues_pi_reflects_through_axis() {
        let n = [0.48, 0.6, 0.64];
        let r = rodrigues(AxisAngle::new(n, PI).unwrap()).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let expected = 2.0 * n[i] * n[j] - if i == j { 1.0 } else { 0.0 };
                assert!((r.get(i, j) - expected).abs() < 1e-15);
            }
        }
        let rw = rodrigues(AxisAngle::new(E_DIAGONAL, 2.0 * PI / 3.0).unwrap()).unwrap();
        assert!(rw.distance(&RotMat::SHIFT_RIGHT) < 1e-12);
    }

    #[test]
    fn rotation_lifts() {
        let (u, v) = su2_from_rotation(&RotMat::IDENTITY);
        assert!(approx(&u, &Mat::identity(2), 1e-15));
        assert!(approx(&v, &(-Mat::identity(2)), 1e-15));
        let (u, v) = su2_from_rotation(&RotMat::SHIFT_RIGHT);
        assert!(approx(&u, &w(), 1e-12));
        assert!(approx(&v, &w().negate(), 1e-12));
    }

    #[test]
    fn rotation_validation() {
        assert_eq!(RotMat::new([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, -1.0]]), Err(Error::NotRotation));
        assert!(RotMat::new(RotMat::SHIFT_LEFT.rows()).is_ok());
    }

    #[test]
    fn quaternion_of_identity_and_w() {
        assert_eq!(quaternion_of(&UnitaryMat::identity(2)).unwrap(), Quaternion::ONE);
        let q = quaternion_of(&w()).unwrap();
        assert!(q.distance(&Quaternion::new(0.5, 0.5, 0.5, 0.5)) < 1e-15);
    }

    #[test]
    fn quaternion_of_requires_special_unitary() {
        let x = pauli(PauliIndex::new(1).unwrap());
        assert!(matches!(quaternion_of(&x), Err(Error::NotSpecialUnitary { .. })));
        assert!(matches!(su2_of_quaternion(Quaternion::new(1.0, 1.0, 0.0, 0.0)), Err(Error::NonUnitQuaternion { .. })));
    }

    #[test]
    fn imaginary_units_match_quaternion_units() {
        for k in 1..=3 {
            let u = UnitaryMat::from_trusted(imaginary_unit(k));
            let mut c = [0.0; 4];
            c[k] = 1.0;
            assert_eq!(quaternion_of(&u).unwrap(), Quaternion::from_coords(c));
        }
    }

    #[test]
    fn normalize_pauli_x_gives_i() {
        let x = pauli(PauliIndex::new(1).unwrap());
        let (a, b) = normalize_to_su2(&x).unwrap();
        assert!(approx(&a, &imaginary_unit(1), 1e-15));
        assert!(approx(&b, &(-imaginary_unit(1)), 1e-15));
        let (a, b) = normalize_to_su2(&UnitaryMat::identity(2)).unwrap();
        assert!(approx(&a, &Mat::identity(2), 1e-15));
        assert!(approx(&b, &(-Mat::identity(2)), 1e-15));
    }

    #[test]
    fn axis_angle_of_pi_rotations_is_positive() {
        for i in 0..3 {
            let aa = axis_rotation(i, PI).axis_angle();
            let mut e = [0.0; 3];
            e[i] = PI;
            let v = aa.vector();
            assert!((0..3).all(|k| (v[k] - e[k]).abs() < 1e-12), "{v:?}");
        }
        let aa = RotMat::IDENTITY.axis_angle();
        assert_eq!(aa.vector(), [0.0; 3]);
    }

    #[test]
    fn quaternion_product_matches_hamilton_table() {
        let i = Quaternion::new(0.0, 1.0, 0.0, 0.0);
        let j = Quaternion::new(0.0, 0.0, 1.0, 0.0);
        let k = Quaternion::new(0.0, 0.0, 0.0, 1.0);
        assert_eq!(i * j, k);
        assert_eq!(j * k, i);
        assert_eq!(k * i, j);
        assert_eq!(i * i, -Quaternion::ONE);
    }

    #[test]
    fn canonical_sign_convention() {
        assert_eq!(Quaternion::new(0.0, -1.0, 0.0, 0.0).canonical(), Quaternion::new(0.0, 1.0, 0.0, 0.0));
        assert_eq!(Quaternion::new(-0.5, 0.5, 0.5, 0.5).canonical(), Quaternion::new(0.5, -0.5, -0.5, -0.5));
        assert!(Quaternion::new(0.0, 0.0, 0.0, 1.0).is_canonical());
    }
}
