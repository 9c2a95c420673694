//! Dense complex matrices of small order.
//!
//! Everything the rest of the crate needs is here: products, tensor
//! products, the Hilbert-Schmidt inner product, numerical rank, and
//! similarity transforms by unitaries. There is no eigensolver; every
//! spectral fact used elsewhere is known in closed form.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Deref, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::tol;

pub type C64 = Complex64;

pub(crate) const ZERO: C64 = C64::new(0.0, 0.0);
pub(crate) const ONE: C64 = C64::new(1.0, 0.0);
pub(crate) const I: C64 = C64::new(0.0, 1.0);

/// Square complex matrix stored row-major.
#[derive(Clone, PartialEq)]
pub struct Mat {
    dim: usize,
    data: Vec<C64>,
}

impl Mat {
    pub fn zeros(dim: usize) -> Self {
        assert!(dim > 0, "matrix dimension must be positive");
        Mat { dim, data: vec![ZERO; dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Mat::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut m = Mat::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    /// Builds a matrix from row-major entries; rejects non-square lengths
    /// and non-finite entries.
    pub fn from_row_major(dim: usize, data: Vec<C64>) -> Result<Self> {
        if dim == 0 || data.len() != dim * dim {
            return Err(Error::DimensionMismatch { expected: dim * dim, found: data.len() });
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NotFinite);
        }
        Ok(Mat { dim, data })
    }

    /// Convenience constructor from real entries.
    pub fn from_real(dim: usize, data: &[f64]) -> Result<Self> {
        Mat::from_row_major(dim, data.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    pub fn diag(entries: &[C64]) -> Self {
        let mut m = Mat::zeros(entries.len());
        for (i, &z) in entries.iter().enumerate() {
            m[(i, i)] = z;
        }
        m
    }

    /// The matrix unit `E(i, j) = |i><j|`.
    pub fn unit(dim: usize, i: usize, j: usize) -> Self {
        let mut m = Mat::zeros(dim);
        m[(i, j)] = ONE;
        m
    }

    /// `|u><v|`.
    pub fn outer(u: &[C64], v: &[C64]) -> Self {
        assert_eq!(u.len(), v.len());
        Mat::from_fn(u.len(), |i, j| u[i] * v[j].conj())
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn adjoint(&self) -> Self {
        Mat::from_fn(self.dim, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        Mat::from_fn(self.dim, |i, j| self[(j, i)])
    }

    pub fn conj(&self) -> Self {
        Mat { dim: self.dim, data: self.data.iter().map(|z| z.conj()).collect() }
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn scale(&self, z: C64) -> Self {
        Mat { dim: self.dim, data: self.data.iter().map(|&w| w * z).collect() }
    }

    pub fn scale_real(&self, x: f64) -> Self {
        self.scale(C64::new(x, 0.0))
    }

    /// Entry-wise (Hadamard) product.
    pub fn hadamard(&self, other: &Mat) -> Result<Self> {
        check_dims(self, other)?;
        Ok(Mat { dim: self.dim, data: self.data.iter().zip(&other.data).map(|(a, b)| a * b).collect() })
    }

    pub fn matmul(&self, other: &Mat) -> Result<Self> {
        check_dims(self, other)?;
        let n = self.dim;
        let mut out = Mat::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == ZERO {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * other.data[k * n + j];
                }
            }
        }
        Ok(out)
    }

    /// `A v` for a column vector `v`.
    pub fn apply(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(v.len(), self.dim);
        (0..self.dim).map(|i| (0..self.dim).map(|j| self[(i, j)] * v[j]).sum()).collect()
    }

    /// Squared Hilbert-Schmidt (Frobenius) norm.
    pub fn hs_norm_sqr(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn hs_norm(&self) -> f64 {
        libm::sqrt(self.hs_norm_sqr())
    }

    /// `||self - other||_HS`; panics on dimension mismatch.
    pub fn hs_distance(&self, other: &Mat) -> f64 {
        assert_eq!(self.dim, other.dim, "hs_distance: dimension mismatch");
        libm::sqrt(self.data.iter().zip(&other.data).map(|(a, b)| (a - b).norm_sqr()).sum())
    }

    pub fn approx_eq(&self, other: &Mat, tol: f64) -> bool {
        self.dim == other.dim && self.hs_distance(other) <= tol
    }

    pub fn max_abs_imag(&self) -> f64 {
        self.data.iter().map(|z| z.im.abs()).fold(0.0, f64::max)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hs_distance(&self.adjoint()) <= tol
    }

    /// `||U^dagger U - 1||_HS`.
    pub fn unitarity_defect(&self) -> f64 {
        let g = self.adjoint() * self;
        g.hs_distance(&Mat::identity(self.dim))
    }

    /// Determinant by Gaussian elimination with partial pivoting.
    pub fn det(&self) -> C64 {
        let n = self.dim;
        let mut a = self.data.clone();
        let mut det = ONE;
        for col in 0..n {
            let pivot = (col..n).max_by(|&r, &s| a[r * n + col].norm().total_cmp(&a[s * n + col].norm())).unwrap();
            if a[pivot * n + col] == ZERO {
                return ZERO;
            }
            if pivot != col {
                for j in 0..n {
                    a.swap(pivot * n + j, col * n + j);
                }
                det = -det;
            }
            let p = a[col * n + col];
            det *= p;
            for r in col + 1..n {
                let f = a[r * n + col] / p;
                for j in col..n {
                    let v = a[col * n + j];
                    a[r * n + j] -= f * v;
                }
            }
        }
        det
    }
}

fn check_dims(a: &Mat, b: &Mat) -> Result<()> {
    if a.dim != b.dim {
        return Err(Error::DimensionMismatch { expected: a.dim, found: b.dim });
    }
    Ok(())
}

impl Index<(usize, usize)> for Mat {
    type Output = C64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for Mat {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.dim + j]
    }
}

impl AsRef<Mat> for Mat {
    fn as_ref(&self) -> &Mat {
        self
    }
}

// Operator impls panic on dimension mismatch; the fallible forms are
// `matmul` and friends.
impl Mul<&Mat> for &Mat {
    type Output = Mat;
    fn mul(self, rhs: &Mat) -> Mat {
        self.matmul(rhs).expect("matrix product: dimension mismatch")
    }
}

impl Mul<&Mat> for Mat {
    type Output = Mat;
    fn mul(self, rhs: &Mat) -> Mat {
        &self * rhs
    }
}

impl Add<&Mat> for &Mat {
    type Output = Mat;
    fn add(self, rhs: &Mat) -> Mat {
        assert_eq!(self.dim, rhs.dim, "matrix sum: dimension mismatch");
        Mat { dim: self.dim, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect() }
    }
}

impl Add<&Mat> for Mat {
    type Output = Mat;
    fn add(self, rhs: &Mat) -> Mat {
        &self + rhs
    }
}

impl Sub<&Mat> for &Mat {
    type Output = Mat;
    fn sub(self, rhs: &Mat) -> Mat {
        assert_eq!(self.dim, rhs.dim, "matrix difference: dimension mismatch");
        Mat { dim: self.dim, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect() }
    }
}

impl Sub<&Mat> for Mat {
    type Output = Mat;
    fn sub(self, rhs: &Mat) -> Mat {
        &self - rhs
    }
}

impl Neg for &Mat {
    type Output = Mat;
    fn neg(self) -> Mat {
        self.scale_real(-1.0)
    }
}

impl Neg for Mat {
    type Output = Mat;
    fn neg(self) -> Mat {
        -&self
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat({}x{}) [", self.dim, self.dim)?;
        for i in 0..self.dim {
            write!(f, "  ")?;
            for j in 0..self.dim {
                let z = self[(i, j)];
                write!(f, "{:>9.5}{:+.5}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Kronecker product with row-major flattening `(i, k) -> i * B.dim + k`.
pub fn kron(a: &Mat, b: &Mat) -> Mat {
    let (m, n) = (a.dim, b.dim);
    let mut out = Mat::zeros(m * n);
    for i in 0..m {
        for j in 0..m {
            let aij = a[(i, j)];
            if aij == ZERO {
                continue;
            }
            for k in 0..n {
                for l in 0..n {
                    out[(i * n + k, j * n + l)] = aij * b[(k, l)];
                }
            }
        }
    }
    out
}

/// `t`-fold tensor power; `t = 0` gives the 1x1 identity.
pub fn tensor_power(a: &Mat, t: usize) -> Mat {
    (0..t).fold(Mat::identity(1), |acc, _| kron(&acc, a))
}

/// Hilbert-Schmidt inner product `tr(A^dagger B)`.
pub fn hs_inner(a: &Mat, b: &Mat) -> Result<C64> {
    check_dims(a, b)?;
    Ok(a.data.iter().zip(&b.data).map(|(x, y)| x.conj() * y).sum())
}

/// Numerical rank by Gaussian elimination with full pivoting. A pivot
/// counts as zero when it falls below `tol` times the largest pivot.
pub fn rank(a: &Mat, tol: f64) -> usize {
    let n = a.dim;
    let mut m = a.data.clone();
    let mut rows: Vec<usize> = (0..n).collect();
    let mut cols: Vec<usize> = (0..n).collect();
    let mut largest = 0.0_f64;
    let mut r = 0;
    while r < n {
        let mut best = (r, r, 0.0_f64);
        for (ri, &row) in rows.iter().enumerate().skip(r) {
            for (ci, &col) in cols.iter().enumerate().skip(r) {
                let v = m[row * n + col].norm();
                if v > best.2 {
                    best = (ri, ci, v);
                }
            }
        }
        if r == 0 {
            largest = best.2;
        }
        if best.2 == 0.0 || best.2 <= tol * largest {
            break;
        }
        rows.swap(r, best.0);
        cols.swap(r, best.1);
        let (pr, pc) = (rows[r], cols[r]);
        let p = m[pr * n + pc];
        for &row in &rows[r + 1..] {
            let f = m[row * n + pc] / p;
            if f == ZERO {
                continue;
            }
            for &col in &cols[r..] {
                let v = m[pr * n + col];
                m[row * n + col] -= f * v;
            }
        }
        r += 1;
    }
    r
}

/// Similarity transform `T A T^dagger`.
pub fn change_of_basis(a: &Mat, t: &UnitaryMat) -> Result<Mat> {
    check_dims(a, t)?;
    t.as_mat().matmul(a)?.matmul(&t.adjoint())
}

/// A square matrix certified unitary within a tolerance.
#[derive(Clone, PartialEq)]
pub struct UnitaryMat {
    inner: Mat,
}

impl UnitaryMat {
    /// Accepts `m` when `||m^dagger m - 1||_HS <= tol`.
    pub fn new(m: Mat, tol: f64) -> Result<Self> {
        if !m.is_finite() {
            return Err(Error::NotFinite);
        }
        let deviation = m.unitarity_defect();
        if deviation > tol {
            return Err(Error::NotUnitary { deviation });
        }
        Ok(UnitaryMat { inner: m })
    }

    /// Same as [`UnitaryMat::new`] with the default tolerance.
    pub fn try_from_mat(m: Mat) -> Result<Self> {
        UnitaryMat::new(m, tol::UNITARITY)
    }

    /// For matrices unitary by construction (products, known constants).
    pub(crate) fn from_trusted(m: Mat) -> Self {
        debug_assert!(m.unitarity_defect() < 1e-8, "from_trusted: {m:?}");
        UnitaryMat { inner: m }
    }

    pub fn identity(dim: usize) -> Self {
        UnitaryMat { inner: Mat::identity(dim) }
    }

    pub fn as_mat(&self) -> &Mat {
        &self.inner
    }

    pub fn into_inner(self) -> Mat {
        self.inner
    }

    pub fn dagger(&self) -> Self {
        UnitaryMat { inner: self.inner.adjoint() }
    }

    pub fn compose(&self, other: &UnitaryMat) -> Result<Self> {
        Ok(UnitaryMat { inner: self.inner.matmul(&other.inner)? })
    }

    pub fn kron(&self, other: &UnitaryMat) -> Self {
        UnitaryMat { inner: kron(&self.inner, &other.inner) }
    }

    pub fn tensor_power(&self, t: usize) -> Self {
        UnitaryMat { inner: tensor_power(&self.inner, t) }
    }

    /// Multiplies by a unit-modulus scalar.
    pub fn phase(&self, z: C64) -> Self {
        let z = z / z.norm();
        UnitaryMat { inner: self.inner.scale(z) }
    }

    pub fn negate(&self) -> Self {
        UnitaryMat { inner: -&self.inner }
    }

    /// `U A U^dagger`.
    pub fn conjugate(&self, a: &Mat) -> Result<Mat> {
        self.inner.matmul(a)?.matmul(&self.inner.adjoint())
    }
}

impl Deref for UnitaryMat {
    type Target = Mat;
    fn deref(&self) -> &Mat {
        &self.inner
    }
}

impl AsRef<Mat> for UnitaryMat {
    fn as_ref(&self) -> &Mat {
        &self.inner
    }
}

impl fmt::Debug for UnitaryMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Unitary{:?}", self.inner)
    }
}

impl Mul<&UnitaryMat> for &UnitaryMat {
    type Output = UnitaryMat;
    fn mul(self, rhs: &UnitaryMat) -> UnitaryMat {
        UnitaryMat { inner: &self.inner * &rhs.inner }
    }
}

/// Column-stacking vectorization: `vec(A)[i + j * d] = A[i, j]`.
pub fn vectorize(a: &Mat) -> Vec<C64> {
    let d = a.dim();
    let mut v = vec![ZERO; d * d];
    for i in 0..d {
        for j in 0..d {
            v[i + j * d] = a[(i, j)];
        }
    }
    v
}

/// Inverse of [`vectorize`].
pub fn unvectorize(v: &[C64], d: usize) -> Mat {
    assert_eq!(v.len(), d * d);
    Mat::from_fn(d, |i, j| v[i + j * d])
}
