//! Twirling channels, their superoperators and Choi matrices, frame
//! potentials, and Monte-Carlo Haar twirls.
//!
//! Superoperators act on column-stacked operators, so the conjugation
//! `A -> V A V^dagger` has matrix `conj(V) (x) V`.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::{hs_inner, kron, rank, unvectorize, vectorize, Mat, UnitaryMat, C64, ZERO};
use crate::qubit::singlet_triplet;
use crate::sampler::HaarSampler;
use crate::tol;

/// Nonempty list of distinct unitaries of one dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitarySet {
    dim: usize,
    elems: Vec<UnitaryMat>,
}

impl UnitarySet {
    /// Rejects empty lists, mixed dimensions, and pairs closer than `tol`
    /// in Hilbert-Schmidt norm.
    pub fn new(elems: Vec<UnitaryMat>, tol: f64) -> Result<Self> {
        let first = elems.first().ok_or(Error::EmptySet)?;
        let dim = first.dim();
        if let Some(bad) = elems.iter().find(|u| u.dim() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, found: bad.dim() });
        }
        for a in 0..elems.len() {
            for b in a + 1..elems.len() {
                if elems[a].hs_distance(&elems[b]) <= tol {
                    return Err(Error::DuplicateElement(a, b));
                }
            }
        }
        Ok(UnitarySet { dim, elems })
    }

    pub fn try_new(elems: Vec<UnitaryMat>) -> Result<Self> {
        UnitarySet::new(elems, tol::EQUALITY)
    }

    /// Certifies each matrix as unitary; failures report the offending index.
    pub fn from_mats(mats: Vec<Mat>, tol: f64) -> Result<Self> {
        let mut elems = Vec::with_capacity(mats.len());
        for (i, m) in mats.into_iter().enumerate() {
            elems.push(UnitaryMat::new(m, tol).map_err(|_| Error::NotUnitaryElements(i))?);
        }
        UnitarySet::new(elems, tol)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn elems(&self) -> &[UnitaryMat] {
        &self.elems
    }

    pub fn iter(&self) -> core::slice::Iter<'_, UnitaryMat> {
        self.elems.iter()
    }

    pub fn into_elems(self) -> Vec<UnitaryMat> {
        self.elems
    }

    /// `{ L U_a R }`.
    pub fn sandwich(&self, left: &UnitaryMat, right: &UnitaryMat) -> Result<Self> {
        let elems = self.elems.iter().map(|u| left.compose(u)?.compose(right)).collect::<Result<Vec<_>>>()?;
        UnitarySet::try_new(elems)
    }

    /// `{ z_a U_a }` for unit-modulus `z_a`.
    pub fn with_phases(&self, phases: &[C64]) -> Result<Self> {
        if phases.len() != self.len() {
            return Err(Error::DimensionMismatch { expected: self.len(), found: phases.len() });
        }
        let elems = self.elems.iter().zip(phases).map(|(u, z)| u.phase(*z)).collect();
        UnitarySet::try_new(elems)
    }

    /// Index of an element equal to `u` within `tol`.
    pub fn position(&self, u: &Mat, tol: f64) -> Option<usize> {
        self.elems.iter().position(|e| e.dim() == u.dim() && e.hs_distance(u) <= tol)
    }
}

/// `(1/N) sum_a U_a^(x)t A U_a^dagger(x)t`.
pub fn twirl_finite(s: &UnitarySet, t: usize, a: &Mat) -> Result<Mat> {
    let d = operator_dim(s.dim(), t)?;
    if a.dim() != d {
        return Err(Error::DimensionMismatch { expected: d, found: a.dim() });
    }
    let mut acc = Mat::zeros(d);
    for u in s.iter() {
        let v = u.tensor_power(t);
        acc = acc + &v.conjugate(a)?;
    }
    Ok(acc.scale_real(1.0 / s.len() as f64))
}

fn operator_dim(d: usize, t: usize) -> Result<usize> {
    if t == 0 {
        return Err(Error::UnsupportedOrder(t));
    }
    Ok(d.pow(t as u32))
}

/// Closed-form qubit Haar twirl for `t = 1, 2`.
pub fn haar_twirl(t: usize, a: &Mat) -> Result<Mat> {
    match t {
        1 => {
            if a.dim() != 2 {
                return Err(Error::DimensionMismatch { expected: 2, found: a.dim() });
            }
            Ok(Mat::identity(2).scale(a.trace() / 2.0))
        }
        2 => {
            if a.dim() != 4 {
                return Err(Error::DimensionMismatch { expected: 4, found: a.dim() });
            }
            let (ps, pt) = singlet_triplet();
            let fs = hs_inner(&ps, a)?;
            let ft = hs_inner(&pt, a)?;
            Ok(ps.scale(fs) + &pt.scale(ft / 3.0))
        }
        _ => Err(Error::UnsupportedOrder(t)),
    }
}

/// Linear map on column-stacked operators.
#[derive(Debug, Clone, PartialEq)]
pub struct SuperOp {
    op_dim: usize,
    matrix: Mat,
}

impl SuperOp {
    /// `matrix` must be finite and of size `D^2` for an operator dimension `D`.
    pub fn new(matrix: Mat) -> Result<Self> {
        if !matrix.is_finite() {
            return Err(Error::NotFinite);
        }
        let n = matrix.dim();
        let op_dim = libm::round(libm::sqrt(n as f64)) as usize;
        if op_dim * op_dim != n {
            return Err(Error::NotSquareDimension(n));
        }
        Ok(SuperOp { op_dim, matrix })
    }

    /// The superoperator of a linear map given by its action on operators.
    pub fn from_map(op_dim: usize, mut f: impl FnMut(&Mat) -> Result<Mat>) -> Result<Self> {
        let n = op_dim * op_dim;
        let mut m = Mat::zeros(n);
        for j in 0..op_dim {
            for i in 0..op_dim {
                let col = vectorize(&f(&Mat::unit(op_dim, i, j))?);
                let c = i + j * op_dim;
                for (r, v) in col.into_iter().enumerate() {
                    m[(r, c)] = v;
                }
            }
        }
        SuperOp::new(m)
    }

    /// Size of the matrix, `D^2`.
    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    /// Dimension `D` of the operators acted on.
    pub fn op_dim(&self) -> usize {
        self.op_dim
    }

    pub fn matrix(&self) -> &Mat {
        &self.matrix
    }

    pub fn apply(&self, a: &Mat) -> Result<Mat> {
        if a.dim() != self.op_dim {
            return Err(Error::DimensionMismatch { expected: self.op_dim, found: a.dim() });
        }
        Ok(unvectorize(&self.matrix.apply(&vectorize(a)), self.op_dim))
    }

    /// `self` after `other`.
    pub fn compose(&self, other: &SuperOp) -> Result<SuperOp> {
        SuperOp::new(self.matrix.matmul(&other.matrix)?)
    }

    pub fn is_idempotent(&self, tol: f64) -> bool {
        self.matrix.matmul(&self.matrix).map(|m2| m2.hs_distance(&self.matrix) <= tol).unwrap_or(false)
    }

    pub fn rank(&self, tol: f64) -> usize {
        rank(&self.matrix, tol)
    }

    pub fn distance(&self, other: &SuperOp) -> f64 {
        self.matrix.hs_distance(&other.matrix)
    }

    /// `C = sum_ij E_ij (x) M(E_ij)`.
    pub fn choi(&self) -> Mat {
        let d = self.op_dim;
        let mut c = Mat::zeros(d * d);
        for i in 0..d {
            for j in 0..d {
                let img = self.apply(&Mat::unit(d, i, j)).expect("dimension fixed by construction");
                c = c + &kron(&Mat::unit(d, i, j), &img);
            }
        }
        c
    }

    pub fn choi_rank(&self, tol: f64) -> usize {
        rank(&self.choi(), tol)
    }
}

#[derive(Debug, Clone, Copy)]
pub enum TwirlSource<'a> {
    Haar,
    Finite(&'a UnitarySet),
}

/// Superoperator of the order-`t` twirl over a finite set or over the
/// qubit Haar measure.
pub fn superop_of_twirl(src: TwirlSource<'_>, t: usize) -> Result<SuperOp> {
    match src {
        TwirlSource::Haar => {
            if !(1..=2).contains(&t) {
                return Err(Error::UnsupportedOrder(t));
            }
            SuperOp::from_map(1 << t, |e| haar_twirl(t, e))
        }
        TwirlSource::Finite(s) => {
            let d = operator_dim(s.dim(), t)?;
            let mut m = Mat::zeros(d * d);
            for u in s.iter() {
                let v = u.tensor_power(t);
                m = m + &kron(&v.conj(), &v);
            }
            SuperOp::new(m.scale_real(1.0 / s.len() as f64))
        }
    }
}

/// Qubit Haar frame potential, `t!` for `t <= 2`.
pub fn haar_frame_potential(dim: usize, t: usize) -> Option<f64> {
    match (dim, t) {
        (2, 1) => Some(1.0),
        (2, 2) => Some(2.0),
        _ => None,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FramePotentialReport {
    pub t: usize,
    pub value: f64,
    /// `None` when no Haar reference is implemented for this order.
    pub haar_value: Option<f64>,
    /// `value - haar_value`.
    pub gap: Option<f64>,
}

/// `F_t = (1/N^2) sum_ab |tr(U_a^dagger U_b)|^(2t)`.
pub fn frame_potential(s: &UnitarySet, t: usize) -> FramePotentialReport {
    let n = s.len();
    let elems = s.elems();
    let mut total = 0.0;
    for a in elems {
        for b in elems {
            let x = hs_inner(a, b).expect("same dimension").norm_sqr();
            total += libm::pow(x, t as f64);
        }
    }
    let value = total / (n * n) as f64;
    let haar_value = haar_frame_potential(s.dim(), t);
    FramePotentialReport { t, value, haar_value, gap: haar_value.map(|h| value - h) }
}

/// `||twirl_finite(S, t, E) - haar_twirl(t, E)||_HS` for basis operator
/// `E(i, j)` with `k = i * D + j`.
pub fn basis_twirl_deviation(s: &UnitarySet, t: usize, k: usize) -> Result<f64> {
    if s.dim() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, found: s.dim() });
    }
    if !(1..=2).contains(&t) {
        return Err(Error::UnsupportedOrder(t));
    }
    let d = 1 << t;
    let e = Mat::unit(d, k / d, k % d);
    Ok(twirl_finite(s, t, &e)?.hs_distance(&haar_twirl(t, &e)?))
}

/// Largest [`basis_twirl_deviation`] over the `4^t` basis operators.
pub fn max_basis_twirl_deviation(s: &UnitarySet, t: usize) -> Result<f64> {
    let n = 1usize << (2 * t.min(8));
    let mut worst = 0.0_f64;
    for k in 0..n {
        worst = worst.max(basis_twirl_deviation(s, t, k)?);
    }
    Ok(worst)
}

/// Sample mean with its standard error in Hilbert-Schmidt norm,
/// `sqrt(sum_k ||X_k - mean||^2 / (n (n - 1)))`.
#[derive(Debug, Clone, PartialEq)]
pub struct McEstimate {
    pub mean: Mat,
    pub std_error: f64,
    pub samples: u64,
}

/// Monte-Carlo twirl from the next `n` draws of `h`.
pub fn mc_haar_twirl(h: &mut HaarSampler, t: usize, a: &Mat, n: u64) -> Result<Mat> {
    Ok(mc_haar_twirl_estimate(h, t, a, n)?.mean)
}

pub fn mc_haar_twirl_estimate(h: &mut HaarSampler, t: usize, a: &Mat, n: u64) -> Result<McEstimate> {
    let d = operator_dim(2, t)?;
    if a.dim() != d {
        return Err(Error::DimensionMismatch { expected: d, found: a.dim() });
    }
    if n == 0 {
        return Err(Error::EmptySet);
    }
    let mut sum = Mat::zeros(d);
    let mut sum_sq = 0.0;
    for _ in 0..n {
        let x = h.next_su2().tensor_power(t).conjugate(a)?;
        sum_sq += x.hs_norm_sqr();
        sum = sum + &x;
    }
    let mean = sum.scale_real(1.0 / n as f64);
    Ok(McEstimate { std_error: std_error(sum_sq, mean.hs_norm_sqr(), n), mean, samples: n })
}

fn std_error(sum_sq: f64, mean_sq: f64, n: u64) -> f64 {
    if n < 2 {
        return f64::INFINITY;
    }
    let nf = n as f64;
    let spread = (sum_sq - nf * mean_sq).max(0.0);
    libm::sqrt(spread / (nf * (nf - 1.0)))
}

/// Running sums for a Monte-Carlo estimate of the Haar twirl superoperator.
/// Column `k` of each sample `conj(V) (x) V` is the conjugate of basis
/// operator `k`, so one accumulator covers the whole operator basis.
#[derive(Debug, Clone)]
pub struct McSuperOpAccumulator {
    t: usize,
    count: u64,
    sum: Vec<C64>,
    col_sum_sq: Vec<f64>,
}

impl McSuperOpAccumulator {
    pub fn new(t: usize) -> Result<Self> {
        let d = operator_dim(2, t)?;
        let n = d * d;
        Ok(McSuperOpAccumulator { t, count: 0, sum: alloc::vec![ZERO; n * n], col_sum_sq: alloc::vec![0.0; n] })
    }

    pub fn add(&mut self, u: &UnitaryMat) {
        let v = u.tensor_power(self.t);
        let m = kron(&v.conj(), &v);
        let n = m.dim();
        for (k, x) in m.as_slice().iter().enumerate() {
            self.sum[k] += x;
            self.col_sum_sq[k % n] += x.norm_sqr();
        }
        self.count += 1;
    }

    /// Adds draws `range` of `h`.
    pub fn add_draws(&mut self, h: &HaarSampler, range: core::ops::Range<u64>) {
        for k in range {
            self.add(&h.su2_at(k));
        }
    }

    pub fn merge(&mut self, other: &McSuperOpAccumulator) {
        for (a, b) in self.sum.iter_mut().zip(&other.sum) {
            *a += b;
        }
        for (a, b) in self.col_sum_sq.iter_mut().zip(&other.col_sum_sq) {
            *a += b;
        }
        self.count += other.count;
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    /// Mean superoperator and per-basis-operator standard errors.
    pub fn finish(&self) -> Result<(SuperOp, Vec<f64>)> {
        if self.count == 0 {
            return Err(Error::EmptySet);
        }
        let n = self.col_sum_sq.len();
        let inv = 1.0 / self.count as f64;
        let mean = Mat::from_row_major(n, self.sum.iter().map(|x| x * inv).collect())?;
        let errs = (0..n)
            .map(|c| {
                let mean_sq: f64 = (0..n).map(|r| mean[(r, c)].norm_sqr()).sum();
                std_error(self.col_sum_sq[c], mean_sq, self.count)
            })
            .collect();
        Ok((SuperOp::new(mean)?, errs))
    }
}

/// Per-basis-operator comparison of a Monte-Carlo superoperator with the
/// closed-form Haar twirl. Entry `k` pairs the deviation for the basis
/// operator with column index `k` (column stacking) with its standard error.
pub fn mc_oracle_deviations(t: usize, mc: &SuperOp, std_errors: &[f64]) -> Result<Vec<(f64, f64)>> {
    let exact = superop_of_twirl(TwirlSource::Haar, t)?;
    if exact.dim() != mc.dim() || std_errors.len() != mc.dim() {
        return Err(Error::DimensionMismatch { expected: exact.dim(), found: mc.dim() });
    }
    let n = mc.dim();
    Ok((0..n)
        .map(|c| {
            let dev: f64 = (0..n).map(|r| (mc.matrix()[(r, c)] - exact.matrix()[(r, c)]).norm_sqr()).sum();
            (libm::sqrt(dev), std_errors[c])
        })
        .collect())
}
