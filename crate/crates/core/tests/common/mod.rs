#![allow(dead_code)]

use proptest::prelude::*;
use udes_core::linalg::{Mat, UnitaryMat};
use udes_core::su2::su2_of_quaternion;
use udes_core::{Quaternion, C64};

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn mat(dim: usize, entries: &[C64]) -> Mat {
    Mat::from_row_major(dim, entries.to_vec()).unwrap()
}

pub fn unit_quaternion() -> impl Strategy<Value = Quaternion> {
    prop::array::uniform4(-1.0f64..1.0)
        .prop_filter("away from the origin", |c| c.iter().map(|x| x * x).sum::<f64>() > 1e-3)
        .prop_map(|c| Quaternion::from_coords(c).normalized())
}

pub fn su2() -> impl Strategy<Value = UnitaryMat> {
    unit_quaternion().prop_map(|q| su2_of_quaternion(q).unwrap())
}

pub fn phase() -> impl Strategy<Value = C64> {
    (0.0f64..std::f64::consts::TAU).prop_map(|t| C64::new(t.cos(), t.sin()))
}

pub fn u2() -> impl Strategy<Value = UnitaryMat> {
    (su2(), phase()).prop_map(|(u, z)| u.phase(z))
}

pub fn complex_mat(dim: usize) -> impl Strategy<Value = Mat> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), dim * dim)
        .prop_map(move |v| Mat::from_row_major(dim, v.into_iter().map(|(a, b)| C64::new(a, b)).collect()).unwrap())
}

/// `G G^dagger / tr(G G^dagger)` from a random complex `G`.
pub fn density(dim: usize) -> impl Strategy<Value = Mat> {
    complex_mat(dim).prop_filter("nonzero", |g| g.hs_norm() > 1e-3).prop_map(|g| {
        let p = &g * &g.adjoint();
        let t = p.trace().re;
        p.scale_real(1.0 / t)
    })
}

/// Positive semidefiniteness by pivoted Cholesky: pivots may not drop
/// below `-tol`, and once the largest remaining diagonal is below `tol`
/// the whole remaining block must be below `tol`.
pub fn is_psd(a: &Mat, tol: f64) -> bool {
    if !a.is_hermitian(tol) {
        return false;
    }
    let n = a.dim();
    let mut m: Vec<Vec<C64>> = (0..n).map(|i| (0..n).map(|j| a[(i, j)]).collect()).collect();
    let mut active: Vec<usize> = (0..n).collect();
    while !active.is_empty() {
        let (pos, &p) = active.iter().enumerate().max_by(|x, y| m[*x.1][*x.1].re.total_cmp(&m[*y.1][*y.1].re)).unwrap();
        let d = m[p][p].re;
        if d < -tol {
            return false;
        }
        if d <= tol {
            return active.iter().all(|&i| active.iter().all(|&j| m[i][j].norm() <= tol));
        }
        active.remove(pos);
        for &i in &active {
            for &j in &active {
                let v = m[i][p] * m[p][j] / d;
                m[i][j] -= v;
            }
        }
    }
    true
}
