//! One- and two-qubit structures: Paulis, Bloch form, Bell bases and the
//! singlet/triplet split of `U (x) U`.
//!
//! Bell vectors are ordered `(Psi-, Phi-, Psi+, Phi+)`. Two-qubit states use
//! the computational order `|00>, |01>, |10>, |11>`.

use core::f64::consts::FRAC_1_SQRT_2;

use crate::error::{Error, Result};
use crate::linalg::{change_of_basis, hs_inner, kron, Mat, UnitaryMat, C64, I, ONE, ZERO};
use crate::su2::EulerAngles;
use crate::tol;

/// Index of `X_0 = 1, X_1 = X, X_2 = Y, X_3 = Z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PauliIndex(u8);

impl PauliIndex {
    pub fn new(mu: u8) -> Result<Self> {
        if mu > 3 {
            return Err(Error::PauliIndexOutOfRange(mu));
        }
        Ok(PauliIndex(mu))
    }

    pub const ALL: [PauliIndex; 4] = [PauliIndex(0), PauliIndex(1), PauliIndex(2), PauliIndex(3)];

    pub fn get(self) -> usize {
        self.0 as usize
    }
}

/// `X_mu` as a plain matrix; `mu` must be at most 3.
pub(crate) fn pauli_mat(mu: usize) -> Mat {
    let (o, z, i) = (ONE, ZERO, I);
    let data = match mu {
        0 => [o, z, z, o],
        1 => [z, o, o, z],
        2 => [z, -i, i, z],
        3 => [o, z, z, -o],
        _ => panic!("Pauli index {mu} out of range"),
    };
    Mat::from_row_major(2, data.to_vec()).unwrap()
}

pub fn pauli(mu: PauliIndex) -> UnitaryMat {
    UnitaryMat::from_trusted(pauli_mat(mu.get()))
}

/// The quaternion units `-i X_k`, `k = 1, 2, 3`; `k = 0` gives the identity.
pub fn imaginary_unit(k: usize) -> Mat {
    if k == 0 {
        return Mat::identity(2);
    }
    pauli_mat(k).scale(-I)
}

/// `A = (a_0 1 + a.X) / 2` with `a_mu = tr(X_mu A)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochForm {
    pub a0: C64,
    pub a: [C64; 3],
}

impl BlochForm {
    pub fn decompose(m: &Mat) -> Result<Self> {
        if m.dim() != 2 {
            return Err(Error::DimensionMismatch { expected: 2, found: m.dim() });
        }
        if !m.is_finite() {
            return Err(Error::NotFinite);
        }
        let c = |mu: usize| hs_inner(&pauli_mat(mu), m).unwrap();
        Ok(BlochForm { a0: c(0), a: [c(1), c(2), c(3)] })
    }

    pub fn reconstruct(&self) -> Mat {
        let mut m = pauli_mat(0).scale(self.a0);
        for (k, a) in self.a.iter().enumerate() {
            m = m + &pauli_mat(k + 1).scale(*a);
        }
        m.scale_real(0.5)
    }

    /// Real Bloch vector, defined when `A` is Hermitian.
    pub fn real_vector(&self) -> [f64; 3] {
        self.a.map(|c| c.re)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BellLabel {
    PsiMinus,
    PhiMinus,
    PsiPlus,
    PhiPlus,
}

impl BellLabel {
    pub const ALL: [BellLabel; 4] = [BellLabel::PsiMinus, BellLabel::PhiMinus, BellLabel::PsiPlus, BellLabel::PhiPlus];

    pub fn index(self) -> usize {
        BellLabel::ALL.iter().position(|&b| b == self).unwrap()
    }
}

/// Components in the computational basis.
pub fn bell_vector(label: BellLabel) -> [C64; 4] {
    let h = C64::new(FRAC_1_SQRT_2, 0.0);
    match label {
        BellLabel::PsiMinus => [ZERO, h, -h, ZERO],
        BellLabel::PhiMinus => [h, ZERO, ZERO, -h],
        BellLabel::PsiPlus => [ZERO, h, h, ZERO],
        BellLabel::PhiPlus => [h, ZERO, ZERO, h],
    }
}

pub fn bell_projector(label: BellLabel) -> Mat {
    let v = bell_vector(label);
    Mat::outer(&v, &v)
}

fn columns(cols: [[C64; 4]; 4]) -> UnitaryMat {
    UnitaryMat::from_trusted(Mat::from_fn(4, |i, j| cols[j][i]))
}

/// Unitary whose columns are the Bell vectors.
pub fn bell_basis() -> UnitaryMat {
    columns(BellLabel::ALL.map(bell_vector))
}

/// Columns `(Psi-, -Phi-, i Phi+, Psi+)`. In this basis the triplet block
/// of `U (x) U` is the real rotation `R(U)`.
pub fn adapted_bell_basis() -> UnitaryMat {
    let [psi_m, phi_m, psi_p, phi_p] = BellLabel::ALL.map(bell_vector);
    columns([psi_m, phi_m.map(|c| -c), phi_p.map(|c| I * c), psi_p])
}

/// The two-qubit swap.
pub fn swap2() -> Mat {
    Mat::from_fn(4, |r, c| {
        let (a, b) = (r >> 1, r & 1);
        if c == (b << 1 | a) {
            ONE
        } else {
            ZERO
        }
    })
}

/// Projectors `((1 - SWAP)/2, (1 + SWAP)/2)` onto singlet and triplet.
pub fn singlet_triplet() -> (Mat, Mat) {
    let id = Mat::identity(4);
    let s = swap2();
    ((&id - &s).scale_real(0.5), (&id + &s).scale_real(0.5))
}

/// `<beta_i| U (x) U |beta_j>` in the order `(Psi-, Phi-, Psi+, Phi+)`.
pub fn uu_in_bell_basis(u: &UnitaryMat) -> Result<Mat> {
    if u.dim() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, found: u.dim() });
    }
    change_of_basis(&kron(u, u), &bell_basis().dagger())
}

/// Triplet block of `U (x) U` in the adapted Bell basis, a 3x3 matrix equal
/// to `R(U)`. Requires `det U = 1`.
pub fn adapted_bell_block(u: &UnitaryMat) -> Result<Mat> {
    if u.dim() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, found: u.dim() });
    }
    let deviation = (u.det() - ONE).norm();
    if deviation > tol::UNITARITY {
        return Err(Error::NotSpecialUnitary { deviation });
    }
    let full = change_of_basis(&kron(u, u), &adapted_bell_basis().dagger())?;
    Ok(Mat::from_fn(3, |i, j| full[(i + 1, j + 1)]))
}

/// Closed-form spin-1 Wigner matrix `D^1(alpha, beta, gamma)`, rows and
/// columns ordered `m = 1, 0, -1`.
pub fn wigner_d1(e: EulerAngles) -> Mat {
    let cis = |t: f64| C64::new(libm::cos(t), libm::sin(t));
    let (a, b, g) = (e.alpha, e.beta, e.gamma);
    let c2 = libm::cos(b / 2.0) * libm::cos(b / 2.0);
    let s2 = libm::sin(b / 2.0) * libm::sin(b / 2.0);
    let sb = libm::sin(b) * FRAC_1_SQRT_2;
    let cb = libm::cos(b);
    Mat::from_row_major(
        3,
        alloc::vec![
            cis(-(a + g)) * c2,
            -cis(-a) * sb,
            cis(-(a - g)) * s2,
            cis(-g) * sb,
            C64::new(cb, 0.0),
            -cis(g) * sb,
            cis(a - g) * s2,
            cis(a) * sb,
            cis(a + g) * c2,
        ],
    )
    .unwrap()
}

/// Cartesian-to-spherical transition `P` with `D^1 = P^dagger R P`.
pub fn spherical_transition() -> UnitaryMat {
    let h = FRAC_1_SQRT_2;
    let m = Mat::from_row_major(
        3,
        alloc::vec![
            C64::new(-h, 0.0),
            ZERO,
            C64::new(h, 0.0),
            C64::new(0.0, -h),
            ZERO,
            C64::new(0.0, -h),
            ZERO,
            ONE,
            ZERO,
        ],
    )
    .unwrap();
    UnitaryMat::from_trusted(m)
}

/// `<am_i | beta_j>`: rows are the angular-momentum states
/// `(0,0), (1,1), (1,0), (1,-1)`, columns the Bell vectors.
pub fn am_transition() -> UnitaryMat {
    let h = FRAC_1_SQRT_2;
    UnitaryMat::from_trusted(
        Mat::from_real(4, &[1.0, 0.0, 0.0, 0.0, 0.0, h, 0.0, h, 0.0, 0.0, 1.0, 0.0, 0.0, -h, 0.0, h]).unwrap(),
    )
}

/// Populations of a two-qubit state that survive twirling: Bell weights
/// `f_beta = <beta|rho|beta>` and the singlet/triplet weights.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwirlCoefficients {
    /// Indexed as [`BellLabel::ALL`].
    pub bell: [f64; 4],
    pub singlet: f64,
    pub triplet: f64,
}

impl TwirlCoefficients {
    pub fn from_state(rho: &Mat) -> Result<Self> {
        if rho.dim() != 4 {
            return Err(Error::DimensionMismatch { expected: 4, found: rho.dim() });
        }
        if !rho.is_finite() {
            return Err(Error::NotFinite);
        }
        let bell = BellLabel::ALL.map(|b| {
            let v = bell_vector(b);
            let rv = rho.apply(&v);
            v.iter().zip(&rv).map(|(x, y)| x.conj() * y).sum::<C64>().re
        });
        let (ps, pt) = singlet_triplet();
        let singlet = hs_inner(&ps, rho).unwrap().re;
        let triplet = hs_inner(&pt, rho).unwrap().re;
        Ok(TwirlCoefficients { bell, singlet, triplet })
    }

    pub fn bell_weight(&self, b: BellLabel) -> f64 {
        self.bell[b.index()]
    }
}
