//! Recognition, classification and completion of qubit designs.
//!
//! A set of four 2x2 unitaries is a 1-design exactly when it is an
//! orthogonal basis of the matrix algebra, and every such basis has the form
//! `{ z_mu V X_mu V' }`. Given that frame, adjoining the translates by
//! `W~ = V W V^dagger` and its inverse produces a 12-element 2-design.

use alloc::string::ToString;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::{hs_inner, Mat, UnitaryMat, C64};
use crate::qubit::{imaginary_unit, pauli_mat};
use crate::su2::{normalize_to_su2, quaternion_of, so3_rep, su2_from_rotation, w, RotMat};
use crate::tol;
use crate::twirl::{frame_potential, max_basis_twirl_deviation, UnitarySet};

/// Outcome of checking a set against the Haar twirl of order `t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DesignReport {
    pub t: usize,
    pub is_design: bool,
    /// `F_t(S) - F_t(Haar)`.
    pub frame_gap: f64,
    /// Largest HS deviation of the twirl from the Haar twirl over the
    /// standard operator basis.
    pub max_twirl_deviation: f64,
    pub method_agreement: bool,
}

impl DesignReport {
    /// Combines the two criteria, which must agree.
    pub fn from_criteria(t: usize, frame_gap: f64, max_twirl_deviation: f64, tol: f64) -> Result<Self> {
        let by_frame = frame_gap <= tol;
        let by_twirl = max_twirl_deviation <= tol;
        if by_frame != by_twirl {
            return Err(Error::InconsistentVerdict { frame_gap, twirl_deviation: max_twirl_deviation });
        }
        Ok(DesignReport { t, is_design: by_frame, frame_gap, max_twirl_deviation, method_agreement: true })
    }
}

fn check_qubit_order(s: &UnitarySet, t: usize) -> Result<()> {
    if !(1..=2).contains(&t) {
        return Err(Error::UnsupportedOrder(t));
    }
    if s.dim() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, found: s.dim() });
    }
    Ok(())
}

/// Frame-potential gap of `s` at order `t`.
pub fn frame_gap(s: &UnitarySet, t: usize) -> Result<f64> {
    check_qubit_order(s, t)?;
    Ok(frame_potential(s, t).gap.expect("qubit Haar value is known for t <= 2"))
}

/// Runs both the operator-basis and the frame-potential criterion.
pub fn verify_design(s: &UnitarySet, t: usize, tol: f64) -> Result<DesignReport> {
    check_qubit_order(s, t)?;
    let gap = frame_gap(s, t)?;
    let dev = max_basis_twirl_deviation(s, t)?;
    DesignReport::from_criteria(t, gap, dev, tol)
}

/// `|| sum_a R(U_a) ||_F <= 1e-10`.
pub fn verify_rotation_sum(s: &UnitarySet) -> bool {
    verify_rotation_sum_tol(s, 1e-10)
}

pub fn verify_rotation_sum_tol(s: &UnitarySet, tol: f64) -> bool {
    rotation_sum_norm(s).is_some_and(|n| n <= tol)
}

/// Frobenius norm of `sum_a R(U_a)`; `None` for sets that are not 2x2.
pub fn rotation_sum_norm(s: &UnitarySet) -> Option<f64> {
    let rs = s.iter().map(so3_rep).collect::<Result<Vec<_>>>().ok()?;
    let sum = RotMat::sum(&rs);
    Some(libm::sqrt(sum.iter().flatten().map(|x| x * x).sum()))
}

/// Frame of a minimal 1-design: element `a` of the classified list equals
/// `phases[a] * v X_{pauli_of[a]} vp`.
#[derive(Debug, Clone, PartialEq)]
pub struct OneDesignFrame {
    pub v: UnitaryMat,
    pub vp: UnitaryMat,
    pub phases: [C64; 4],
    /// Element `k` (for `k = 1, 2, 3`) of the input maps to Pauli `permutation[k - 1]`.
    pub permutation: [usize; 3],
}

impl OneDesignFrame {
    pub fn pauli_of(&self, a: usize) -> usize {
        if a == 0 {
            0
        } else {
            self.permutation[a - 1]
        }
    }

    /// `v X_mu vp` without phase.
    pub fn frame_element(&self, mu: usize) -> Mat {
        self.v.as_mat() * &pauli_mat(mu) * self.vp.as_mat()
    }

    /// The set rebuilt from the frame, in input order.
    pub fn reconstruct(&self) -> Vec<Mat> {
        (0..4).map(|a| self.frame_element(self.pauli_of(a)).scale(self.phases[a])).collect()
    }

    /// `W~ = v W v^dagger`.
    pub fn shift(&self) -> UnitaryMat {
        UnitaryMat::from_trusted(self.v.conjugate(&w()).expect("2x2"))
    }
}

/// Extracts `(V, V', phases, permutation)` from four pairwise
/// HS-orthogonal unitaries.
pub fn classify_min_1design<M: AsRef<Mat>>(elems: &[M], tol: f64) -> Result<OneDesignFrame> {
    if elems.len() != 4 {
        return Err(Error::NotMinimal1Design);
    }
    let mut us = Vec::with_capacity(4);
    for (i, m) in elems.iter().enumerate() {
        let m = m.as_ref();
        if m.dim() != 2 {
            return Err(Error::DimensionMismatch { expected: 2, found: m.dim() });
        }
        us.push(UnitaryMat::new(m.clone(), tol).map_err(|_| Error::NotUnitaryElements(i))?);
    }
    for a in 0..4 {
        for b in a + 1..4 {
            if hs_inner(&us[a], &us[b])?.norm() > tol {
                return Err(Error::NotOrthogonalBasis("elements are not pairwise orthogonal"));
            }
        }
    }
    let v0 = normalize_to_su2(&us[0])?.0;
    let mut n = [[0.0; 3]; 3];
    for i in 1..4 {
        let vi = normalize_to_su2(&us[i])?.0;
        let ni = quaternion_of(&v0.dagger().compose(&vi)?)?;
        n[i - 1] = ni.vector();
    }
    let det = n[0][0] * (n[1][1] * n[2][2] - n[1][2] * n[2][1]) - n[0][1] * (n[1][0] * n[2][2] - n[1][2] * n[2][0])
        + n[0][2] * (n[1][0] * n[2][1] - n[1][1] * n[2][0]);
    // sigma maps Pauli index k to the element carrying n_k
    let sigma = if det > 0.0 { [1, 2, 3] } else { [1, 3, 2] };
    let cols = [n[sigma[0] - 1], n[sigma[1] - 1], n[sigma[2] - 1]];
    let r = RotMat::new([0, 1, 2].map(|i| [cols[0][i], cols[1][i], cols[2][i]]))
        .map_err(|_| Error::NotOrthogonalBasis("axes do not form an orthonormal frame"))?;
    let lift = su2_from_rotation(&r).0;
    let v = v0.compose(&lift)?;
    let vp = lift.dagger();
    let mut permutation = [0; 3];
    for (k, &elem) in sigma.iter().enumerate() {
        permutation[elem - 1] = k + 1;
    }
    let mut frame = OneDesignFrame { v, vp, phases: [C64::new(1.0, 0.0); 4], permutation };
    for (a, u) in us.iter().enumerate() {
        let f = frame.frame_element(frame.pauli_of(a));
        let z = hs_inner(&f, u)? / 2.0;
        frame.phases[a] = z / z.norm();
    }
    let worst = frame.reconstruct().iter().zip(&us).map(|(r, u)| r.hs_distance(u)).fold(0.0, f64::max);
    if worst > 1e-8_f64.max(tol) {
        return Err(Error::NotOrthogonalBasis("frame does not reconstruct the set"));
    }
    Ok(frame)
}

/// `S u W~ S u W~^dagger S`, with `W~` taken from the frame of `S`.
pub fn extend_to_2design(s: &UnitarySet) -> Result<UnitarySet> {
    let frame = classify_min_1design(s.elems(), tol::EQUALITY.max(1e-9)).map_err(|_| Error::NotMinimal1Design)?;
    let wt = frame.shift();
    let wtd = wt.dagger();
    let mut elems: Vec<UnitaryMat> = s.elems().to_vec();
    elems.extend(s.iter().map(|u| &wt * u));
    elems.extend(s.iter().map(|u| &wtd * u));
    UnitarySet::try_new(elems)
}

/// `{ W^k B : k = 0, 1, -1 }`.
pub fn extension_n(b: &[UnitaryMat]) -> Vec<UnitaryMat> {
    let (w, wd) = (w(), w().dagger());
    let mut out: Vec<UnitaryMat> = b.to_vec();
    out.extend(b.iter().map(|u| &w * u));
    out.extend(b.iter().map(|u| &wd * u));
    out
}

/// `B u (W^dagger B)^dagger u W^dagger B`.
pub fn extension_n_prime(b: &[UnitaryMat]) -> Vec<UnitaryMat> {
    extension_primed(b, false)
}

/// `B u -(W^dagger B)^dagger u W^dagger B`.
pub fn extension_n_double_prime(b: &[UnitaryMat]) -> Vec<UnitaryMat> {
    extension_primed(b, true)
}

fn extension_primed(b: &[UnitaryMat], negate: bool) -> Vec<UnitaryMat> {
    let wd = w().dagger();
    let shifted: Vec<UnitaryMat> = b.iter().map(|u| &wd * u).collect();
    let mut out: Vec<UnitaryMat> = b.to_vec();
    out.extend(shifted.iter().map(|u| if negate { u.dagger().negate() } else { u.dagger() }));
    out.extend(shifted);
    out
}

/// `d^4 - 2 d^2 + 2`, a lower bound on the size of a 2-design of U(d).
pub fn clifford_bound(d: u64) -> u64 {
    d.pow(4) - 2 * d * d + 2
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DesignName {
    /// Pauli basis `{1, X, Y, Z}`.
    B,
    /// `{1, I, J, K}`, the Pauli basis normalized into SU(2).
    B0,
    /// `{W^k X_mu}`.
    D,
    D0,
    D1,
    D2,
}

impl DesignName {
    pub const ALL: [DesignName; 6] =
        [DesignName::B, DesignName::B0, DesignName::D, DesignName::D0, DesignName::D1, DesignName::D2];

    /// Accepts `pauli` as a synonym for `B`.
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "B" | "pauli" => Ok(DesignName::B),
            "B0" => Ok(DesignName::B0),
            "D" => Ok(DesignName::D),
            "D0" => Ok(DesignName::D0),
            "D1" => Ok(DesignName::D1),
            "D2" => Ok(DesignName::D2),
            other => Err(Error::UnknownName(other.to_string())),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            DesignName::B => "B",
            DesignName::B0 => "B0",
            DesignName::D => "D",
            DesignName::D0 => "D0",
            DesignName::D1 => "D1",
            DesignName::D2 => "D2",
        }
    }
}

impl core::str::FromStr for DesignName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        DesignName::parse(s)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NamedDesign {
    pub name: DesignName,
    pub set: UnitarySet,
}

/// Element `(sign, k, mu)` stands for `sign * W^k U_mu` with `W^-1 = W^dagger`.
type Word = (f64, i8, usize);

fn build(words: &[Word], paulis: bool) -> Vec<UnitaryMat> {
    let powers = [UnitaryMat::identity(2), w(), w().dagger()];
    words
        .iter()
        .map(|&(sign, k, mu)| {
            let base = if paulis { pauli_mat(mu) } else { imaginary_unit(mu) };
            let wk = &powers[k.rem_euclid(3) as usize];
            UnitaryMat::from_trusted((wk.as_mat() * &base).scale_real(sign))
        })
        .collect()
}

fn words(signs: [f64; 12]) -> [Word; 12] {
    core::array::from_fn(|i| (signs[i], [0, 1, -1][i / 4], i % 4))
}

pub fn named_design(name: DesignName) -> NamedDesign {
    let plus = [1.0; 12];
    let elems = match name {
        DesignName::B => build(&words(plus)[..4], true),
        DesignName::B0 => build(&words(plus)[..4], false),
        DesignName::D => build(&words(plus), true),
        DesignName::D0 => build(&words(plus), false),
        DesignName::D1 => build(&words([1.0, 1.0, 1.0, 1.0, 1.0, -1.0, -1.0, -1.0, 1.0, 1.0, 1.0, 1.0]), false),
        DesignName::D2 => build(&words([1.0, -1.0, -1.0, -1.0, -1.0, -1.0, -1.0, -1.0, 1.0, -1.0, -1.0, -1.0]), false),
    };
    NamedDesign { name, set: UnitarySet::try_new(elems).expect("named designs are distinct") }
}
