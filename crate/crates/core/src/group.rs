//! Closure of qubit designs in SU(2), finite-group structure of the
//! closure, and recognition of the resulting point sets on the 3-sphere.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::{hs_inner, Mat, UnitaryMat};
use crate::qubit::imaginary_unit;
use crate::su2::{normalize_to_su2, quaternion_of, so3_rep, w, AxisAngle, Quaternion};
use crate::tol;
use crate::twirl::UnitarySet;

/// Both normalizations into SU(2) of every element of a set.
#[derive(Debug, Clone, PartialEq)]
pub struct Su2Closure {
    pub original: UnitarySet,
    /// `[c_0, -c_0, c_1, -c_1, ...]` with `c_a` the canonical normalization
    /// of element `a`.
    pub closure: Vec<UnitaryMat>,
    /// `pairing[i]` is the index of `-closure[i]`.
    pub pairing: Vec<usize>,
}

impl Su2Closure {
    pub fn len(&self) -> usize {
        self.closure.len()
    }

    pub fn is_empty(&self) -> bool {
        self.closure.is_empty()
    }

    pub fn quaternions(&self) -> Vec<Quaternion> {
        self.closure.iter().map(|u| quaternion_of(u).expect("closure is special unitary")).collect()
    }

    /// One element per antipodal pair, the canonical one.
    pub fn representatives(&self) -> impl Iterator<Item = &UnitaryMat> {
        self.closure.iter().step_by(2)
    }
}

/// Fails when two elements are proportional, since they would share their
/// normalizations.
pub fn su2_closure(s: &UnitarySet) -> Result<Su2Closure> {
    if s.dim() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, found: s.dim() });
    }
    let elems = s.elems();
    for a in 0..elems.len() {
        for b in a + 1..elems.len() {
            if hs_inner(&elems[a], &elems[b])?.norm() >= 2.0 - tol::GROUP {
                return Err(Error::ProportionalElements(a, b));
            }
        }
    }
    let mut closure = Vec::with_capacity(2 * elems.len());
    for u in elems {
        let (c, m) = normalize_to_su2(u)?;
        closure.push(c);
        closure.push(m);
    }
    let pairing = (0..closure.len()).map(|i| i ^ 1).collect();
    Ok(Su2Closure { original: s.clone(), closure, pairing })
}

/// Partition of a group into cosets of a normal subgroup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetDecomposition {
    /// Indices of the subgroup's elements.
    pub subgroup: Vec<usize>,
    /// Each coset as sorted element indices; the subgroup itself comes first.
    pub cosets: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GroupProfile {
    pub order: usize,
    pub is_group: bool,
    /// Element order to number of elements; elements whose powers never
    /// return to the identity within `order` steps are left out.
    pub order_histogram: BTreeMap<usize, usize>,
    pub center_size: usize,
    /// Cosets of the largest proper normal subgroup among `{+-1, +-I, +-J, +-K}`,
    /// `{+-1, +-I_i}` and `{+-1}`; `None` when the set is not a group or
    /// none of these is a proper normal subgroup.
    pub cosets: Option<CosetDecomposition>,
    /// `G = Q8 x| <-W>` as an inner semidirect product.
    pub semidirect_check: bool,
}

struct Table<'a> {
    elems: &'a [UnitaryMat],
}

impl Table<'_> {
    fn find(&self, m: &Mat) -> Option<usize> {
        self.elems.iter().position(|e| e.hs_distance(m) <= tol::GROUP)
    }

    fn contains_all(&self, ms: &[Mat]) -> Option<Vec<usize>> {
        ms.iter().map(|m| self.find(m)).collect()
    }

    fn is_normal(&self, sub: &[usize]) -> bool {
        self.elems.iter().all(|g| {
            sub.iter().all(|&n| {
                let c = g.conjugate(&self.elems[n]).expect("2x2");
                sub.iter().any(|&k| self.elems[k].hs_distance(&c) <= tol::GROUP)
            })
        })
    }
}

fn element_order(u: &Mat, limit: usize) -> Option<usize> {
    let id = Mat::identity(u.dim());
    let mut p = u.clone();
    for k in 1..=limit {
        if p.hs_distance(&id) <= tol::GROUP {
            return Some(k);
        }
        p = &p * u;
    }
    None
}

fn signed(ms: &[Mat]) -> Vec<Mat> {
    ms.iter().flat_map(|m| [m.clone(), -m]).collect()
}

fn is_closed(table: &Table<'_>, sub: &[usize]) -> bool {
    sub.iter().all(|&a| {
        sub.iter().all(|&b| {
            let p = table.elems[a].as_mat() * table.elems[b].as_mat();
            sub.iter().any(|&k| table.elems[k].hs_distance(&p) <= tol::GROUP)
        })
    })
}

pub fn group_profile(c: &Su2Closure) -> GroupProfile {
    group_profile_of(&c.closure)
}

/// Structure of a finite list of 2x2 unitaries viewed as a candidate group.
pub fn group_profile_of(elems: &[UnitaryMat]) -> GroupProfile {
    let table = Table { elems };
    let n = elems.len();
    let is_group =
        n > 0 && elems.iter().all(|a| elems.iter().all(|b| table.find(&(a.as_mat() * b.as_mat())).is_some()));

    let mut order_histogram = BTreeMap::new();
    for u in elems {
        if let Some(k) = element_order(u, n.max(1)) {
            *order_histogram.entry(k).or_insert(0) += 1;
        }
    }

    let center_size = elems
        .iter()
        .filter(|a| {
            elems.iter().all(|b| (a.as_mat() * b.as_mat()).hs_distance(&(b.as_mat() * a.as_mat())) <= tol::GROUP)
        })
        .count();

    let units: Vec<Mat> = (0..4).map(imaginary_unit).collect();
    let q8 = signed(&units);
    let mut candidates = alloc::vec![q8.clone()];
    for i in 1..4 {
        candidates.push(signed(&[units[0].clone(), units[i].clone()]));
    }
    candidates.push(signed(&units[..1]));

    let mut cosets = None;
    if is_group {
        for cand in &candidates {
            let Some(sub) = table.contains_all(cand) else { continue };
            if sub.len() == n || !is_closed(&table, &sub) || !table.is_normal(&sub) {
                continue;
            }
            cosets = Some(coset_decomposition(&table, sub));
            break;
        }
    }

    let semidirect_check = is_group && semidirect(&table, &q8);

    GroupProfile { order: n, is_group, order_histogram, center_size, cosets, semidirect_check }
}

fn coset_decomposition(table: &Table<'_>, mut sub: Vec<usize>) -> CosetDecomposition {
    sub.sort_unstable();
    let n = table.elems.len();
    let mut seen = alloc::vec![false; n];
    let mut cosets = Vec::new();
    for g in 0..n {
        if seen[g] {
            continue;
        }
        let mut coset: Vec<usize> = sub
            .iter()
            .map(|&h| table.find(&(table.elems[g].as_mat() * table.elems[h].as_mat())).expect("group is closed"))
            .collect();
        coset.sort_unstable();
        for &k in &coset {
            seen[k] = true;
        }
        cosets.push(coset);
    }
    CosetDecomposition { subgroup: sub, cosets }
}

/// `Q8` normal in `G`, `<-W>` inside `G`, trivial intersection, and
/// `|Q8| |<-W>| = |G|`.
fn semidirect(table: &Table<'_>, q8: &[Mat]) -> bool {
    let Some(normal) = table.contains_all(q8) else { return false };
    if !table.is_normal(&normal) {
        return false;
    }
    let g = w().negate();
    let h = [Mat::identity(2), g.as_mat().clone(), g.as_mat() * g.as_mat()];
    let Some(hidx) = table.contains_all(&h) else { return false };
    let meet = hidx.iter().filter(|i| normal.contains(i)).count();
    meet == 1 && normal.len() * hidx.len() == table.elems.len()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PolytopeKind {
    SixteenCell,
    Tesseract,
    TwentyFourCell,
    Hexagon,
    /// The cube on the unit 2-sphere, seen as two interlocked regular
    /// tetrahedra.
    TetrahedronPair,
    Other,
}

impl PolytopeKind {
    pub fn as_str(self) -> &'static str {
        match self {
            PolytopeKind::SixteenCell => "16-cell",
            PolytopeKind::Tesseract => "tesseract",
            PolytopeKind::TwentyFourCell => "24-cell",
            PolytopeKind::Hexagon => "hexagon",
            PolytopeKind::TetrahedronPair => "tetrahedron-pair",
            PolytopeKind::Other => "other",
        }
    }
}

/// Per-vertex chord lengths with multiplicities, ascending.
pub type DistanceSpectrum = Vec<(f64, usize)>;

#[derive(Debug, Clone, PartialEq)]
pub struct PolytopeId {
    pub kind: PolytopeKind,
    /// The spectrum of the first vertex; for a recognized kind every vertex
    /// has this spectrum.
    pub distance_spectrum: DistanceSpectrum,
}

impl PolytopeId {
    /// Shortest chord, the edge length for the recognized kinds.
    pub fn edge_length(&self) -> Option<f64> {
        self.distance_spectrum.first().map(|&(d, _)| d)
    }
}

const SPECTRUM_TOL: f64 = 1e-9;

fn templates() -> [(PolytopeKind, DistanceSpectrum); 5] {
    let (r2, r3) = (libm::sqrt(2.0), libm::sqrt(3.0));
    [
        (PolytopeKind::SixteenCell, alloc::vec![(r2, 6), (2.0, 1)]),
        (PolytopeKind::Tesseract, alloc::vec![(1.0, 4), (r2, 6), (r3, 4), (2.0, 1)]),
        (PolytopeKind::TwentyFourCell, alloc::vec![(1.0, 8), (r2, 6), (r3, 8), (2.0, 1)]),
        (PolytopeKind::Hexagon, alloc::vec![(1.0, 2), (r3, 2), (2.0, 1)]),
        (PolytopeKind::TetrahedronPair, alloc::vec![(2.0 / r3, 3), (2.0 * r2 / r3, 3), (2.0, 1)]),
    ]
}

fn spectrum_of(points: &[[f64; 4]], i: usize) -> DistanceSpectrum {
    let mut ds: Vec<f64> = points
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != i)
        .map(|(_, p)| libm::sqrt((0..4).map(|k| (p[k] - points[i][k]) * (p[k] - points[i][k])).sum()))
        .collect();
    ds.sort_by(f64::total_cmp);
    let mut out: DistanceSpectrum = Vec::new();
    for d in ds {
        match out.last_mut() {
            Some((v, c)) if (d - *v).abs() <= SPECTRUM_TOL => *c += 1,
            _ => out.push((d, 1)),
        }
    }
    out
}

fn same_spectrum(a: &DistanceSpectrum, b: &DistanceSpectrum) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|((x, m), (y, n))| m == n && (x - y).abs() <= SPECTRUM_TOL)
}

/// Matches per-vertex chord spectra of unit quaternions against the stored
/// templates.
pub fn polytope_identify(points: &[Quaternion]) -> Result<PolytopeId> {
    for (i, q) in points.iter().enumerate() {
        if (q.norm() - 1.0).abs() > 1e-10 {
            return Err(Error::NonUnitPoint(i));
        }
    }
    if points.is_empty() {
        return Err(Error::EmptySet);
    }
    let pts: Vec<[f64; 4]> = points.iter().map(|q| q.coords()).collect();
    let first = spectrum_of(&pts, 0);
    let uniform = (1..pts.len()).all(|i| same_spectrum(&spectrum_of(&pts, i), &first));
    let kind = if uniform {
        templates().into_iter().find(|(_, t)| same_spectrum(t, &first)).map_or(PolytopeKind::Other, |(k, _)| k)
    } else {
        PolytopeKind::Other
    };
    Ok(PolytopeId { kind, distance_spectrum: first })
}

/// Points of the unit 2-sphere, embedded as pure quaternions.
pub fn sphere_points(vs: &[[f64; 3]]) -> Vec<Quaternion> {
    vs.iter()
        .map(|v| {
            let n = crate::su2::norm3(*v);
            Quaternion::new(0.0, v[0] / n, v[1] / n, v[2] / n)
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DemitesseractClass {
    /// `W B`, the points with positive coordinate product.
    WCoset,
    /// `W^dagger B`.
    WDaggerCoset,
}

/// Which half of the tesseract a point `(+-1/2, +-1/2, +-1/2, +-1/2)` lies on.
pub fn demitesseract_class(q: Quaternion) -> Result<DemitesseractClass> {
    let c = q.coords();
    if c.iter().any(|x| (x.abs() - 0.5).abs() > tol::UNIT) {
        return Err(Error::NotHalfInteger);
    }
    Ok(if c.iter().product::<f64>() > 0.0 { DemitesseractClass::WCoset } else { DemitesseractClass::WDaggerCoset })
}

/// SO(3) axis-angle image of the canonical element of each antipodal pair.
pub fn so3_image_table(c: &Su2Closure) -> Vec<AxisAngle> {
    c.representatives().map(|u| so3_rep(u).expect("2x2").axis_angle()).collect()
}

/// Cyclic group generated by a special unitary, listed as powers `0, 1, ...`.
pub fn cyclic_group(g: &UnitaryMat, limit: usize) -> Option<Vec<UnitaryMat>> {
    let mut out = alloc::vec![UnitaryMat::identity(g.dim())];
    loop {
        let next = out.last().unwrap() * g;
        if next.hs_distance(&Mat::identity(g.dim())) <= tol::GROUP {
            return Some(out);
        }
        if out.len() >= limit {
            return None;
        }
        out.push(next);
    }
}
