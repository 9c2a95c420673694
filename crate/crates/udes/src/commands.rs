//! The operations behind each subcommand. Every command returns an
//! [`Outcome`] holding its report and exit code, or a [`CliError`].

use std::f64::consts::PI;
use std::fmt;
use std::path::Path;

use serde_json::json;
use udes_core::design::{classify_min_1design, extend_to_2design, named_design, DesignName, DesignReport};
use udes_core::group::{
    demitesseract_class, group_profile, polytope_identify, so3_image_table, sphere_points, su2_closure,
    DemitesseractClass, PolytopeKind, Su2Closure,
};
use udes_core::su2::{quaternion_of, so3_rep};
use udes_core::twirl::{basis_twirl_deviation, frame_potential, mc_oracle_deviations, McSuperOpAccumulator};
use udes_core::{Error, HaarSampler, Mat, Quaternion, UnitaryMat, UnitarySet, C64};

use crate::file::{FileError, UnitarySetFile};
use crate::parallel::par_map;
use crate::report::{exact_symbol, Cell, ReportDocument, Table};

/// Stable process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitCode {
    Ok = 0,
    False = 1,
    Parse = 2,
    Unsupported = 3,
    Precondition = 4,
    Structure = 5,
}

impl ExitCode {
    pub fn code(self) -> i32 {
        self as i32
    }

    fn from_bool(ok: bool) -> Self {
        if ok {
            ExitCode::Ok
        } else {
            ExitCode::False
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CliError {
    pub code: ExitCode,
    pub message: String,
}

impl CliError {
    pub fn new(code: ExitCode, message: impl Into<String>) -> Self {
        CliError { code, message: message.into() }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

impl From<FileError> for CliError {
    fn from(e: FileError) -> Self {
        CliError::new(ExitCode::Parse, e.to_string())
    }
}

fn core_error(e: Error) -> CliError {
    let code = match e {
        Error::UnsupportedOrder(_) => ExitCode::Unsupported,
        Error::ProportionalElements(..) => ExitCode::Structure,
        Error::NotMinimal1Design | Error::NotOrthogonalBasis(_) | Error::InconsistentVerdict { .. } => {
            ExitCode::Precondition
        }
        _ => ExitCode::Parse,
    };
    CliError::new(code, e.to_string())
}

#[derive(Debug, Clone)]
pub struct Outcome {
    pub code: ExitCode,
    pub report: ReportDocument,
}

/// A unitary set with its labels and canonical serialization.
#[derive(Debug, Clone)]
pub struct Input {
    pub set: UnitarySet,
    pub labels: Vec<String>,
    pub canonical: String,
    pub warnings: Vec<String>,
}

impl Input {
    pub fn from_set(set: UnitarySet, labels: Option<Vec<String>>) -> Self {
        let labels = labels.unwrap_or_else(|| (0..set.len()).map(|i| format!("U{i}")).collect());
        let canonical = UnitarySetFile::from_set(&set, Some(labels.clone())).to_canonical_string();
        Input { set, labels, canonical, warnings: Vec::new() }
    }

    pub fn builtin(name: DesignName) -> Self {
        Input::from_set(named_design(name).set, Some(builtin_labels(name)))
    }

    pub fn from_path(path: &Path, tol: f64, strict: bool) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::new(ExitCode::Parse, format!("{}: {e}", path.display())))?;
        Input::from_text(&text, tol, strict)
    }

    pub fn from_text(text: &str, tol: f64, strict: bool) -> Result<Self, CliError> {
        let loaded = UnitarySetFile::parse(text, strict)?;
        let set = loaded.file.to_set(tol)?;
        let mut input = Input::from_set(set, loaded.file.labels.clone());
        input.warnings = loaded.warnings;
        Ok(input)
    }

    fn digest_bytes(&self, params: &str) -> Vec<u8> {
        format!("{}\n{params}", self.canonical).into_bytes()
    }
}

/// Labels for the built-in sets, in their element order.
pub fn builtin_labels(name: DesignName) -> Vec<String> {
    let paulis = ["1", "X", "Y", "Z"];
    let units = ["1", "I", "J", "K"];
    let cosets = |base: [&str; 4], signs: [&str; 12]| -> Vec<String> {
        let prefixes = ["", "W", "W†"];
        (0..12)
            .map(|i| {
                let (p, b) = (prefixes[i / 4], base[i % 4]);
                let word = match (p, b) {
                    ("", b) => b.to_string(),
                    (p, "1") => p.to_string(),
                    (p, b) => format!("{p}{b}"),
                };
                format!("{}{word}", signs[i])
            })
            .collect()
    };
    let plus = [""; 12];
    match name {
        DesignName::B => paulis.map(String::from).to_vec(),
        DesignName::B0 => units.map(String::from).to_vec(),
        DesignName::D => cosets(paulis, plus),
        DesignName::D0 => cosets(units, plus),
        DesignName::D1 => cosets(units, ["", "", "", "", "", "-", "-", "-", "", "", "", ""]),
        DesignName::D2 => cosets(units, ["", "-", "-", "-", "-", "-", "-", "-", "", "-", "-", "-"]),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Twirl,
    Frame,
    Both,
}

impl Method {
    fn as_str(self) -> &'static str {
        match self {
            Method::Twirl => "twirl",
            Method::Frame => "frame",
            Method::Both => "both",
        }
    }
}

fn check_qubit_order(set: &UnitarySet, t: usize) -> Result<(), CliError> {
    if !(1..=2).contains(&t) {
        return Err(CliError::new(ExitCode::Unsupported, format!("order t = {t} is not supported; use 1 or 2")));
    }
    if set.dim() != 2 {
        return Err(CliError::new(ExitCode::Unsupported, format!("dimension {} is not supported; use 2", set.dim())));
    }
    Ok(())
}

pub fn verify(input: &Input, t: usize, method: Method, tol: f64, threads: usize) -> Result<Outcome, CliError> {
    check_qubit_order(&input.set, t)?;
    let fp = frame_potential(&input.set, t);
    let gap = fp.gap.expect("qubit Haar value is known for t <= 2");
    let n = 1usize << (2 * t);
    let devs = par_map(n, threads, |k| basis_twirl_deviation(&input.set, t, k))
        .into_iter()
        .collect::<Result<Vec<f64>, _>>()
        .map_err(core_error)?;
    let dev = devs.iter().copied().fold(0.0, f64::max);

    let mut report =
        ReportDocument::new("verify", &input.digest_bytes(&format!("t={t} method={}", method.as_str())), tol);
    let is_design = match method {
        Method::Twirl => dev <= tol,
        Method::Frame => gap <= tol,
        Method::Both => {
            let r: DesignReport = DesignReport::from_criteria(t, gap, dev, tol).map_err(core_error)?;
            report.verdict("method_agreement", r.method_agreement);
            r.is_design
        }
    };
    report
        .verdict("is_design", is_design)
        .value("t", t)
        .value("method", method.as_str())
        .value("set_size", input.set.len())
        .value("frame_potential", fp.value)
        .value("haar_frame_potential", fp.haar_value)
        .value("frame_gap", gap)
        .value("max_twirl_deviation", dev);
    let d = 1usize << t;
    report.table(Table {
        name: "operator_basis".into(),
        columns: vec!["i".into(), "j".into(), "deviation".into()],
        rows: devs
            .iter()
            .enumerate()
            .map(|(k, &v)| vec![Cell::Num((k / d) as f64), Cell::Num((k % d) as f64), Cell::Num(v)])
            .collect(),
    });
    Ok(Outcome { code: ExitCode::from_bool(is_design), report })
}

fn mat_json(m: &Mat) -> serde_json::Value {
    let rows: Vec<Vec<[f64; 2]>> =
        (0..m.dim()).map(|i| (0..m.dim()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect()).collect();
    json!(rows)
}

/// Completes a minimal 1-design. Without `out`, the completed set is
/// embedded in the report under `completion`.
pub fn construct(input: &Input, out: Option<&Path>, tol: f64) -> Result<Outcome, CliError> {
    let frame = classify_min_1design(input.set.elems(), tol)
        .map_err(|e| CliError::new(ExitCode::Precondition, format!("not a minimal 1-design: {e}")))?;
    let completion = extend_to_2design(&input.set).map_err(|e| match e {
        Error::NotMinimal1Design => CliError::new(ExitCode::Precondition, "not a minimal 1-design"),
        other => core_error(other),
    })?;
    let gap = frame_potential(&completion, 2).gap.expect("qubit");
    let dev = udes_core::twirl::max_basis_twirl_deviation(&completion, 2).map_err(core_error)?;
    let verdict = DesignReport::from_criteria(2, gap, dev, tol).map_err(core_error)?;

    let mut labels = input.labels.clone();
    labels.extend(input.labels.iter().map(|l| format!("W~{l}")));
    labels.extend(input.labels.iter().map(|l| format!("W~†{l}")));
    let file = UnitarySetFile::from_set(&completion, Some(labels));

    let mut report = ReportDocument::new("construct", &input.digest_bytes("construct"), tol);
    report
        .verdict("is_design", verdict.is_design)
        .value("frame_v", mat_json(&frame.v))
        .value("frame_vp", mat_json(&frame.vp))
        .value("frame_phases", frame.phases.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>())
        .value("frame_permutation", frame.permutation)
        .value("completion_size", completion.len())
        .value("frame_gap", gap)
        .value("max_twirl_deviation", dev);
    match out {
        Some(path) => {
            std::fs::write(path, file.to_canonical_string())
                .map_err(|e| CliError::new(ExitCode::Parse, format!("{}: {e}", path.display())))?;
            report.value("output", path.display().to_string());
        }
        None => {
            report.value("completion", &file);
        }
    }
    Ok(Outcome { code: ExitCode::from_bool(verdict.is_design), report })
}

pub fn frame_potential_cmd(input: &Input, t: usize, tol: f64) -> Result<Outcome, CliError> {
    if t == 0 {
        return Err(CliError::new(ExitCode::Unsupported, "order t must be at least 1"));
    }
    let fp = frame_potential(&input.set, t);
    let mut report = ReportDocument::new("frame-potential", &input.digest_bytes(&format!("t={t}")), tol);
    report.value("t", t).value("value", fp.value).value("haar_value", fp.haar_value).value("gap", fp.gap);
    if let Some(gap) = fp.gap {
        report.verdict("gap_nonnegative", gap >= -tol);
    }
    Ok(Outcome { code: ExitCode::Ok, report })
}

/// Labels for `closure.closure`. An element equal to the input `L` is
/// `+L`, its negative `-L`; when the input needed a phase to land in SU(2)
/// the pair is `+~L`, `-~L`.
fn closure_labels(closure: &Su2Closure, labels: &[String]) -> Vec<String> {
    closure
        .closure
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let (a, l) = (i / 2, &labels[i / 2]);
            let u = closure.original.elems()[a].as_mat();
            if c.approx_eq(u, 1e-9) {
                format!("+{l}")
            } else if c.approx_eq(&-u, 1e-9) {
                format!("-{l}")
            } else if i % 2 == 0 {
                format!("+~{l}")
            } else {
                format!("-~{l}")
            }
        })
        .collect()
}

fn quaternion_cells(q: &Quaternion) -> Vec<Cell> {
    q.coords().into_iter().map(Cell::number).collect()
}

pub fn group(input: &Input, tol: f64) -> Result<Outcome, CliError> {
    if input.set.dim() != 2 {
        return Err(CliError::new(ExitCode::Unsupported, "group analysis needs 2x2 unitaries"));
    }
    let closure = su2_closure(&input.set).map_err(core_error)?;
    let profile = group_profile(&closure);
    let labels = closure_labels(&closure, &input.labels);
    let mut report = ReportDocument::new("group", &input.digest_bytes("group"), tol);
    let histogram: std::collections::BTreeMap<String, usize> =
        profile.order_histogram.iter().map(|(k, v)| (k.to_string(), *v)).collect();
    report
        .verdict("is_group", profile.is_group)
        .verdict("semidirect_check", profile.semidirect_check)
        .value("order", profile.order)
        .value("order_histogram", histogram)
        .value("center_size", profile.center_size);
    if let Some(c) = &profile.cosets {
        let named: Vec<Vec<&str>> =
            c.cosets.iter().map(|cs| cs.iter().map(|&i| labels[i].as_str()).collect()).collect();
        report.value("normal_subgroup_order", c.subgroup.len()).value("cosets", named);
    }
    let orders: Vec<Cell> = closure
        .closure
        .iter()
        .map(|u| {
            udes_core::group::cyclic_group(u, 2 * closure.len().max(12))
                .map_or(Cell::text("inf"), |g| Cell::Num(g.len() as f64))
        })
        .collect();
    let rows = closure
        .quaternions()
        .iter()
        .zip(&labels)
        .zip(orders)
        .map(|((q, l), o)| {
            let mut row = vec![Cell::text(l.clone())];
            row.extend(quaternion_cells(q));
            row.push(o);
            row
        })
        .collect();
    report.table(Table {
        name: "elements".into(),
        columns: ["label", "s", "x", "y", "z", "order"].map(String::from).to_vec(),
        rows,
    });
    Ok(Outcome { code: ExitCode::from_bool(profile.is_group), report })
}

pub fn geometry(input: &Input, tol: f64) -> Result<Outcome, CliError> {
    if input.set.dim() != 2 {
        return Err(CliError::new(ExitCode::Unsupported, "geometry needs 2x2 unitaries"));
    }
    let closure = su2_closure(&input.set).map_err(core_error)?;
    let qs = closure.quaternions();
    let id = polytope_identify(&qs).map_err(core_error)?;
    let images = so3_image_table(&closure);
    let nonzero: Vec<[f64; 3]> =
        images.iter().map(|a| a.vector()).filter(|v| v.iter().any(|c| c.abs() > 1e-12)).collect();
    let image_kind = if nonzero.len() > 1 {
        polytope_identify(&sphere_points(&nonzero)).map_err(core_error)?.kind
    } else {
        PolytopeKind::Other
    };
    let mut report = ReportDocument::new("geometry", &input.digest_bytes("geometry"), tol);
    report
        .verdict("recognized", id.kind != PolytopeKind::Other)
        .value("polytope", id.kind.as_str())
        .value("distance_spectrum", &id.distance_spectrum)
        .value("edge_length", id.edge_length())
        .value("so3_image_polytope", image_kind.as_str());
    let labels = closure_labels(&closure, &input.labels);
    let rows = qs
        .iter()
        .zip(&labels)
        .map(|(q, l)| {
            let class = match demitesseract_class(*q) {
                Ok(DemitesseractClass::WCoset) => "W",
                Ok(DemitesseractClass::WDaggerCoset) => "W†",
                Err(_) => "-",
            };
            let mut row = vec![Cell::text(l.clone())];
            row.extend(quaternion_cells(q));
            row.push(Cell::text(class));
            row
        })
        .collect();
    report.table(Table {
        name: "vertices".into(),
        columns: ["label", "s", "x", "y", "z", "demitesseract"].map(String::from).to_vec(),
        rows,
    });
    let rows = images
        .iter()
        .zip(input.labels.iter())
        .map(|(a, l)| {
            let v = a.vector();
            vec![
                Cell::text(format!("±{l}")),
                Cell::number(v[0]),
                Cell::number(v[1]),
                Cell::number(v[2]),
                Cell::number(a.angle()),
            ]
        })
        .collect();
    report.table(Table {
        name: "so3_images".into(),
        columns: ["pair", "x", "y", "z", "angle"].map(String::from).to_vec(),
        rows,
    });
    Ok(Outcome { code: ExitCode::from_bool(id.kind != PolytopeKind::Other), report })
}

/// Draws per work item of the Monte-Carlo loop. Fixed, so results do not
/// depend on the thread count.
pub const MC_CHUNK: u64 = 1 << 14;

pub fn mc(t: usize, samples: u64, seed: u64, tol: f64, threads: usize) -> Result<Outcome, CliError> {
    if !(1..=2).contains(&t) {
        return Err(CliError::new(ExitCode::Unsupported, format!("order t = {t} is not supported; use 1 or 2")));
    }
    if samples < 2 {
        return Err(CliError::new(ExitCode::Precondition, "need at least 2 samples for a standard error"));
    }
    let h = HaarSampler::new(seed);
    let chunks = samples.div_ceil(MC_CHUNK) as usize;
    let parts = par_map(chunks, threads, |c| {
        let start = c as u64 * MC_CHUNK;
        let mut acc = McSuperOpAccumulator::new(t).expect("t checked");
        acc.add_draws(&h, start..(start + MC_CHUNK).min(samples));
        acc
    });
    let mut total = McSuperOpAccumulator::new(t).expect("t checked");
    for p in &parts {
        total.merge(p);
    }
    let (superop, errs) = total.finish().map_err(core_error)?;
    let devs = mc_oracle_deviations(t, &superop, &errs).map_err(core_error)?;
    let (worst, &(max_dev, se_at_max)) =
        devs.iter().enumerate().max_by(|a, b| a.1 .0.total_cmp(&b.1 .0)).expect("nonempty basis");
    let max_ratio = devs.iter().map(|(d, s)| if *s > 0.0 { d / s } else { 0.0 }).fold(0.0, f64::max);
    let within = devs.iter().all(|(d, s)| *d <= 5.0 * s);

    let params = format!("mc t={t} samples={samples} seed={seed}");
    let mut report = ReportDocument::new("mc", params.as_bytes(), tol);
    let d = 1usize << t;
    report
        .verdict("within_5_standard_errors", within)
        .value("t", t)
        .value("samples", samples)
        .value("seed", seed)
        .value("max_deviation", max_dev)
        .value("std_error_at_max", se_at_max)
        .value("max_basis_index", [worst % d, worst / d])
        .value("max_ratio", max_ratio);
    report.table(Table {
        name: "operator_basis".into(),
        columns: ["i", "j", "deviation", "std_error"].map(String::from).to_vec(),
        rows: devs
            .iter()
            .enumerate()
            .map(|(k, (dv, se))| {
                vec![Cell::Num((k % d) as f64), Cell::Num((k / d) as f64), Cell::Num(*dv), Cell::Num(*se)]
            })
            .collect(),
    });
    Ok(Outcome { code: ExitCode::from_bool(within), report })
}

/// `s + xi + yj + zk` with exact coefficients.
pub fn quaternion_text(q: &Quaternion) -> String {
    let mut out = String::new();
    for (c, unit) in q.coords().into_iter().zip(["", "i", "j", "k"]) {
        if c.abs() <= 1e-12 {
            continue;
        }
        let sym = exact_symbol(c.abs()).unwrap_or_else(|| crate::report::number_string(c.abs()));
        let body = if sym == "1" && !unit.is_empty() { unit.to_string() } else { format!("{sym}{unit}") };
        let sign = if c < 0.0 { "-" } else { "+" };
        if out.is_empty() {
            out = if c < 0.0 { format!("-{body}") } else { body };
        } else {
            out.push_str(&format!(" {sign} {body}"));
        }
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

fn axis_text(n: [f64; 3]) -> String {
    let nonzero = n.iter().filter(|c| c.abs() > 1e-12).count();
    if nonzero == 1 {
        let v = n.map(|c| if c.abs() > 1e-12 { c.signum() } else { 0.0 });
        return format!("({},{},{})", v[0], v[1], v[2]);
    }
    let s: Vec<&str> = n.iter().map(|c| if *c < 0.0 { "-" } else { "+" }).collect();
    format!("({},{},{})/√{nonzero}", s[0], s[1], s[2])
}

/// One row per element of the SU(2) closure of `D0`, in the order
/// `+1, -1, +I, -I, ...`.
pub fn table(tol: f64) -> Result<Outcome, CliError> {
    let input = Input::builtin(DesignName::D0);
    let closure = su2_closure(&input.set).map_err(core_error)?;
    let labels = closure_labels(&closure, &input.labels);
    let images = so3_image_table(&closure);
    let mut rows = Vec::new();
    let mut worst_reconstruction = 0.0_f64;
    let mut order: Vec<usize> = (0..closure.len()).collect();
    order.sort_by_key(|&i| (i / 2, labels[i].starts_with('-')));
    for i in order {
        let u = &closure.closure[i];
        let q = quaternion_of(u).map_err(core_error)?;
        let image = images[i / 2];
        let v = image.vector();
        let axis = image.axis();
        // U = exp(-i phi n.X) with n the axis of the pair's rotation
        let (phi, axis_cell) = if image.angle() <= 1e-12 {
            (if q.s > 0.0 { 0.0 } else { PI }, Cell::text("any"))
        } else {
            let proj: f64 = (0..3).map(|k| q.vector()[k] * axis[k]).sum();
            (proj.atan2(q.s).rem_euclid(2.0 * PI), Cell::text(axis_text(axis)))
        };
        let coeffs = [q.s, -q.x, -q.y, -q.z];
        let rebuilt = pauli_rebuild(coeffs);
        worst_reconstruction = worst_reconstruction.max(rebuilt.hs_distance(u));
        let mut row = vec![Cell::text(labels[i].clone()), Cell::number(phi), axis_cell];
        row.extend(coeffs.into_iter().map(Cell::number));
        row.push(Cell::text(quaternion_text(&q)));
        row.extend(quaternion_cells(&q));
        row.extend(v.into_iter().map(Cell::number));
        rows.push(row);
        // the rotation vector must also be the image of this element
        let direct = so3_rep(u).map_err(core_error)?.axis_angle().vector();
        debug_assert!((0..3).all(|k| (direct[k] - v[k]).abs() < 1e-9));
    }
    let mut report = ReportDocument::new("table", b"table D0", tol);
    report
        .verdict("pauli_reconstruction", worst_reconstruction <= tol)
        .value("rows", rows.len())
        .value("max_reconstruction_error", worst_reconstruction);
    report.table(Table {
        name: "elements".into(),
        columns: [
            "label",
            "exp_angle",
            "exp_axis",
            "pauli_1",
            "pauli_iX",
            "pauli_iY",
            "pauli_iZ",
            "H",
            "s",
            "x",
            "y",
            "z",
            "so3_x",
            "so3_y",
            "so3_z",
        ]
        .map(String::from)
        .to_vec(),
        rows,
    });
    Ok(Outcome { code: ExitCode::from_bool(worst_reconstruction <= tol), report })
}

/// `c_0 1 + c_1 iX + c_2 iY + c_3 iZ`.
fn pauli_rebuild(c: [f64; 4]) -> Mat {
    let i = C64::new(0.0, 1.0);
    let x = Mat::from_row_major(2, vec![C64::new(0.0, 0.0), i, i, C64::new(0.0, 0.0)]).unwrap();
    let y = Mat::from_real(2, &[0.0, 1.0, -1.0, 0.0]).unwrap();
    let z = Mat::diag(&[i, -i]);
    Mat::identity(2).scale_real(c[0]) + &x.scale_real(c[1]) + &y.scale_real(c[2]) + &z.scale_real(c[3])
}

/// The unitaries of a 2x2 set, for callers that need to build inputs.
pub fn unitary(rows: [[C64; 2]; 2]) -> Result<UnitaryMat, CliError> {
    let m = Mat::from_row_major(2, rows.iter().flatten().copied().collect()).map_err(core_error)?;
    UnitaryMat::try_from_mat(m).map_err(core_error)
}
