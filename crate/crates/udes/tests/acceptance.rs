//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

use std::f64::consts::PI;
use std::panic::{catch_unwind, AssertUnwindSafe};

use clap::Parser;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde_json::Value;
use udes::Cli;
use udes_core::design::{classify_min_1design, extend_to_2design, named_design, verify_design, DesignName};
use udes_core::group::{cyclic_group, group_profile, polytope_identify, su2_closure, PolytopeKind};
use udes_core::linalg::{Mat, UnitaryMat};
use udes_core::qubit::{adapted_bell_block, pauli, spherical_transition, uu_in_bell_basis, wigner_d1};
use udes_core::su2::{rodrigues, so3_rep, su2_from_axis_angle, su2_from_euler, RotMat};
use udes_core::twirl::{frame_potential, haar_twirl, superop_of_twirl, twirl_finite, TwirlSource};
use udes_core::{AxisAngle, EulerAngles, HaarSampler, PauliIndex, Quaternion, UnitarySet, C64};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn gaussian_mat(rng: &mut ChaCha8Rng, dim: usize) -> Mat {
    Mat::from_fn(dim, |_, _| c(rng.sample(StandardNormal), rng.sample(StandardNormal)))
}

fn random_density(rng: &mut ChaCha8Rng) -> Mat {
    let g = gaussian_mat(rng, 2);
    let rho = &g * &g.adjoint();
    let tr = rho.trace();
    rho.scale(tr.inv())
}

fn random_u2(rng: &mut ChaCha8Rng, h: &HaarSampler, k: u64) -> UnitaryMat {
    let theta: f64 = rng.random_range(0.0..2.0 * PI);
    h.su2_at(k).phase(C64::from_polar(1.0, theta))
}

fn pauli_set() -> UnitarySet {
    named_design(DesignName::B).set
}

fn d_set() -> UnitarySet {
    named_design(DesignName::D).set
}

fn criterion_1() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let b = pauli_set();
    let half = Mat::identity(2).scale_real(0.5);
    let mut worst = 0.0_f64;
    for _ in 0..100 {
        let rho = random_density(&mut rng);
        worst = worst.max(twirl_finite(&b, 1, &rho).map_err(|e| e.to_string())?.hs_distance(&half));
    }
    ensure(worst <= 1e-12, || format!("max deviation {worst:e}"))?;
    Ok(format!("100 states, max deviation {worst:e}"))
}

fn criterion_2() -> Check {
    let d = d_set();
    let mut worst = 0.0_f64;
    for i in 0..4 {
        for j in 0..4 {
            let e = Mat::unit(4, i, j);
            let got = twirl_finite(&d, 2, &e).map_err(|e| e.to_string())?;
            worst = worst.max(got.hs_distance(&haar_twirl(2, &e).map_err(|e| e.to_string())?));
        }
    }
    ensure(worst <= 1e-12, || format!("max deviation {worst:e}"))?;
    Ok(format!("16 operators, max deviation {worst:e}"))
}

fn criterion_3() -> Check {
    let cases = [
        ("F2(D)", frame_potential(&d_set(), 2).value, 2.0),
        ("F2(B)", frame_potential(&pauli_set(), 2).value, 4.0),
        ("F1(B)", frame_potential(&pauli_set(), 1).value, 1.0),
        ("F1(D)", frame_potential(&d_set(), 1).value, 1.0),
    ];
    for (name, got, want) in cases {
        ensure((got - want).abs() <= 1e-12, || format!("{name} = {got}, expected {want}"))?;
    }
    Ok(cases.iter().map(|(n, v, _)| format!("{n}={v}")).collect::<Vec<_>>().join(" "))
}

fn criterion_4() -> Check {
    let b = pauli_set();
    let cases = [
        ("Haar t=1", TwirlSource::Haar, 1, 4),
        ("Haar t=2", TwirlSource::Haar, 2, 10),
        ("Pauli t=2", TwirlSource::Finite(&b), 2, 4),
    ];
    let mut out = Vec::new();
    for (name, src, t, want) in cases {
        let r = superop_of_twirl(src, t).map_err(|e| e.to_string())?.choi_rank(1e-10);
        ensure(r == want, || format!("{name}: rank {r}, expected {want}"))?;
        out.push(format!("{name}:{r}"));
    }
    Ok(out.join(" "))
}

fn rot_distance(a: &RotMat, b: &RotMat) -> f64 {
    a.distance(b)
}

fn criterion_5() -> Check {
    let w = su2_from_euler(EulerAngles::W);
    let shift = RotMat::new([[0.0, 0.0, 1.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]]).map_err(|e| e.to_string())?;
    let dw = rot_distance(&so3_rep(&w).map_err(|e| e.to_string())?, &shift);
    ensure(dw <= 1e-12, || format!("so3_rep(W) off the right shift by {dw:e}"))?;

    let h = HaarSampler::new(5);
    let mut worst_sign = 0.0_f64;
    for k in 0..100 {
        let u = h.su2_at(k);
        let a = so3_rep(&u).map_err(|e| e.to_string())?;
        let b = so3_rep(&u.negate()).map_err(|e| e.to_string())?;
        worst_sign = worst_sign.max(rot_distance(&a, &b));
    }
    ensure(worst_sign <= 1e-12, || format!("so3_rep(U) vs so3_rep(-U): {worst_sign:e}"))?;

    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst_rod = 0.0_f64;
    for _ in 0..100 {
        let v: [f64; 3] = [rng.sample(StandardNormal), rng.sample(StandardNormal), rng.sample(StandardNormal)];
        let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        let axis = v.map(|x| x / n);
        let angle = rng.random_range(0.0..2.0 * PI);
        let aa = AxisAngle::new(axis, angle).map_err(|e| e.to_string())?;
        let lhs = rodrigues(aa).map_err(|e| e.to_string())?;
        let rhs = so3_rep(&su2_from_axis_angle(aa).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        worst_rod = worst_rod.max(rot_distance(&lhs, &rhs));
    }
    ensure(worst_rod <= 1e-10, || format!("Rodrigues vs covering map: {worst_rod:e}"))?;
    Ok(format!("shift {dw:e}, sign {worst_sign:e}, rodrigues {worst_rod:e}"))
}

fn criterion_6() -> Check {
    let w = su2_from_euler(EulerAngles::W);
    let (o, z, i) = (c(1.0, 0.0), c(0.0, 0.0), c(0.0, 1.0));
    let ww = Mat::from_row_major(4, vec![o, z, z, z, z, z, -o, z, z, z, z, -i, z, -i, z, z]).unwrap();
    let got = uu_in_bell_basis(&w).map_err(|e| e.to_string())?;
    let dww = (0..4)
        .flat_map(|a| (0..4).map(move |b| (a, b)))
        .map(|(a, b)| (got[(a, b)] - ww[(a, b)]).norm())
        .fold(0.0, f64::max);
    ensure(dww <= 1e-12, || format!("W (x) W in Bell basis off by {dww:e}"))?;

    let h = HaarSampler::new(6);
    let mut worst_block = 0.0_f64;
    for k in 0..100 {
        let u = h.su2_at(k);
        let block = adapted_bell_block(&u).map_err(|e| e.to_string())?;
        worst_block = worst_block.max(block.hs_distance(&so3_rep(&u).map_err(|e| e.to_string())?.to_mat()));
    }
    ensure(worst_block <= 1e-10, || format!("adapted block vs rotation: {worst_block:e}"))?;

    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let p = spherical_transition();
    let mut worst_d = 0.0_f64;
    for _ in 0..50 {
        let e = EulerAngles::new(
            rng.random_range(0.0..2.0 * PI),
            rng.random_range(0.0..PI),
            rng.random_range(0.0..4.0 * PI),
        )
        .map_err(|e| e.to_string())?;
        let r = so3_rep(&su2_from_euler(e)).map_err(|e| e.to_string())?.to_mat();
        let expected = p.adjoint() * &r * p.as_mat();
        let d1 = wigner_d1(e);
        worst_d = worst_d.max(d1.hs_distance(&expected));
        worst_d = worst_d.max((d1[(1, 1)] - c(e.beta.cos(), 0.0)).norm());
    }
    ensure(worst_d <= 1e-10, || format!("D1 vs P^dagger R P: {worst_d:e}"))?;
    Ok(format!("WW {dww:e}, block {worst_block:e}, D1 {worst_d:e}"))
}

fn criterion_7() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let h = HaarSampler::new(7);
    let mut worst = (0.0_f64, 0.0_f64);
    for k in 0..100u64 {
        let v = random_u2(&mut rng, &h, 2 * k);
        let vp = random_u2(&mut rng, &h, 2 * k + 1);
        let perm: [usize; 3] = if rng.random_bool(0.5) { [1, 2, 3] } else { [1, 3, 2] };
        let mut order = [0usize, 1, 2, 3];
        order[1..].copy_from_slice(&perm);
        let elems: Vec<UnitaryMat> = order
            .iter()
            .map(|&mu| {
                let phase = C64::from_polar(1.0, rng.random_range(0.0..2.0 * PI));
                (&(&v * &pauli(PauliIndex::new(mu as u8).unwrap())) * &vp).phase(phase)
            })
            .collect();
        let set = UnitarySet::new(elems, 1e-10).map_err(|e| format!("frame {k}: {e}"))?;
        classify_min_1design(set.elems(), 1e-10).map_err(|e| format!("frame {k}: {e}"))?;
        let completion = extend_to_2design(&set).map_err(|e| format!("frame {k}: {e}"))?;
        let r = verify_design(&completion, 2, 1e-10).map_err(|e| format!("frame {k}: {e}"))?;
        ensure(r.is_design && completion.len() == 12, || format!("frame {k}: not a 2-design {r:?}"))?;
        worst = (worst.0.max(r.frame_gap.abs()), worst.1.max(r.max_twirl_deviation));
    }
    Ok(format!("100 frames, max gap {:e}, max deviation {:e}", worst.0, worst.1))
}

fn criterion_8() -> Check {
    // 1, -I, -J, -K, -W, -WI, -WJ, -WK, W†, -W†I, -W†J, -W†K as matrices
    let w = su2_from_euler(EulerAngles::W);
    let units: Vec<UnitaryMat> = (0..4)
        .map(|mu| {
            let p = pauli(PauliIndex::new(mu).unwrap());
            if mu == 0 {
                p
            } else {
                p.phase(c(0.0, -1.0))
            }
        })
        .collect();
    let prefixes = [UnitaryMat::identity(2), w.clone(), w.dagger()];
    let signs = [1.0, -1.0, -1.0, -1.0, -1.0, -1.0, -1.0, -1.0, 1.0, -1.0, -1.0, -1.0];
    let d2 = named_design(DesignName::D2).set;
    let mut worst = 0.0_f64;
    for k in 0..12 {
        let expected = (&prefixes[k / 4] * &units[k % 4]).phase(c(signs[k], 0.0));
        worst = worst.max(d2.elems()[k].hs_distance(&expected));
    }
    ensure(worst <= 1e-12, || format!("D2 differs from its closed form by {worst:e}"))?;
    let mut out = vec![format!("D2 closed form {worst:e}")];
    for name in [DesignName::D2, DesignName::D0, DesignName::D1] {
        let r = verify_design(&named_design(name).set, 2, 1e-10).map_err(|e| format!("{}: {e}", name.as_str()))?;
        ensure(r.is_design, || format!("{} is not a 2-design: {r:?}", name.as_str()))?;
        out.push(format!("{} ok", name.as_str()));
    }
    Ok(out.join(", "))
}

fn criterion_9() -> Check {
    let closure = su2_closure(&d_set()).map_err(|e| e.to_string())?;
    let p = group_profile(&closure);
    let hist: Vec<(usize, usize)> = p.order_histogram.iter().map(|(a, b)| (*a, *b)).collect();
    ensure(p.order == 24 && p.is_group, || format!("order {} group {}", p.order, p.is_group))?;
    ensure(hist == [(1, 1), (2, 1), (3, 8), (4, 6), (6, 8)], || format!("histogram {hist:?}"))?;
    ensure(p.center_size == 2 && p.semidirect_check, || {
        format!("center {} semidirect {}", p.center_size, p.semidirect_check)
    })?;

    let kind = |qs: &[Quaternion]| polytope_identify(qs).map_err(|e| e.to_string());
    let b = su2_closure(&pauli_set()).map_err(|e| e.to_string())?;
    ensure(kind(&b.quaternions())?.kind == PolytopeKind::SixteenCell, || "B closure is not a 16-cell".into())?;
    let cosets = UnitarySet::new(d_set().elems()[4..].to_vec(), 1e-10).map_err(|e| e.to_string())?;
    let t = su2_closure(&cosets).map_err(|e| e.to_string())?;
    ensure(t.len() == 16 && kind(&t.quaternions())?.kind == PolytopeKind::Tesseract, || {
        "W cosets are not a tesseract".into()
    })?;
    ensure(kind(&closure.quaternions())?.kind == PolytopeKind::TwentyFourCell, || "D closure is not a 24-cell".into())?;
    let w = su2_from_euler(EulerAngles::W);
    let powers = cyclic_group(&w, 24).ok_or("W has no finite order")?;
    let qs: Vec<Quaternion> = powers.iter().map(|u| udes_core::su2::quaternion_of(u).unwrap()).collect();
    let hex = kind(&qs)?;
    let edge = hex.edge_length().unwrap_or(f64::NAN);
    ensure(hex.kind == PolytopeKind::Hexagon && (edge - 1.0).abs() <= 1e-12, || {
        format!("<W>: {:?} edge {edge}", hex.kind)
    })?;
    Ok(format!("2T order 24, histogram {hist:?}; 16-cell, tesseract, 24-cell, hexagon edge {edge}"))
}

fn run_cli(args: &[&str]) -> Result<(i32, Value), String> {
    let cli = Cli::try_parse_from(args).map_err(|e| e.to_string())?;
    let out = udes::run(&cli);
    if out.stdout.is_empty() {
        return Err(format!("exit {}: {}", out.code, out.stderr));
    }
    let v = serde_json::from_str(&out.stdout).map_err(|e| e.to_string())?;
    Ok((out.code, v))
}

fn criterion_10() -> Check {
    let mut out = Vec::new();
    for t in ["1", "2"] {
        let (code, v) = run_cli(&["udes", "--format", "json", "mc", "--t", t, "--samples", "1000000", "--seed", "10"])?;
        let ratio = v["values"]["max_ratio"].as_f64().ok_or("missing max_ratio")?;
        ensure(code == 0 && ratio <= 5.0, || format!("t={t}: max deviation is {ratio} standard errors"))?;
        out.push(format!("t={t}: {ratio:.3} se"));
    }
    Ok(out.join(", "))
}

/// `+L` rows of the table: quaternion coordinates, H form and SO(3) vector
/// (W-coset vectors in units of `2 pi / (3 sqrt 3)`).
fn expected_table() -> Vec<(&'static str, [&'static str; 4], &'static str, [i32; 3])> {
    vec![
        ("1", ["1", "0", "0", "0"], "1", [0, 0, 0]),
        ("I", ["0", "1", "0", "0"], "i", [9, 0, 0]),
        ("J", ["0", "0", "1", "0"], "j", [0, 9, 0]),
        ("K", ["0", "0", "0", "1"], "k", [0, 0, 9]),
        ("W", ["1/2", "1/2", "1/2", "1/2"], "1/2 + 1/2i + 1/2j + 1/2k", [1, 1, 1]),
        ("WI", ["-1/2", "1/2", "1/2", "-1/2"], "-1/2 + 1/2i + 1/2j - 1/2k", [-1, -1, 1]),
        ("WJ", ["-1/2", "-1/2", "1/2", "1/2"], "-1/2 - 1/2i + 1/2j + 1/2k", [1, -1, -1]),
        ("WK", ["-1/2", "1/2", "-1/2", "1/2"], "-1/2 + 1/2i - 1/2j + 1/2k", [-1, 1, -1]),
        ("W†", ["1/2", "-1/2", "-1/2", "-1/2"], "1/2 - 1/2i - 1/2j - 1/2k", [-1, -1, -1]),
        ("W†I", ["1/2", "1/2", "-1/2", "1/2"], "1/2 + 1/2i - 1/2j + 1/2k", [1, -1, 1]),
        ("W†J", ["1/2", "1/2", "1/2", "-1/2"], "1/2 + 1/2i + 1/2j - 1/2k", [1, 1, -1]),
        ("W†K", ["1/2", "-1/2", "1/2", "1/2"], "1/2 - 1/2i + 1/2j + 1/2k", [-1, 1, 1]),
    ]
}

fn negate_symbol(s: &str) -> String {
    match s {
        "0" => "0".into(),
        s if s.starts_with('-') => s[1..].into(),
        s => format!("-{s}"),
    }
}

fn negate_h(s: &str) -> String {
    let flipped: String = s
        .chars()
        .map(|ch| match ch {
            '+' => '-',
            '-' => '+',
            other => other,
        })
        .collect();
    match flipped.strip_prefix('+') {
        Some(rest) => rest.to_string(),
        None => format!("-{flipped}"),
    }
}

fn so3_symbol(k: i32) -> &'static str {
    match k {
        0 => "0",
        9 => "π",
        1 => "2π/(3√3)",
        _ => "-2π/(3√3)",
    }
}

fn criterion_11() -> Check {
    let (code, v) = run_cli(&["udes", "--format", "json", "table"])?;
    ensure(code == 0, || format!("table exited with {code}"))?;
    let table = &v["tables"][0];
    let columns: Vec<&str> =
        table["columns"].as_array().ok_or("no columns")?.iter().filter_map(Value::as_str).collect();
    let col = |name: &str| columns.iter().position(|c| *c == name).ok_or(format!("missing column {name}"));
    let rows = table["rows"].as_array().ok_or("no rows")?;
    ensure(rows.len() == 24, || format!("{} rows", rows.len()))?;
    let symbol = |cell: &Value| -> String {
        cell.get("exact")
            .and_then(Value::as_str)
            .or(cell.as_str())
            .map(String::from)
            .unwrap_or_else(|| cell.to_string())
    };
    let (cl, ch) = (col("label")?, col("H")?);
    let cq = [col("s")?, col("x")?, col("y")?, col("z")?];
    let cv = [col("so3_x")?, col("so3_y")?, col("so3_z")?];
    for (k, (label, q, hform, vec)) in expected_table().into_iter().enumerate() {
        for (sign, row) in [(1, &rows[2 * k]), (-1, &rows[2 * k + 1])] {
            let want_label = format!("{}{label}", if sign > 0 { '+' } else { '-' });
            ensure(symbol(&row[cl]) == want_label, || format!("row {}: label {}", 2 * k, symbol(&row[cl])))?;
            let want_h = if sign > 0 { hform.to_string() } else { negate_h(hform) };
            ensure(symbol(&row[ch]) == want_h, || format!("{want_label}: H {} vs {want_h}", symbol(&row[ch])))?;
            for i in 0..4 {
                let want = if sign > 0 { q[i].to_string() } else { negate_symbol(q[i]) };
                ensure(symbol(&row[cq[i]]) == want, || {
                    format!("{want_label}: S3 coordinate {i} is {}", symbol(&row[cq[i]]))
                })?;
            }
            for i in 0..3 {
                ensure(symbol(&row[cv[i]]) == so3_symbol(vec[i]), || {
                    format!("{want_label}: SO(3) coordinate {i} is {}", symbol(&row[cv[i]]))
                })?;
            }
        }
    }
    ensure(v["verdicts"]["pauli_reconstruction"] == Value::Bool(true), || {
        "Pauli expansion does not reconstruct".into()
    })?;
    let err = v["values"]["max_reconstruction_error"].as_f64().unwrap_or(f64::NAN);
    ensure(err <= 1e-12, || format!("reconstruction error {err:e}"))?;
    Ok(format!("24 rows exact, reconstruction error {err:e}"))
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("1-design identity", criterion_1),
        ("2-design identity", criterion_2),
        ("frame potentials", criterion_3),
        ("Choi ranks", criterion_4),
        ("covering map", criterion_5),
        ("Bell machinery", criterion_6),
        ("completion of random frames", criterion_7),
        ("named designs", criterion_8),
        ("group and geometry", criterion_9),
        ("Monte-Carlo cross-check", criterion_10),
        ("quaternion table", criterion_11),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        match result {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
