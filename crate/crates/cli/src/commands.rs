//! One function per verb; each returns the JSON report and the verdict.

use std::path::Path;

use qframe_core::frames::{
    douglas_check, interchange_check, interchange_residual, k_minimal_check, k_orthonormal_check, k_orthonormal_dual,
    kdual_canonical, kdual_residual, kdual_verify as verify_dual, kframe_check,
};
use qframe_core::harness::{
    gen_certified_super, gen_kframe_instance, gen_low_rank_frame, gen_outside_range, run_suite, GenConfig, QRng,
};
use qframe_core::json::{self, OperatorFile};
use qframe_core::superspace::{
    component_kframes, minimality_kills_operator, necessary_range_condition, oplus_op, orthogonal_ranges_sufficient,
    super_bessel_equivalence, super_dual_combine, super_dual_split, super_frame_operator_decomposition,
    super_kframe_necessary, super_minimal_check,
};
use qframe_core::{Error, FrameSystem, QMatrix, SuperFrame};
use serde_json::{json, Value};

use crate::{CliError, Outcome};

const FRAME_ANCHOR: &str = "A‖u‖² ≤ Σ|⟨u_i,u⟩|² ≤ B‖u‖² for all u";
const KFRAME_ANCHOR: &str = "A‖K*u‖² ≤ Σ|⟨u_i,u⟩|² ≤ B‖u‖² ⇔ R(K) ⊆ R(T) ⇔ K = TX";
const DOUGLAS_ANCHOR: &str = "R(L) ⊆ R(M) ⇔ LL* ≤ c·MM* ⇔ L = MX";
const KDUAL_ANCHOR: &str = "Ku = Σ u_i⟨v_i,u⟩ for all u, with v_i = X*e_i and K = TX";
const MINIMAL_ANCHOR: &str = "a K-frame with injective T has a unique K-dual frame";
const KONB_ANCHOR: &str = "the unique K-dual of a K-orthonormal basis {u_i} is exactly {K*u_i}";
const SUPER_ANCHOR: &str = "A‖K*(u⊕v)‖² ≤ Σ|⟨u_i⊕v_i,u⊕v⟩|² ≤ B‖u⊕v‖² on H₁⊕H₂";
const SUPER_DUAL_ANCHOR: &str = "{a_i⊕b_i} is a K1⊕K2-dual of {u_i⊕v_i} ⇔ T2θ_a = 0 and T1θ_b = 0";

type Res = Result<Outcome, CliError>;

fn with_meta(mut report: Value, tol: f64, anchor: &str) -> Value {
    if let Value::Object(map) = &mut report {
        map.insert("tol".into(), json!(tol));
        map.insert("anchor".into(), json!(anchor));
    }
    report
}

fn operator(path: &Path) -> Result<QMatrix, CliError> {
    Ok(json::load_operator(path)?.combined())
}

fn blocks(path: &Path) -> Result<(QMatrix, QMatrix), CliError> {
    match json::load_operator(path)? {
        OperatorFile::Blocks { k1, k2 } => Ok((k1, k2)),
        OperatorFile::Full(_) => {
            Err(CliError::Usage(format!("{}: expected {{\"K1\", \"K2\"}} blocks", path.display())))
        }
    }
}

/// A frame file, or the `"dual"` member of a report that carries one.
fn dual_file<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let mut v = json::load_value(path)?;
    let v = match v.get_mut("dual") {
        Some(inner) => inner.take(),
        None => v,
    };
    Ok(json::decode(path, v)?)
}

fn super_frame(frame: &Path, frame2: Option<&Path>) -> Result<SuperFrame, CliError> {
    match frame2 {
        Some(right) => Ok(SuperFrame::new(json::load_frame(frame)?, json::load_frame(right)?)?),
        None => Ok(json::load_super_frame(frame)?),
    }
}

pub fn bounds(frame: &Path, tol: f64) -> Res {
    let f = json::load_frame(frame)?;
    let b = f.bounds();
    let is_frame = b.is_frame(tol);
    let report = json!({
        "A": b.lower,
        "B": b.upper,
        "frame": is_frame,
        "parseval": b.is_parseval(tol),
        "dim": f.dim(),
        "len": f.len(),
    });
    Ok(Outcome::new(&with_meta(report, tol, FRAME_ANCHOR), is_frame))
}

pub fn check_kframe(frame: &Path, op: &Path, tol: f64) -> Res {
    let f = json::load_frame(frame)?;
    let k = operator(op)?;
    let r = kframe_check(&f, &k, tol)?;
    let holds = r.is_kframe;
    Ok(Outcome::new(&with_meta(to_value(&r), tol, KFRAME_ANCHOR), holds))
}

pub fn douglas(l: &Path, m: &Path, tol: f64) -> Res {
    let r = douglas_check(&operator(l)?, &operator(m)?, tol)?;
    let holds = r.holds;
    let mut report = to_value(&r);
    report["consistent"] = json!(r.consistent());
    Ok(Outcome::new(&with_meta(report, tol, DOUGLAS_ANCHOR), holds))
}

fn not_kframe(range_residual: f64, tol: f64, anchor: &str) -> Outcome {
    let report = json!({ "is_kframe": false, "range_residual": range_residual });
    Outcome::new(&with_meta(report, tol, anchor), false)
}

pub fn kdual(frame: &Path, op: &Path, tol: f64) -> Res {
    let f = json::load_frame(frame)?;
    let k = operator(op)?;
    let d = match kdual_canonical(&f, &k, tol) {
        Ok(d) => d,
        Err(Error::NotAKFrame { range_residual }) => return Ok(not_kframe(range_residual, tol, KDUAL_ANCHOR)),
        Err(e) => return Err(e.into()),
    };
    let residual = kdual_residual(&f, &d, &k)?;
    let threshold = tol * (1.0 + k.op_norm());
    let report = json!({
        "is_kframe": true,
        "dual": d,
        "residual": residual,
        "threshold": threshold,
    });
    Ok(Outcome::new(&with_meta(report, tol, KDUAL_ANCHOR), residual <= threshold))
}

pub fn kdual_verify(frame: &Path, dual: &Path, op: &Path, tol: f64) -> Res {
    let f = json::load_frame(frame)?;
    let d: FrameSystem = dual_file(dual)?;
    let k = operator(op)?;
    let holds = verify_dual(&f, &d, &k, tol)?;
    let report = json!({
        "holds": holds,
        "residual": kdual_residual(&f, &d, &k)?,
        "threshold": tol * (1.0 + k.op_norm()),
        "interchangeable": interchange_check(&f, &d, &k, tol)?,
        "interchange_residual": interchange_residual(&f, &d, &k)?,
        "self_adjoint_defect": k.try_sub(&k.adjoint())?.op_norm(),
    });
    Ok(Outcome::new(&with_meta(report, tol, KDUAL_ANCHOR), holds))
}

pub fn minimal(frame: &Path, op: &Path, tol: f64) -> Res {
    let f = json::load_frame(frame)?;
    let k = operator(op)?;
    match k_minimal_check(&f, &k, tol) {
        Ok(r) => {
            let holds = r.minimal;
            Ok(Outcome::new(&with_meta(to_value(&r), tol, MINIMAL_ANCHOR), holds))
        }
        Err(Error::NotAKFrame { range_residual }) => Ok(not_kframe(range_residual, tol, MINIMAL_ANCHOR)),
        Err(e) => Err(e.into()),
    }
}

pub fn konb(frame: &Path, op: &Path, tol: f64) -> Res {
    let f = json::load_frame(frame)?;
    let k = operator(op)?;
    let holds = k_orthonormal_check(&f, &k, tol)?;
    let dual = if holds { Some(k_orthonormal_dual(&f, &k, tol)?) } else { None };
    let report = json!({ "k_orthonormal": holds, "dual": dual });
    Ok(Outcome::new(&with_meta(report, tol, KONB_ANCHOR), holds))
}

pub fn super_check(frame: &Path, frame2: Option<&Path>, op: &Path, tol: f64) -> Res {
    let sf = super_frame(frame, frame2)?;
    let (n1, n2) = sf.dims();
    let mut report = json!({
        "dims": [n1, n2],
        "bessel": super_bessel_equivalence(&sf),
        "decomposition_residual": super_frame_operator_decomposition(&sf),
    });
    let file = json::load_operator(op)?;
    let k = file.combined();
    let mut combined = kframe_check(sf.combined(), &k, tol)?;
    combined.factor = None;
    let mut consistent = true;

    match &file {
        OperatorFile::Blocks { k1, k2 } => {
            let (mut left, mut right) = component_kframes(&sf, k1, k2, tol)?;
            if combined.is_kframe {
                let range = necessary_range_condition(&sf, k1, k2, tol)?;
                consistent &= range.cond1 && range.cond2;
                report["range_condition"] = to_value(&range);
                report["minimality"] = match minimality_kills_operator(&sf, k1, k2, tol) {
                    Ok(d) => to_value(&d),
                    Err(Error::AssertionFailure { what, norm }) => {
                        consistent = false;
                        json!({ "violation": what, "norm": norm })
                    }
                    Err(e) => return Err(e.into()),
                };
                report["super_minimal"] = to_value(&super_minimal_check(&sf, &k, tol)?);
            }
            if left.is_kframe && right.is_kframe {
                let o = orthogonal_ranges_sufficient(sf.left(), k1, sf.right(), k2, tol)?;
                consistent &= !o.applies || (o.certified && o.bound_verified);
                report["orthogonal_ranges"] = json!({
                    "applies": o.applies,
                    "cross_residuals": [o.cross_residuals.0, o.cross_residuals.1],
                    "scale": o.scale,
                    "lower_bound": o.lower_bound,
                    "certified": o.certified,
                    "bound_verified": o.bound_verified,
                });
            }
            left.factor = None;
            right.factor = None;
            report["left"] = to_value(&left);
            report["right"] = to_value(&right);
        }
        OperatorFile::Full(_) => {
            if let (true, Some(a)) = (combined.is_kframe, combined.lower_bound) {
                let nec = super_kframe_necessary(&sf, &k, a, combined.bessel_bound, tol)?;
                consistent &= nec.holds;
                report["components"] = to_value(&nec);
            }
        }
    }
    let holds = combined.is_kframe && consistent;
    report["is_kframe"] = json!(combined.is_kframe);
    report["consistent"] = json!(consistent);
    report["combined"] = to_value(&combined);
    Ok(Outcome::new(&with_meta(report, tol, SUPER_ANCHOR), holds))
}

pub fn super_dual(frame: &Path, frame2: Option<&Path>, dual: Option<&Path>, op: &Path, tol: f64) -> Res {
    let sf = super_frame(frame, frame2)?;
    let (k1, k2) = blocks(op)?;
    let k = oplus_op(&k1, &k2);
    let (n1, _) = sf.dims();
    let (sd, computed) = match dual {
        Some(path) => (dual_file::<SuperFrame>(path)?, false),
        None => match kdual_canonical(sf.combined(), &k, tol) {
            Ok(d) => (SuperFrame::from_combined(&d, n1)?, true),
            Err(Error::NotAKFrame { range_residual }) => return Ok(not_kframe(range_residual, tol, SUPER_DUAL_ANCHOR)),
            Err(e) => return Err(e.into()),
        },
    };
    let residual = kdual_residual(sf.combined(), sd.combined(), &k)?;
    let holds = verify_dual(sf.combined(), sd.combined(), &k, tol)?;
    let mut report = json!({
        "holds": holds,
        "residual": residual,
        "threshold": tol * (1.0 + k.op_norm()),
        "left_residual": kdual_residual(sf.left(), sd.left(), &k1)?,
        "right_residual": kdual_residual(sf.right(), sd.right(), &k2)?,
    });
    if holds {
        let (left, right) = super_dual_split(&sf, &sd, &k1, &k2, tol)?;
        report["split"] = json!({ "left": left, "right": right });
    }
    let left_ok = verify_dual(sf.left(), sd.left(), &k1, tol)?;
    let right_ok = verify_dual(sf.right(), sd.right(), &k2, tol)?;
    if left_ok && right_ok {
        let c = super_dual_combine(sf.left(), sd.left(), &k1, sf.right(), sd.right(), &k2, tol)?;
        report["combine"] = to_value(&c);
    }
    if computed {
        report["dual"] = to_value(&sd);
    }
    Ok(Outcome::new(&with_meta(report, tol, SUPER_DUAL_ANCHOR), holds))
}

pub fn verify_all(seed: u64, trials: usize, tol: f64) -> Res {
    let cfg = GenConfig { seed, trials, tol, ..GenConfig::default() };
    let report = run_suite(&cfg)?;
    Ok(Outcome::new(&report, report.overall))
}

pub fn gen(seed: u64, dir: &Path) -> Res {
    std::fs::create_dir_all(dir).map_err(|source| CliError::Write { path: dir.into(), source })?;
    let cfg = GenConfig { seed, ..GenConfig::default() };
    let mut rng = QRng::new(seed);
    let (frame, k) = gen_kframe_instance(&mut rng, &cfg);
    let dual = kdual_canonical(&frame, &k, cfg.tol)?;
    let low = gen_low_rank_frame(&mut rng, cfg.n1, cfg.m, cfg.n1 / 2);
    let outside = gen_outside_range(&mut rng, low.synthesis());
    let (sf, k1, k2) = gen_certified_super(&mut rng, &cfg);
    let sd = SuperFrame::from_combined(&kdual_canonical(sf.combined(), &oplus_op(&k1, &k2), cfg.tol)?, cfg.n1)?;

    let files: Vec<(&str, String)> = vec![
        ("frame.json", render(&frame)),
        ("op.json", render(&k)),
        ("synthesis.json", render(frame.synthesis())),
        ("dual.json", render(&dual)),
        ("lowrank_frame.json", render(&low)),
        ("op_outside.json", render(&outside)),
        ("super.json", render(&sf)),
        ("super_op.json", render(&OperatorFile::Blocks { k1, k2 })),
        ("super_dual.json", render(&sd)),
    ];
    for (name, text) in &files {
        let path = dir.join(name);
        std::fs::write(&path, text).map_err(|source| CliError::Write { path, source })?;
    }
    let names: Vec<&str> = files.iter().map(|(n, _)| *n).collect();
    let report = json!({ "seed": seed, "dir": dir.display().to_string(), "files": names });
    Ok(Outcome::new(&report, true))
}

fn render<T: serde::Serialize + ?Sized>(v: &T) -> String {
    json::to_string(v).expect("inputs serialize") + "\n"
}

fn to_value<T: serde::Serialize + ?Sized>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}
