//! Suite entries: one randomized oracle per statement.

use super::generators::*;
use super::rng::QRng;
use super::{EntryKind, EntryReport, GenConfig};
use crate::error::{Error, Result};
use crate::frames::*;
use crate::linalg::*;
use crate::quaternion::Quaternion;
use crate::superspace::*;

pub(super) struct Trial {
    pass: bool,
    residual: f64,
    note: Option<String>,
}

impl Trial {
    fn new(pass: bool, residual: f64, note: impl FnOnce() -> String) -> Self {
        let pass = pass && !residual.is_nan();
        Self { pass, residual, note: (!pass).then(note) }
    }

    /// Property trial: `residual ≤ limit` and `ok`.
    fn within(ok: bool, residual: f64, limit: f64, what: &str) -> Self {
        Self::new(ok && residual <= limit, residual, || {
            format!("{what}: residual {residual:e} (limit {limit:e}), flags ok = {ok}")
        })
    }

    /// Negative-control trial: `statistic ≥ floor` and `ok`.
    fn detects(ok: bool, statistic: f64, floor: f64, what: &str) -> Self {
        Self::new(ok && statistic >= floor, statistic, || {
            format!("{what}: statistic {statistic:e} (floor {floor:e}), flags ok = {ok}")
        })
    }
}

pub(super) struct Ctx<'a> {
    rng: QRng,
    cfg: &'a GenConfig,
    trial: u32,
    corrupt: bool,
}

pub(super) struct Entry {
    pub id: &'static str,
    pub anchor: &'static str,
    pub kind: EntryKind,
    run: fn(&mut Ctx) -> Result<Trial>,
}

const fn property(id: &'static str, anchor: &'static str, run: fn(&mut Ctx) -> Result<Trial>) -> Entry {
    Entry { id, anchor, kind: EntryKind::Property, run }
}

const fn negative(id: &'static str, anchor: &'static str, run: fn(&mut Ctx) -> Result<Trial>) -> Entry {
    Entry { id, anchor, kind: EntryKind::NegativeControl, run }
}

pub(super) const ENTRIES: &[Entry] = &[
    property("quaternion-algebra", "i² = j² = k² = ijk = −1, |pq| = |p||q|", quaternion_algebra),
    property("cauchy-schwarz", "|⟨u,v⟩| ≤ ‖u‖‖v‖", cauchy_schwarz),
    property("orthonormal-parseval", "‖u‖² = Σ |⟨z|u⟩|²", orthonormal_parseval),
    property("double-complement", "(A^⊥)^⊥ = ⟨A⟩̄", double_complement),
    property("douglas-constructive", "R(L) ⊂ R(M) ⇔ LL* ≤ MM*c ⇔ L = MX", douglas_constructive),
    negative("douglas-adversarial", "R(L) ⊄ R(M): LL* ≤ MM*c and L = MX both fail", douglas_adversarial),
    property("kframe-characterization", "R(K) ⊂ R(T) ⇔ KK*c ≤ S ⇔ K = TX", kframe_characterization),
    negative("kframe-outside-range", "R(K) ⊄ R(T) ⇒ not a K-frame", kframe_outside_range),
    property("kdual-reconstruction", "Ku = Σ u_i⟨v_i,u⟩", kdual_reconstruction),
    property("kdual-adjoint", "K*u = Σ v_i⟨u_i,u⟩", kdual_adjoint),
    property("kdual-interchange", "interchangeable if and only if K is self-adjoint", kdual_interchange),
    property("operator-image", "{Ku_i} is a K-frame", operator_image),
    property("kdual-composition", "{X*v_i} is a KX-dual frame", kdual_composition),
    property("operator-bijection", "L ↦ {L*(v_i)}", operator_bijection),
    property("kdual-family", "card{K-duals} = card{X : K = TX}", kdual_family_entry),
    property("minimal-uniqueness", "K-minimal ⇔ unique K-dual frame", minimal_uniqueness),
    property("k-orthonormal-dual", "the unique K-dual of a K-orthonormal basis is {K*u_i}", k_orthonormal_entry),
    property("super-projections", "R(P1) = H1 ⊕ 0, R(P2) = 0 ⊕ H2", super_projections),
    property("super-adjoint", "(K1 ⊕ K2)* = K1* ⊕ K2*", super_adjoint),
    property("super-bessel", "{u_i ⊕ v_i} Bessel ⇔ {u_i}, {v_i} Bessel, B = 2 max{B1, B2}", super_bessel),
    property("super-operators", "T(a) = T1(a) ⊕ T2(a), S = S1 + T1θ2 ⊕ S2 + T2θ1", super_operators),
    property("super-component-bounds", "A‖K*_1(u)‖² ≤ Σ |⟨u_i,u⟩|² ≤ B‖u‖²", super_component_bounds),
    property(
        "super-component-kframes",
        "{u_i} is a K1-frame for H1 and {v_i} a K2-frame for H2",
        super_component_kframes,
    ),
    property("super-existence", "there exist a K1-frame for H1 and a K2-frame for H2", super_existence),
    negative("super-duplicate", "{u_i ⊕ u_i} is a K1⊕K2-frame only if K1 = K2 = 0", super_duplicate),
    property("super-orthogonal-ranges", "R(θ1) ⊥ R(θ2) ⇒ K1⊕K2-frame with A = min{A1, A2}", super_orthogonal_ranges),
    property("super-range-condition", "R(K1) ⊂ T1(N(T2)), R(K2) ⊂ T2(N(T1))", super_range_condition),
    property("super-minimal-component", "{u_i} K1-minimal ⇒ K2 = 0", super_minimal_component),
    property("super-minimal", "{u_i ⊕ v_i} minimal ⇔ N(T1) ∩ N(T2) = {0}", super_minimal_entry),
    property("super-minimal-sufficiency", "R(θ1)‾ = R(θ2)^⊥ ⇒ minimal K1⊕K2-frame", super_minimal_sufficiency),
    property("super-dual-split", "{a_i ⊕ b_i} K1⊕K2-dual ⇒ {a_i} K1-dual, {b_i} K2-dual", super_dual_split_entry),
    property("super-dual-combine", "T2θ1 = 0 and T1θ2 = 0 ⇔ {a_i ⊕ b_i} is a K1⊕K2-dual", super_dual_combine_entry),
    negative("super-dual-overlap", "T2θ1 ≠ 0 ⇒ {a_i ⊕ b_i} is not a K1⊕K2-dual", super_dual_overlap),
    negative("kdual-perturbed", "perturbed K-dual fails Ku = Σ u_i⟨v_i,u⟩", kdual_perturbed),
];

pub fn entry_ids() -> Vec<&'static str> {
    ENTRIES.iter().map(|e| e.id).collect()
}

pub(super) fn run_trial(entry: &Entry, cfg: &GenConfig, idx: u32, trial: u32, corrupt: bool) -> Trial {
    let mut ctx = Ctx { rng: QRng::for_trial(cfg.seed, idx, trial), cfg, trial, corrupt };
    match (entry.run)(&mut ctx) {
        Ok(t) => t,
        Err(e) => Trial {
            pass: false,
            residual: match entry.kind {
                EntryKind::Property => f64::INFINITY,
                EntryKind::NegativeControl => 0.0,
            },
            note: Some(format!("error: {e}")),
        },
    }
}

pub(super) fn reduce(entry: &Entry, trials: &[Trial]) -> EntryReport {
    let residuals = trials.iter().map(|t| if t.residual.is_nan() { f64::INFINITY } else { t.residual });
    let worst_residual = match entry.kind {
        EntryKind::Property => residuals.fold(0.0, f64::max),
        EntryKind::NegativeControl => residuals.fold(f64::INFINITY, f64::min),
    };
    let witness = trials
        .iter()
        .enumerate()
        .find(|(_, t)| !t.pass)
        .map(|(i, t)| format!("trial {i}: {}", t.note.as_deref().unwrap_or("failed")));
    EntryReport {
        id: entry.id.into(),
        anchor: entry.anchor.into(),
        kind: entry.kind,
        trials: trials.len(),
        passes: trials.iter().filter(|t| t.pass).count(),
        worst_residual,
        witness,
    }
}

fn rank_deficient(ctx: &mut Ctx, n: usize, m: usize) -> FrameSystem {
    let r = if n > 1 { ctx.rng.range(1, n - 1) } else { 0 };
    gen_low_rank_frame(&mut ctx.rng, n, m, r)
}

fn op_scale(k: &QMatrix) -> f64 {
    1.0 + k.op_norm()
}

fn quaternion_algebra(ctx: &mut Ctx) -> Result<Trial> {
    use Quaternion as Q;
    let m1 = -Q::ONE;
    let table = Q::I * Q::I == m1
        && Q::J * Q::J == m1
        && Q::K * Q::K == m1
        && Q::I * Q::J * Q::K == m1
        && Q::I * Q::J == Q::K
        && Q::J * Q::K == Q::I
        && Q::K * Q::I == Q::J
        && Q::J * Q::I == -Q::K
        && Q::K * Q::J == -Q::I
        && Q::I * Q::K == -Q::J;
    let mut worst = 0.0_f64;
    for _ in 0..10 {
        let (p, q, r) = (gen_quaternion(&mut ctx.rng), gen_quaternion(&mut ctx.rng), gen_quaternion(&mut ctx.rng));
        let pq = p.abs() * q.abs();
        worst = worst.max(((p * q).abs() - pq).abs() / pq);
        worst = worst.max(((p * q) * r).max_abs_diff(p * (q * r)) / (pq * r.abs()));
        worst = worst.max((p * q).conj().max_abs_diff(q.conj() * p.conj()) / pq);
    }
    Ok(Trial::within(table, worst, 1e-13, "multiplicativity/associativity"))
}

fn cauchy_schwarz(ctx: &mut Ctx) -> Result<Trial> {
    let n = ctx.cfg.n1;
    let u = gen_vector(&mut ctx.rng, n);
    let v = gen_vector(&mut ctx.rng, n);
    let q = gen_quaternion(&mut ctx.rng);
    let bound = u.norm() * v.norm();
    let excess = (inner(&u, &v)?.abs() - bound) / bound;
    // equality for parallel vectors
    let w = u.right_mul(q);
    let equality = (inner(&u, &w)?.abs() - u.norm() * w.norm()).abs() / (u.norm() * w.norm());
    Ok(Trial::within(true, excess.max(0.0).max(equality), 1e-12, "Cauchy–Schwarz"))
}

fn orthonormal_parseval(ctx: &mut Ctx) -> Result<Trial> {
    let (n, m) = (ctx.cfg.n1, ctx.cfg.m.max(ctx.cfg.n1));
    let vs: Vec<QVector> = (0..m).map(|_| gen_vector(&mut ctx.rng, n)).collect();
    let z = gram_schmidt(&vs);
    let u = gen_vector(&mut ctx.rng, n);
    let energy: f64 = z.iter().map(|zk| inner(zk, &u).map(|c| c.norm_sqr())).sum::<Result<f64>>()?;
    let zm = QMatrix::from_columns(n, &z)?;
    let ortho = (&zm.adjoint() * &zm).max_abs_diff(&QMatrix::identity(z.len()));
    let residual = ((u.norm_sqr() - energy).abs() / u.norm_sqr()).max(ortho);
    Ok(Trial::within(z.len() == n, residual, 1e-10, "Parseval identity"))
}

fn double_complement(ctx: &mut Ctx) -> Result<Trial> {
    let n = ctx.cfg.n1;
    let r = ctx.rng.range(0, n);
    let a: Vec<QVector> = (0..r).map(|_| gen_vector(&mut ctx.rng, n)).collect();
    let perp = orth_complement(&a, n)?;
    let back = orth_complement(&perp, n)?;
    let span = gram_schmidt(&a);
    let orth =
        perp.iter().flat_map(|p| a.iter().map(move |x| (p, x))).map(|(p, x)| inner(p, x).map(|c| c.abs() / x.norm()));
    let mut worst = span_distance(n, &span, &back);
    for c in orth {
        worst = worst.max(c?);
    }
    Ok(Trial::within(back.len() == r && perp.len() == n - r, worst, 1e-9, "double complement"))
}

fn douglas_constructive(ctx: &mut Ctx) -> Result<Trial> {
    let (n, m) = (ctx.cfg.n1, ctx.cfg.m);
    let t = rank_deficient(ctx, n, m);
    let x0 = gen_matrix(&mut ctx.rng, m, n);
    let l = t.synthesis() * &x0;
    let d = douglas_check(&l, t.synthesis(), 1e-9)?;
    let residual = d.range_residual.max(d.basis_residual).max(d.factor_residual);
    Ok(Trial::within(
        d.holds && d.range_included && d.factorizes && d.majorized,
        residual,
        1e-9,
        "constructive Douglas",
    ))
}

fn douglas_adversarial(ctx: &mut Ctx) -> Result<Trial> {
    let (n, m) = (ctx.cfg.n1, ctx.cfg.m);
    let t = rank_deficient(ctx, n, m);
    let l = gen_outside_range(&mut ctx.rng, t.synthesis());
    let d = douglas_check(&l, t.synthesis(), 1e-9)?;
    let ok = !d.holds && !d.range_included && !d.factorizes && !d.majorized;
    let stat = d.range_residual.min(d.basis_residual).min(d.factor_residual);
    Ok(Trial::detects(ok, stat, 0.1, "adversarial Douglas"))
}

fn kframe_characterization(ctx: &mut Ctx) -> Result<Trial> {
    let (n, m, tol) = (ctx.cfg.n1, ctx.cfg.m, ctx.cfg.tol);
    let positive = ctx.trial.is_multiple_of(2);
    let f = rank_deficient(ctx, n, m);
    let t = f.synthesis();
    let k = if positive { t * &gen_matrix(&mut ctx.rng, m, n) } else { gen_outside_range(&mut ctx.rng, t) };
    let r = kframe_check(&f, &k, tol)?;
    let d = douglas_check(&k, t, tol)?;
    // c = ‖T⁺K‖⁻² tested against S directly
    let x = &pinv(t, None) * &k;
    let a = x.op_norm().powi(-2);
    let kk = &k * &k.adjoint();
    let s = f.frame_operator();
    let psd = psd_geq(&kk.scale(a), s, 1e-8 * (1.0 + s.op_norm() + a * kk.op_norm()))?;
    let flags = [r.is_kframe, d.range_included, d.factorizes, psd];
    let agree = flags.iter().all(|&b| b == positive);
    if !positive {
        return Ok(Trial::within(agree, 0.0, 0.0, "negative instance flags"));
    }
    let bound_ok = r.bound_verified && r.lower_bound.is_some_and(|lb| (lb - a).abs() <= 1e-9 * a);
    let opt_ok = match (r.optimal_lower_bound, r.lower_bound) {
        (Some(o), Some(lb)) => o >= lb - 1e-6,
        _ => false,
    };
    Ok(Trial::within(agree && bound_ok && opt_ok, r.range_residual, tol, "positive instance"))
}

fn kframe_outside_range(ctx: &mut Ctx) -> Result<Trial> {
    let (n, m) = (ctx.cfg.n1, ctx.cfg.m);
    let f = rank_deficient(ctx, n, m);
    let k = gen_matrix(&mut ctx.rng, n, n);
    let r = kframe_check(&f, &k, ctx.cfg.tol)?;
    Ok(Trial::detects(!r.is_kframe, r.range_residual, 1e-4, "random K"))
}

fn explicit_sum(a: &FrameSystem, b: &FrameSystem, u: &QVector) -> Result<QVector> {
    let mut sum = QVector::zeros(a.dim());
    for (ai, bi) in a.vectors().iter().zip(b.vectors()) {
        sum.axpy(ai, inner(bi, u)?);
    }
    Ok(sum)
}

fn perturb(d: &FrameSystem) -> Result<FrameSystem> {
    let mut vs = d.vectors().to_vec();
    vs[0][0] += Quaternion::new(1e-3, 0.0, 0.0, 0.0);
    FrameSystem::new(d.dim(), vs)
}

fn kdual_reconstruction(ctx: &mut Ctx) -> Result<Trial> {
    let (f, k) = gen_kframe_instance(&mut ctx.rng, ctx.cfg);
    let mut d = kdual_canonical(&f, &k, ctx.cfg.tol)?;
    if ctx.corrupt {
        d = perturb(&d)?;
    }
    let mut worst = 0.0_f64;
    for _ in 0..5 {
        let u = gen_vector(&mut ctx.rng, f.dim());
        let diff = &(&k * &u) - &explicit_sum(&f, &d, &u)?;
        worst = worst.max(diff.norm() / (k.op_norm() * u.norm()));
    }
    Ok(Trial::within(true, worst, 1e-9, "reconstruction"))
}

fn kdual_adjoint(ctx: &mut Ctx) -> Result<Trial> {
    let (f, k) = gen_kframe_instance(&mut ctx.rng, ctx.cfg);
    let d = kdual_canonical(&f, &k, ctx.cfg.tol)?;
    let mut worst = 0.0_f64;
    for _ in 0..5 {
        let u = gen_vector(&mut ctx.rng, f.dim());
        let diff = &(&k.adjoint() * &u) - &explicit_sum(&d, &f, &u)?;
        worst = worst.max(diff.norm() / (k.op_norm() * u.norm()));
    }
    Ok(Trial::within(true, worst, 1e-9, "adjoint reconstruction"))
}

fn kdual_interchange(ctx: &mut Ctx) -> Result<Trial> {
    let (n, m, tol) = (ctx.cfg.n1, ctx.cfg.m.max(ctx.cfg.n1), ctx.cfg.tol);
    let f = gen_frame(&mut ctx.rng, n, m);
    let herm = gen_hermitian(&mut ctx.rng, n);
    let general = gen_matrix(&mut ctx.rng, n, n);
    let dh = kdual_canonical(&f, &herm, tol)?;
    let dg = kdual_canonical(&f, &general, tol)?;
    let h_res = interchange_residual(&f, &dh, &herm)? / op_scale(&herm);
    let g_ok = !interchange_check(&f, &dg, &general, tol)?;
    let asym = general.try_sub(&general.adjoint())?.op_norm();
    Ok(Trial::within(g_ok && asym > 1e-10 && interchange_check(&f, &dh, &herm, tol)?, h_res, tol, "interchange"))
}

fn operator_image(ctx: &mut Ctx) -> Result<Trial> {
    let (n, m, tol) = (ctx.cfg.n1, ctx.cfg.m.max(ctx.cfg.n1), ctx.cfg.tol);
    let f = gen_frame(&mut ctx.rng, n, m);
    let k = gen_matrix(&mut ctx.rng, n, n);
    let g = apply_operator(&f, &k, tol)?;
    let direct = (0..m).map(|i| (&(&k * &f.vectors()[i]) - &g.vectors()[i]).norm()).fold(0.0, f64::max);
    let r = kframe_check(&g, &k, tol)?;
    Ok(Trial::within(r.is_kframe && r.bound_verified && direct == 0.0, r.range_residual, tol, "image system"))
}

fn kdual_composition(ctx: &mut Ctx) -> Result<Trial> {
    let tol = ctx.cfg.tol;
    let (f, k) = gen_kframe_instance(&mut ctx.rng, ctx.cfg);
    let d = kdual_canonical(&f, &k, tol)?;
    let g = gen_matrix(&mut ctx.rng, f.dim(), f.dim());
    let ga = g.adjoint();
    let composed = FrameSystem::new(f.dim(), d.vectors().iter().map(|v| &ga * v).collect())?;
    let kg = &k * &g;
    let residual = kdual_residual(&f, &composed, &kg)? / op_scale(&kg);
    Ok(Trial::within(kframe_check(&f, &kg, tol)?.is_kframe, residual, tol, "composed dual"))
}

fn operator_bijection(ctx: &mut Ctx) -> Result<Trial> {
    let (n, m) = (ctx.cfg.n1, ctx.cfg.m);
    let l = gen_matrix(&mut ctx.rng, m, n);
    let f = bessel_from_operator(&l)?;
    let exact = f.analysis() == l && bessel_from_operator(&f.analysis())? == f;
    let g = gen_frame(&mut ctx.rng, n, m);
    let round = bessel_from_operator(&g.analysis())? == g;
    Ok(Trial::within(exact && round, 0.0, 0.0, "operator bijection"))
}

fn kdual_family_entry(ctx: &mut Ctx) -> Result<Trial> {
    let tol = ctx.cfg.tol;
    let (f, k) = gen_kframe_instance(&mut ctx.rng, ctx.cfg);
    let canonical = kdual_canonical(&f, &k, tol)?;
    let injective = rank(f.synthesis(), None) == f.len();
    let mut worst = 0.0_f64;
    let mut distinct = true;
    for _ in 0..10 {
        let w = gen_matrix(&mut ctx.rng, f.len(), f.dim());
        let d = kdual_family(&f, &k, &w, tol)?;
        worst = worst.max(kdual_residual(&f, &d, &k)? / op_scale(&k));
        let dist = max_vector_distance(&d, &canonical);
        distinct &= if injective { dist <= 1e-10 } else { dist > 1e-6 };
    }
    Ok(Trial::within(distinct, worst, 1e-9, "family duals"))
}

fn minimal_uniqueness(ctx: &mut Ctx) -> Result<Trial> {
    let (n, tol) = (ctx.cfg.n1, ctx.cfg.tol);
    // injective: n vectors in ℍⁿ
    let f = gen_frame(&mut ctx.rng, n, n);
    let k = gen_matrix(&mut ctx.rng, n, n);
    let r = k_minimal_check(&f, &k, tol)?;
    let injective_ok = r.minimal && r.witnesses.is_none() && r.family_spread <= 1e-10;
    // deficient: more vectors than dimensions, K ≠ 0
    let m = ctx.cfg.m.max(n + 1);
    let g = gen_frame(&mut ctx.rng, n, m);
    let kd = g.synthesis() * &gen_matrix(&mut ctx.rng, m, n);
    let rd = k_minimal_check(&g, &kd, tol)?;
    let (ra, rb) = rd.witness_residuals.unwrap_or((f64::INFINITY, f64::INFINITY));
    let distinct = rd.witness_distance.is_some_and(|d| d >= 1e-3);
    let residual = (ra.max(rb) / op_scale(&kd)).max(r.family_spread);
    Ok(Trial::within(injective_ok && !rd.minimal && distinct, residual, 1e-9, "uniqueness"))
}

fn k_orthonormal_entry(ctx: &mut Ctx) -> Result<Trial> {
    let (n, tol) = (ctx.cfg.n1, ctx.cfg.tol);
    let r = ctx.rng.range(1, n);
    let z = gen_orthonormal(&mut ctx.rng, n, r);
    let f = FrameSystem::new(n, z.clone())?;
    let zm = f.synthesis();
    let k = &(zm * &zm.adjoint()) * &gen_unitary(&mut ctx.rng, n);
    let check = k_orthonormal_check(&f, &k, 1e-10)?;
    let dual = k_orthonormal_dual(&f, &k, 1e-10)?;
    let ka = k.adjoint();
    let expected = FrameSystem::new(n, z.iter().map(|u| &ka * u).collect())?;
    let canonical = kdual_canonical(&f, &k, tol)?;
    let residual = dual.max_abs_diff(&expected).max(dual.max_abs_diff(&canonical));
    let unique = k_minimal_check(&f, &k, tol)?.minimal;
    Ok(Trial::within(check && unique && kdual_verify(&f, &dual, &k, tol)?, residual, 1e-10, "K-orthonormal dual"))
}

fn super_projections(ctx: &mut Ctx) -> Result<Trial> {
    let (n1, n2) = (ctx.cfg.n1, ctx.cfg.n2);
    let (p1, p2) = projections(n1, n2);
    let exact = &p1 * &p1 == p1
        && &p2 * &p2 == p2
        && p1.adjoint() == p1
        && p2.adjoint() == p2
        && &p1 + &p2 == QMatrix::identity(n1 + n2)
        && &p1 * &p2 == QMatrix::zeros(n1 + n2, n1 + n2);
    let u = gen_vector(&mut ctx.rng, n1);
    let v = gen_vector(&mut ctx.rng, n2);
    let w = oplus(&u, &v);
    let images = &p1 * w.as_qvector() == *oplus(&u, &QVector::zeros(n2)).as_qvector()
        && &p2 * w.as_qvector() == *oplus(&QVector::zeros(n1), &v).as_qvector();
    Ok(Trial::within(exact && images, 0.0, 0.0, "projections"))
}

fn super_adjoint(ctx: &mut Ctx) -> Result<Trial> {
    let (n1, n2) = (ctx.cfg.n1, ctx.cfg.n2);
    let k1 = gen_matrix(&mut ctx.rng, n1, n1);
    let k2 = gen_matrix(&mut ctx.rng, n2, n2);
    let k = oplus_op(&k1, &k2);
    let u = gen_vector(&mut ctx.rng, n1);
    let v = gen_vector(&mut ctx.rng, n2);
    let exact = k.adjoint() == oplus_op(&k1.adjoint(), &k2.adjoint())
        && &k * oplus(&u, &v).as_qvector() == (&k1 * &u).concat(&(&k2 * &v));
    let u2 = gen_vector(&mut ctx.rng, n1);
    let v2 = gen_vector(&mut ctx.rng, n2);
    let additive = oplus(&u, &v).inner(&oplus(&u2, &v2))?.max_abs_diff(inner(&u, &u2)? + inner(&v, &v2)?);
    let norms = (oplus(&u, &v).norm_sqr() - u.norm_sqr() - v.norm_sqr()).abs() / (u.norm_sqr() + v.norm_sqr());
    Ok(Trial::within(exact, additive.max(norms) / (1.0 + u.norm_sqr() + v.norm_sqr()), 1e-13, "adjoint lemma"))
}

fn random_super(ctx: &mut Ctx) -> Result<SuperFrame> {
    let (n1, n2, m) = (ctx.cfg.n1, ctx.cfg.n2, ctx.cfg.m);
    let left = gen_frame(&mut ctx.rng, n1, m);
    let right = gen_frame(&mut ctx.rng, n2, m);
    SuperFrame::new(left, right)
}

fn super_bessel(ctx: &mut Ctx) -> Result<Trial> {
    let sf = random_super(ctx)?;
    let b = super_bessel_equivalence(&sf);
    let flags = b.combined_bessel && b.left_bessel && b.right_bessel && b.equivalent && b.within_sum_bound;
    // Rayleigh quotient of S at a random unit vector never exceeds B
    let w = gen_vector(&mut ctx.rng, sf.combined().dim());
    let ratio = sf.combined().energy(&w)? / w.norm_sqr();
    let excess = (ratio - b.combined_bound).max(0.0) / (1.0 + b.combined_bound);
    let over = (b.combined_bound - b.sum_bound).max(0.0);
    Ok(Trial::within(flags, excess.max(over), 1e-10, "Bessel equivalence"))
}

fn super_operators(ctx: &mut Ctx) -> Result<Trial> {
    let sf = random_super(ctx)?;
    let scale = 1.0 + sf.left().bounds().upper + sf.right().bounds().upper;
    let decomposition = super_frame_operator_decomposition(&sf) / scale;
    let a = gen_vector(&mut ctx.rng, sf.len());
    let ta = sf.combined().synthesize(&a)?;
    let split = sf.left().synthesize(&a)?.concat(&sf.right().synthesize(&a)?);
    let synth = (&ta - &split).norm() / (scale.sqrt() * a.norm());
    let (n1, n2) = sf.dims();
    let u = gen_vector(&mut ctx.rng, n1);
    let v = gen_vector(&mut ctx.rng, n2);
    let lhs = sf.combined().analyze(oplus(&u, &v).as_qvector())?;
    let rhs = &sf.left().analyze(&u)? + &sf.right().analyze(&v)?;
    let anal = (&lhs - &rhs).norm() / (scale.sqrt() * (u.norm_sqr() + v.norm_sqr()).sqrt());
    Ok(Trial::within(true, decomposition.max(synth).max(anal), 1e-10, "operator decomposition"))
}

fn super_component_bounds(ctx: &mut Ctx) -> Result<Trial> {
    let sf = random_super(ctx)?;
    let (n1, n2) = sf.dims();
    let k = sf.combined().synthesis() * &gen_matrix(&mut ctx.rng, sf.len(), n1 + n2);
    let r = kframe_check(sf.combined(), &k, ctx.cfg.tol)?;
    let a = r.lower_bound.ok_or_else(|| Error::CertificateInvalid("no lower bound".into()))?;
    let nec = super_kframe_necessary(&sf, &k, a, r.bessel_bound, 1e-8)?;
    Ok(Trial::within(r.is_kframe && nec.holds, nec.probe_violation, 1e-8, "component inequalities"))
}

fn super_component_kframes(ctx: &mut Ctx) -> Result<Trial> {
    let tol = ctx.cfg.tol;
    let (sf, k1, k2) = gen_certified_super(&mut ctx.rng, ctx.cfg);
    let combined = kframe_check(sf.combined(), &oplus_op(&k1, &k2), tol)?;
    let (l, r) = component_kframes(&sf, &k1, &k2, tol)?;
    let residual = l.range_residual.max(r.range_residual);
    Ok(Trial::within(combined.is_kframe && l.is_kframe && r.is_kframe, residual, tol, "component K-frames"))
}

fn super_existence(ctx: &mut Ctx) -> Result<Trial> {
    let (n1, n2, tol) = (ctx.cfg.n1, ctx.cfg.n2, ctx.cfg.tol);
    let m = ctx.cfg.m.max(n1 + n2);
    let frame = gen_frame(&mut ctx.rng, n1 + n2, m);
    let k1 = gen_matrix(&mut ctx.rng, n1, n1);
    let k2 = gen_matrix(&mut ctx.rng, n2, n2);
    let image = apply_operator(&frame, &oplus_op(&k1, &k2), tol)?;
    let sf = SuperFrame::from_combined(&image, n1)?;
    let (l, r) = component_kframes(&sf, &k1, &k2, tol)?;
    let residual = l.range_residual.max(r.range_residual);
    Ok(Trial::within(l.is_kframe && r.is_kframe, residual, tol, "existence"))
}

fn super_duplicate(ctx: &mut Ctx) -> Result<Trial> {
    let (n, m, tol) = (ctx.cfg.n1, ctx.cfg.m, ctx.cfg.tol);
    let f = gen_frame(&mut ctx.rng, n, m);
    let k1 = gen_matrix(&mut ctx.rng, n, n);
    let k2 = if ctx.rng.coin() { gen_matrix(&mut ctx.rng, n, n) } else { QMatrix::zeros(n, n) };
    let r = duplicate_obstruction(&f, &k1, &k2, tol)?;
    let zero = QMatrix::zeros(n, n);
    let trivial = duplicate_obstruction(&f, &zero, &zero, tol)?.is_superkframe;
    let joint = k1.hstack(&k2)?.op_norm();
    let b = f.bounds().upper;
    let witness_ok = r.witness.is_some() && r.witness_energy <= 1e-20 * (1.0 + b) * (1.0 + b);
    let stat = r.witness_image / joint;
    Ok(Trial::detects(!r.is_superkframe && witness_ok && trivial, stat, 0.5, "duplicate obstruction"))
}

fn certified_pair(ctx: &mut Ctx, fu: &FrameSystem, fv: &FrameSystem) -> (QMatrix, QMatrix) {
    let k1 = fu.synthesis() * &gen_matrix(&mut ctx.rng, fu.len(), fu.dim());
    let k2 = fv.synthesis() * &gen_matrix(&mut ctx.rng, fv.len(), fv.dim());
    (k1, k2)
}

fn super_orthogonal_ranges(ctx: &mut Ctx) -> Result<Trial> {
    let (n1, n2, m, tol) = (ctx.cfg.n1, ctx.cfg.n2, ctx.cfg.m, ctx.cfg.tol);
    let (fu, fv) = gen_disjoint_pair(&mut ctx.rng, n1, n2, m, m / 2);
    let (k1, k2) = certified_pair(ctx, &fu, &fv);
    let r = orthogonal_ranges_sufficient(&fu, &k1, &fv, &k2, tol)?;
    let k = oplus_op(&k1, &k2);
    let opt = optimal_lower_bound(r.frame.combined(), &k, tol)?;
    let bound_ok = r.lower_bound.is_some_and(|a| opt >= a - 1e-8);
    let residual = r.cross_residuals.0.max(r.cross_residuals.1) / r.scale;
    Ok(Trial::within(r.applies && r.certified && r.bound_verified && bound_ok, residual, tol, "orthogonal ranges"))
}

fn super_range_condition(ctx: &mut Ctx) -> Result<Trial> {
    let (sf, k1, k2) = gen_certified_super(&mut ctx.rng, ctx.cfg);
    let r = necessary_range_condition(&sf, &k1, &k2, 1e-8)?;
    Ok(Trial::within(r.cond1 && r.cond2, r.cond1_residual.max(r.cond2_residual), 1e-8, "range condition"))
}

fn super_minimal_component(ctx: &mut Ctx) -> Result<Trial> {
    let (n1, n2, tol) = (ctx.cfg.n1, ctx.cfg.n2, ctx.cfg.tol);
    let m = n1;
    let fu = gen_frame(&mut ctx.rng, n1, m);
    // a minimal right component would force K1 = 0 as well
    let r = ctx.rng.range(0, n2.min(m - 1));
    let fv = gen_low_rank_frame(&mut ctx.rng, n2, m, r);
    let k1 = &(fu.synthesis() * &null_projection(fv.synthesis())) * &gen_matrix(&mut ctx.rng, m, n1);
    let sf = SuperFrame::new(fu, fv)?;
    let d = minimality_kills_operator(&sf, &k1, &QMatrix::zeros(n2, n2), tol)?;
    let k2 = gen_matrix(&mut ctx.rng, n2, n2);
    let rejected = matches!(minimality_kills_operator(&sf, &k1, &k2, tol), Err(Error::CertificateInvalid(_)));
    Ok(Trial::within(d.left_minimal && rejected, d.k2_norm, 0.0, "minimal component"))
}

fn super_minimal_entry(ctx: &mut Ctx) -> Result<Trial> {
    let (n1, n2, m, tol) = (ctx.cfg.n1, ctx.cfg.n2, ctx.cfg.m, ctx.cfg.tol);
    let shared = ctx.trial % 2 == 1;
    let m = if shared { m } else { m.min(n1 + n2) };
    let mut t1 = gen_matrix(&mut ctx.rng, n1, m);
    let mut t2 = gen_matrix(&mut ctx.rng, n2, m);
    if shared {
        let x = gen_vector(&mut ctx.rng, m).normalized().expect("nonzero");
        let xm = QMatrix::from_columns(m, std::slice::from_ref(&x))?;
        let p = QMatrix::identity(m).try_sub(&(&xm * &xm.adjoint()))?;
        t1 = &t1 * &p;
        t2 = &t2 * &p;
    }
    let sf = SuperFrame::new(FrameSystem::from_synthesis(&t1)?, FrameSystem::from_synthesis(&t2)?)?;
    let k = sf.combined().synthesis() * &gen_matrix(&mut ctx.rng, m, n1 + n2);
    let r = super_minimal_check(&sf, &k, tol)?;
    let direct = rank(sf.combined().synthesis(), None) == m;
    let expected = !shared && m <= n1 + n2;
    Ok(Trial::within(
        r.agree && r.minimal == direct && r.minimal == expected,
        r.null_intersection as f64,
        m as f64,
        "minimality",
    ))
}

fn super_minimal_sufficiency(ctx: &mut Ctx) -> Result<Trial> {
    let (n1, n2, tol) = (ctx.cfg.n1, ctx.cfg.n2, ctx.cfg.tol);
    let complementary = ctx.trial.is_multiple_of(2);
    let m = if complementary { n1 + n2 } else { n1 + n2 + 1 };
    let (fu, fv) = gen_disjoint_pair(&mut ctx.rng, n1, n2, m, n1);
    // the extra slot is zero in both components
    let (fu, fv) = if complementary {
        (fu, fv)
    } else {
        let mut t2 = fv.synthesis().clone();
        for r in 0..n2 {
            t2[(r, m - 1)] = Quaternion::ZERO;
        }
        (fu, FrameSystem::from_synthesis(&t2)?)
    };
    let (k1, k2) = certified_pair(ctx, &fu, &fv);
    let r = minimal_sufficiency(&fu, &k1, &fv, &k2, tol)?;
    let ok = if complementary {
        r.complementary && r.super_minimal && r.orthogonal_ranges && r.dimension_count
    } else {
        !r.complementary && r.orthogonal_ranges && !r.dimension_count
    };
    let residual = if complementary { r.residual } else { 0.0 };
    Ok(Trial::within(ok, residual, 1e-8, "complementary ranges"))
}

fn super_dual_split_entry(ctx: &mut Ctx) -> Result<Trial> {
    let tol = ctx.cfg.tol;
    let (sf, k1, k2) = gen_certified_super(&mut ctx.rng, ctx.cfg);
    let k = oplus_op(&k1, &k2);
    let dual = kdual_canonical(sf.combined(), &k, tol)?;
    let sd = SuperFrame::from_combined(&dual, sf.dims().0)?;
    let (l, r) = super_dual_split(&sf, &sd, &k1, &k2, tol)?;
    let residual = (kdual_residual(sf.left(), sd.left(), &k1)? / op_scale(&k1))
        .max(kdual_residual(sf.right(), sd.right(), &k2)? / op_scale(&k2));
    Ok(Trial::within(l && r, residual, tol, "dual split"))
}

fn super_dual_combine_entry(ctx: &mut Ctx) -> Result<Trial> {
    let (n1, n2, m, tol) = (ctx.cfg.n1, ctx.cfg.n2, ctx.cfg.m, ctx.cfg.tol);
    let (fu, fv) = gen_disjoint_pair(&mut ctx.rng, n1, n2, m, m / 2);
    let (k1, k2) = certified_pair(ctx, &fu, &fv);
    let du = kdual_canonical(&fu, &k1, tol)?;
    let dv = kdual_canonical(&fv, &k2, tol)?;
    let r = super_dual_combine(&fu, &du, &k1, &fv, &dv, &k2, tol)?;
    let residual = r.cross_residuals.0.max(r.cross_residuals.1) / r.scale;
    Ok(Trial::within(r.equivalent && r.combined_dual && r.agree, residual, tol, "dual combination"))
}

fn super_dual_overlap(ctx: &mut Ctx) -> Result<Trial> {
    let (n1, n2, m, tol) = (ctx.cfg.n1, ctx.cfg.n2, ctx.cfg.m, ctx.cfg.tol);
    let fu = gen_frame(&mut ctx.rng, n1, m);
    let fv = gen_frame(&mut ctx.rng, n2, m);
    let (k1, k2) = certified_pair(ctx, &fu, &fv);
    let du = kdual_canonical(&fu, &k1, tol)?;
    let dv = kdual_canonical(&fv, &k2, tol)?;
    let r = super_dual_combine(&fu, &du, &k1, &fv, &dv, &k2, tol)?;
    let stat = r.cross_residuals.0.max(r.cross_residuals.1) / r.scale;
    Ok(Trial::detects(!r.equivalent && !r.combined_dual && r.agree, stat, 1e-4, "overlapping duals"))
}

fn kdual_perturbed(ctx: &mut Ctx) -> Result<Trial> {
    let tol = ctx.cfg.tol;
    let (f, k) = gen_kframe_instance(&mut ctx.rng, ctx.cfg);
    let d = perturb(&kdual_canonical(&f, &k, tol)?)?;
    let residual = kdual_residual(&f, &d, &k)?;
    Ok(Trial::detects(!kdual_verify(&f, &d, &k, tol)?, residual, 1e-4, "perturbed dual"))
}
