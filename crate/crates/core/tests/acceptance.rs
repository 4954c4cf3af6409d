//! Acceptance suite: one pass/fail line per criterion.
//!
//! Every tolerance is a named constant below. Relative comparisons against
//! a reference `b` use `|a − b| ≤ tol·|b|` where `b ≠ 0`; where a reference
//! vanishes (or for suites mixing neutral and generic pairs) the scale is
//! `max(|b|, 1)`, stated on the line.

use std::collections::BTreeMap;
use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, FRAC_PI_6};
use std::path::Path as FsPath;
use std::process::Command;
use std::time::Instant;

use neutral_modes::connectors::{
    connectors_from_gradients, fd_source_gradients, fd_starred_gradients, frame_connectors, starred_from_state, FrameTag,
    OrthonormalFrame,
};
use neutral_modes::corpus::{
    corpus, dilation, enneper_to_bour3, expected_enneper_bour3, expected_goursat_kappa, goursat_kappa, soft_elasticity,
};
use neutral_modes::energetics::{
    bending_closed_form, bending_connector, default_oracle_step, drilling_closed_form, drilling_connector, total_density,
    third_rank_oracle, Moduli,
};
use neutral_modes::holomorphic::{DomainSpec, HolomorphicFn, Mobius, Path};
use neutral_modes::meshgen::{sample_pair, GridSpec, SampledSurface, Side};
use neutral_modes::neutrality::{
    area_preserving_moebius_check, bending_neutral_residual, classify, Classification, PROBE_MARGIN,
};
use neutral_modes::weierstrass::WeierstrassSurface;
use neutral_modes::Result;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const GRID: (usize, usize) = (32, 64);
const TOL_CLOSED_FORM: f64 = 1e-9;
const TOL_NEUTRAL_DENSITY: f64 = 1e-10;
const TOL_HIERARCHY: f64 = 1e-8;
const TOL_ROUTE: f64 = 1e-8;
const TOL_ORACLE: f64 = 1e-4;
const ORACLE_PROBES: usize = 50;
const GEOMETRY_PROBES: usize = 1000;
const TOL_FRAME_IDENTITY: f64 = 1e-12;
const TOL_FD: f64 = 1e-6;
const FD_STEP: f64 = 1e-5;
const FD_PROBES: usize = 20;
const MOEBIUS_MAPS: usize = 500;
const TOL_BENDING_RESIDUAL: f64 = 1e-9;
const TOL_SIGN_INVARIANCE: f64 = 1e-12;
const TOL_DILATION_STRETCH: f64 = 1e-12;
const RUNTIME_LIMIT_S: f64 = 5.0;

/// `|a − b| / |b|`, or `|a|` when `b = 0`.
fn rel(a: f64, b: f64) -> f64 {
    if b == 0.0 {
        a.abs()
    } else {
        (a - b).abs() / b.abs()
    }
}

/// `|a − b| / max(|b|, 1)`.
fn rel1(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1.0)
}

fn grid() -> GridSpec {
    GridSpec::new(GRID.0, GRID.1).expect("valid grid")
}

fn sample(pair: &neutral_modes::deformation::DeformationPair) -> Result<SampledSurface> {
    sample_pair(pair, pair.source().domain(), &grid(), &Moduli::unit(), Side::Target)
}

type Outcome = Result<(bool, String)>;

fn enneper_bour3() -> Outcome {
    let start = Instant::now();
    let pair = enneper_to_bour3()?;
    let mesh = sample(&pair)?;
    let secs = start.elapsed().as_secs_f64();
    let (mut ws, mut wd, mut wb) = (0.0f64, 0.0f64, 0.0f64);
    for v in &mesh.vertices {
        let [s, d, _] = expected_enneper_bour3(v.w);
        ws = ws.max(rel(v.w_s, s));
        wd = wd.max(rel(v.w_d, d));
        wb = wb.max(v.w_b.abs());
    }
    let complete = mesh.vertices.len() == GRID.0 * GRID.1;
    let pass = complete && ws <= TOL_CLOSED_FORM && wd <= TOL_CLOSED_FORM && wb <= TOL_NEUTRAL_DENSITY && secs < RUNTIME_LIMIT_S;
    Ok((
        pass,
        format!(
            "{} vertices: rel dev Ws {ws:.1e}, Wd {wd:.1e} (tol {TOL_CLOSED_FORM:e}); max Wb {wb:.1e} (tol {TOL_NEUTRAL_DENSITY:e}); {secs:.2} s (< {RUNTIME_LIMIT_S} s)",
            mesh.vertices.len()
        ),
    ))
}

fn goursat() -> Outcome {
    let kappas = [0.5, -0.5, 2.0 / 3.0, -2.0 / 3.0, 1.5, -1.5, 2.0];
    let mut dev: f64 = 0.0;
    let mut fields: BTreeMap<u64, Vec<[f64; 3]>> = BTreeMap::new();
    for k in kappas {
        let mesh = sample(&goursat_kappa(k)?)?;
        if mesh.vertices.len() != GRID.0 * GRID.1 {
            return Ok((false, format!("kappa {k}: {} vertices", mesh.vertices.len())));
        }
        for v in &mesh.vertices {
            let e = expected_goursat_kappa(k, v.w);
            dev = dev.max(rel(v.w_s, e[0])).max(rel(v.w_d, e[1])).max(rel(v.w_b, e[2]));
        }
        fields.entry(k.abs().to_bits()).or_default().extend(mesh.vertices.iter().map(|v| [v.w_s, v.w_d, v.w_b]));
    }
    let mut sign: f64 = 0.0;
    for vals in fields.values() {
        let half = vals.len() / 2;
        if half * 2 == vals.len() && half > 0 && vals.len() > GRID.0 * GRID.1 {
            for (a, b) in vals[..half].iter().zip(&vals[half..]) {
                for i in 0..3 {
                    sign = sign.max(rel(a[i], b[i]));
                }
            }
        }
    }
    let e = total_density(&goursat_kappa(2.0)?, Complex64::new(0.0, 1.0), &Moduli::unit())?;
    let spot = rel(e.w_s, 1.0 / 8.0).max(rel(e.w_d, 36.0 / 25.0)).max(rel(e.w_b, 1296.0 / 625.0));
    let pass = dev <= TOL_CLOSED_FORM && sign <= TOL_SIGN_INVARIANCE && spot <= TOL_CLOSED_FORM;
    Ok((
        pass,
        format!(
            "7 kappas on grid: rel dev {dev:.1e} (tol {TOL_CLOSED_FORM:e}); kappa vs -kappa {sign:.1e} (tol {TOL_SIGN_INVARIANCE:e}); kappa=2 at |w|=1 ({:.9}, {:.9}, {:.9}) rel dev {spot:.1e}",
            e.w_s, e.w_d, e.w_b
        ),
    ))
}

fn soft() -> Outcome {
    let mut sup: f64 = 0.0;
    let mut classes = Vec::new();
    for a in [Complex64::new(0.0, 1.0), Complex64::new(1.0, 0.0)] {
        for alpha in [0.0, FRAC_PI_6, FRAC_PI_4, FRAC_PI_2] {
            let pair = soft_elasticity(a, Complex64::new(-1.0, 0.0), alpha)?;
            for v in &sample(&pair)?.vertices {
                sup = sup.max(v.w_s.abs()).max(v.w_d.abs()).max(v.w_b.abs());
            }
            classes.push(classify(&pair, &pair.probe_points(256, PROBE_MARGIN), TOL_NEUTRAL_DENSITY)?.classification);
        }
    }
    let isometries = classes.iter().filter(|c| **c == Classification::Isometry).count();
    Ok((
        sup <= TOL_NEUTRAL_DENSITY && isometries == classes.len(),
        format!(
            "8 panels: max density {sup:.1e} (tol {TOL_NEUTRAL_DENSITY:e}); {isometries}/{} classified isometry",
            classes.len()
        ),
    ))
}

fn hierarchy() -> Outcome {
    let entries = corpus();
    let mut violations = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    for e in &entries {
        let pair = e.build()?;
        match classify(&pair, &pair.probe_points(256, PROBE_MARGIN), TOL_HIERARCHY) {
            Ok(r) => {
                seen.insert(r.classification.to_string());
                let s_ok = r.stretching_residual <= TOL_HIERARCHY;
                let d_ok = r.drilling_residual <= 10.0 * TOL_HIERARCHY;
                let b_ok = r.bending_residual <= 10.0 * TOL_HIERARCHY;
                if (s_ok && !d_ok) || (r.drilling_residual <= TOL_HIERARCHY && !b_ok) {
                    violations.push(e.name);
                }
            }
            Err(_) => violations.push(e.name),
        }
    }
    Ok((
        entries.len() >= 12 && seen.len() == 4 && violations.is_empty(),
        format!(
            "{} pairs, {} classes ({}); violations: {} (tol {TOL_HIERARCHY:e})",
            entries.len(),
            seen.len(),
            seen.into_iter().collect::<Vec<_>>().join(", "),
            if violations.is_empty() { "none".to_string() } else { violations.join(", ") }
        ),
    ))
}

fn routes() -> Outcome {
    let (mut conn, mut oracle) = (0.0f64, 0.0f64);
    let entries = corpus();
    for e in &entries {
        let pair = e.build()?;
        for w in pair.probe_points(ORACLE_PROBES, PROBE_MARGIN) {
            let s = pair.state_at(w)?;
            let (wd, wb) = (drilling_closed_form(&s), bending_closed_form(&s));
            conn = conn.max(rel1(drilling_connector(&s), wd)).max(rel1(bending_connector(&s), wb));
            let o = third_rank_oracle(&pair, w, default_oracle_step(w))?;
            oracle = oracle.max(rel1(o.w_d, wd)).max(rel1(o.w_b, wb));
        }
    }
    Ok((
        conn <= TOL_ROUTE && oracle <= TOL_ORACLE,
        format!(
            "{} pairs x {ORACLE_PROBES} probes, scale max(|closed|,1): connector {conn:.1e} (tol {TOL_ROUTE:e}), third-rank FD oracle {oracle:.1e} (tol {TOL_ORACLE:e})",
            entries.len()
        ),
    ))
}

fn geometry() -> Outcome {
    let surfaces = [
        ("enneper", WeierstrassSurface::enneper(DomainSpec::standard_annulus())?),
        ("bour1", WeierstrassSurface::bour(1, DomainSpec::standard_annulus())?),
        ("bour3", WeierstrassSurface::bour(3, DomainSpec::standard_annulus())?),
    ];
    let i = Complex64::new(0.0, 1.0);
    let (mut iso, mut orth, mut trace, mut fd_pos, mut fd_curv) = (0.0f64, 0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for (_, s) in &surfaces {
        for w in s.domain().quasi_random_points(GEOMETRY_PROBES, 0.01) {
            let f = s.tangent_frame_at(w)?;
            let (ru, rv) = f.tangents();
            iso = iso.max(rel(ru.norm(), rv.norm()));
            orth = orth.max(ru.dot(&rv).abs() / (ru.norm() * rv.norm()));
            let k = f.curvature_tensor();
            trace = trace.max(k.trace().abs() / k.norm().max(1.0));

            // Independent: short-segment integrals of the Weierstrass integrand.
            let h = FD_STEP * w.norm().max(1.0);
            let du = s.displacement_along(&Path::line(w - h, w + h))? / (2.0 * h);
            let dv = s.displacement_along(&Path::line(w - i * h, w + i * h))? / (2.0 * h);
            fd_pos = fd_pos.max((du - ru).norm() / ru.norm()).max((dv - rv).norm() / rv.norm());

            let nu = |z: Complex64| s.tangent_frame_at(z).map(|t| t.nu);
            let nu_u = (nu(w + h)? - nu(w - h)?) / (2.0 * h);
            let nu_v = (nu(w + i * h)? - nu(w - i * h)?) / (2.0 * h);
            let fd = f.surface_gradient(nu_u, nu_v);
            fd_curv = fd_curv.max((fd - k).amax() / k.amax().max(1.0));
        }
    }
    Ok((
        iso <= TOL_FRAME_IDENTITY && orth <= TOL_FRAME_IDENTITY && trace <= TOL_FRAME_IDENTITY && fd_pos <= TOL_FD && fd_curv <= TOL_FD,
        format!(
            "3 surfaces x {GEOMETRY_PROBES} probes: ||r_u|-|r_v|| {iso:.1e}, cos(r_u,r_v) {orth:.1e}, tr(grad nu) {trace:.1e} (tol {TOL_FRAME_IDENTITY:e}); FD r_u,r_v {fd_pos:.1e}, FD curvature tensor {fd_curv:.1e} (tol {TOL_FD:e})"
        ),
    ))
}

fn frame_oracle() -> Outcome {
    let (mut src, mut star) = (0.0f64, 0.0f64);
    let entries = corpus();
    for e in &entries {
        let pair = e.build()?;
        for w in pair.probe_points(FD_PROBES, 0.05) {
            let step = FD_STEP * w.norm().max(1.0);
            let f = pair.source().tangent_frame_at(w)?;
            let closed = frame_connectors(&f, FrameTag::Source);
            let fd = connectors_from_gradients(&fd_source_gradients(pair.source(), w, step)?, &OrthonormalFrame::from(&f), FrameTag::Source);
            src = src.max(fd.max_abs_diff(&closed) / closed.d_u.norm().max(closed.c.norm()).max(1.0));

            let s = pair.state_at(w)?;
            let closed = starred_from_state(&s);
            let fd = connectors_from_gradients(&fd_starred_gradients(&pair, w, step)?, &OrthonormalFrame::starred(&s), FrameTag::StarredUv);
            star = star.max(fd.max_abs_diff(&closed) / closed.d_u.norm().max(closed.c.norm()).max(1.0));
        }
    }
    Ok((
        src <= TOL_FD && star <= TOL_FD,
        format!(
            "{} pairs x {FD_PROBES} probes, scale max(|c|,|d_u|,1): source frame {src:.1e}, deformed frame {star:.1e} (tol {TOL_FD:e})",
            entries.len()
        ),
    ))
}

fn moebius() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(20_261_016);
    let z = |rng: &mut ChaCha8Rng| Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
    let probes = DomainSpec::disk(1.5)?.quasi_random_points(60, 0.0);
    let (mut coefficient_disagree, mut residual_disagree, mut special) = (0, 0, 0);
    for k in 0..MOEBIUS_MAPS {
        let m = if k % 2 == 0 { Mobius::special(z(&mut rng), z(&mut rng))? } else { Mobius::new(z(&mut rng), z(&mut rng), z(&mut rng), z(&mut rng))? };
        let (a, b, c, d) = m.coefficients();
        let check = area_preserving_moebius_check(a, b, c, d)?.area_preserving;
        // Independent normalization: divide by a square root of ad − bc.
        let s = (a * d - b * c).sqrt();
        let (an, bn, cn, dn) = (a / s, b / s, c / s, d / s);
        let scale = (an.norm_sqr() + bn.norm_sqr() + cn.norm_sqr() + dn.norm_sqr()).sqrt();
        let form = (dn - an.conj()).norm() <= 1e-12 * scale && (bn + cn.conj()).norm() <= 1e-12 * scale;
        let form = form || ((dn + an.conj()).norm() <= 1e-12 * scale && (bn - cn.conj()).norm() <= 1e-12 * scale);
        coefficient_disagree += usize::from(check != form);
        let pts: Vec<_> = probes.iter().copied().filter(|&w| m.derivative_at(w).is_some_and(|d| d.norm() < 1e6)).collect();
        let residual = bending_neutral_residual(&HolomorphicFn::mobius(m), &pts)?;
        residual_disagree += usize::from(check != (residual <= TOL_BENDING_RESIDUAL));
        special += usize::from(check);
    }
    Ok((
        coefficient_disagree == 0 && residual_disagree == 0 && special > 0 && special < MOEBIUS_MAPS,
        format!(
            "{MOEBIUS_MAPS} maps, {special} area preserving: disagreements with normal form {coefficient_disagree}, with residual <= {TOL_BENDING_RESIDUAL:e}: {residual_disagree}"
        ),
    ))
}

fn pure_dilation() -> Outcome {
    let mesh = sample(&dilation(2.0)?)?;
    let (mut ws, mut wdb) = (0.0f64, 0.0f64);
    for v in &mesh.vertices {
        ws = ws.max(rel(v.w_s, 2.0));
        wdb = wdb.max(v.w_d.abs()).max(v.w_b.abs());
    }
    Ok((
        ws <= TOL_DILATION_STRETCH && wdb <= TOL_NEUTRAL_DENSITY && mesh.vertices.len() == GRID.0 * GRID.1,
        format!(
            "lambda = 2 on {} vertices: rel dev Ws from 2 {ws:.1e} (tol {TOL_DILATION_STRETCH:e}); max Wd, Wb {wdb:.1e} (tol {TOL_NEUTRAL_DENSITY:e})",
            mesh.vertices.len()
        ),
    ))
}

fn files(dir: &FsPath) -> BTreeMap<String, Vec<u8>> {
    let mut out = BTreeMap::new();
    let mut stack = vec![dir.to_path_buf()];
    while let Some(d) = stack.pop() {
        for entry in std::fs::read_dir(&d).into_iter().flatten().flatten() {
            let p = entry.path();
            if p.is_dir() {
                stack.push(p);
            } else if let Ok(bytes) = std::fs::read(&p) {
                out.insert(p.strip_prefix(dir).unwrap_or(&p).to_string_lossy().into_owned(), bytes);
            }
        }
    }
    out
}

fn cli() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_neutral-modes");
    let tmp = tempfile::tempdir()?;
    let mut runs = Vec::new();
    for k in 0..2 {
        let out = tmp.path().join(format!("run{k}"));
        let status = Command::new(bin).args(["reproduce", "all", "--out"]).arg(&out).output()?;
        runs.push((status.status.code(), files(&out)));
    }
    let identical = runs[0].1 == runs[1].1 && !runs[0].1.is_empty();
    let verify = Command::new(bin).args(["verify", "--out"]).arg(tmp.path().join("verify")).output()?;
    let codes = (runs[0].0, runs[1].0, verify.status.code());
    Ok((
        identical && codes == (Some(0), Some(0), Some(0)),
        format!(
            "reproduce all x2: {} files, byte-identical: {identical}; exit codes reproduce {:?}/{:?}, verify {:?}",
            runs[0].1.len(),
            codes.0,
            codes.1,
            codes.2
        ),
    ))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 10] = [
        ("enneper-bour3 densities on grid", enneper_bour3),
        ("goursat-kappa densities and sign invariance", goursat),
        ("soft elasticity is free", soft),
        ("neutrality hierarchy over corpus", hierarchy),
        ("route agreement", routes),
        ("geometry invariants", geometry),
        ("frame-gradient oracle", frame_oracle),
        ("area-preserving moebius maps", moebius),
        ("pure dilation", pure_dilation),
        ("cli determinism and verify", cli),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let (pass, detail) = match run() {
            Ok(r) => r,
            Err(e) => (false, format!("error: {e}")),
        };
        failed += usize::from(!pass);
        println!("[{}] {:>2} {name}: {detail}", if pass { "PASS" } else { "FAIL" }, k + 1);
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
