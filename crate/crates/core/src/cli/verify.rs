//! Cross-route and oracle suites over the registered corpus.

use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use super::config::JobConfig;
use super::{write_file, write_json, Outcome};
use crate::connectors::{
    connectors_from_gradients, fd_starred_gradients, fd_source_gradients, frame_connectors, starred_from_state, FrameTag,
    OrthonormalFrame,
};
use crate::corpus::corpus;
use crate::energetics::{
    bending_closed_form, bending_connector, bending_curvature_route, default_oracle_step, drilling_closed_form,
    drilling_connector, third_rank_oracle,
};
use crate::error::Result;
use crate::meshgen::format_float;
use crate::neutrality::{classify, PROBE_MARGIN};

/// Probes per pair for the density suites.
pub const ROUTE_PROBES: usize = 50;

/// Probes per pair (and frame) for the finite-difference connector suite.
pub const FD_PROBES: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Tolerances {
    pub neutral: f64,
    pub route: f64,
    pub oracle: f64,
    pub fd: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { neutral: 1e-9, route: 1e-8, oracle: 1e-4, fd: 1e-6 }
    }
}

impl Tolerances {
    pub fn from_config(cfg: &JobConfig) -> Result<Self> {
        let d = Tolerances::default();
        Ok(Tolerances {
            neutral: cfg.positive("tol", d.neutral)?,
            route: cfg.positive("tol_route", d.route)?,
            oracle: cfg.positive("tol_oracle", d.oracle)?,
            fd: cfg.positive("tol_fd", d.fd)?,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PairResult {
    pub name: String,
    pub expected: String,
    pub classification: String,
    pub hierarchy_ok: bool,
    pub route_drilling: f64,
    pub route_bending: f64,
    pub third_rank_oracle: f64,
    pub fd_connectors: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteResult {
    pub name: &'static str,
    pub max_deviation: f64,
    pub tol: f64,
    pub pass: bool,
}

/// `|a − b| / max(1, |b|)`.
fn deviation(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1.0)
}

fn check_pair(entry: &crate::corpus::CorpusEntry, tol: &Tolerances) -> Result<PairResult> {
    let pair = entry.build()?;
    let (classification, hierarchy_ok) = match classify(&pair, &pair.probe_points(256, PROBE_MARGIN), tol.neutral) {
        Ok(r) => (r.classification.to_string(), true),
        Err(crate::Error::HierarchyViolation(_)) => ("hierarchy_violation".to_string(), false),
        Err(e) => return Err(e),
    };
    let (mut drill, mut bend, mut oracle, mut fd) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for w in pair.probe_points(ROUTE_PROBES, PROBE_MARGIN) {
        let s = pair.state_at(w)?;
        let (wd, wb) = (drilling_closed_form(&s), bending_closed_form(&s));
        drill = drill.max(deviation(drilling_connector(&s), wd));
        bend = bend.max(deviation(bending_connector(&s), wb)).max(deviation(bending_curvature_route(&s), wb));
        let o = third_rank_oracle(&pair, w, default_oracle_step(w))?;
        oracle = oracle.max(deviation(o.w_d, wd)).max(deviation(o.w_b, wb));
    }
    for w in pair.probe_points(FD_PROBES, 0.05) {
        let step = 1e-5 * w.norm().max(1.0);
        let f = pair.source().tangent_frame_at(w)?;
        let closed = frame_connectors(&f, FrameTag::Source);
        let got = connectors_from_gradients(
            &fd_source_gradients(pair.source(), w, step)?,
            &OrthonormalFrame::from(&f),
            FrameTag::Source,
        );
        fd = fd.max(got.max_abs_diff(&closed) / closed.d_u.norm().max(closed.c.norm()).max(1.0));
        let s = pair.state_at(w)?;
        let closed = starred_from_state(&s);
        let got = connectors_from_gradients(
            &fd_starred_gradients(&pair, w, step)?,
            &OrthonormalFrame::starred(&s),
            FrameTag::StarredUv,
        );
        fd = fd.max(got.max_abs_diff(&closed) / closed.d_u.norm().max(closed.c.norm()).max(1.0));
    }
    Ok(PairResult {
        name: entry.name.to_string(),
        expected: entry.expected.to_string(),
        classification,
        hierarchy_ok,
        route_drilling: drill,
        route_bending: bend,
        third_rank_oracle: oracle,
        fd_connectors: fd,
    })
}

/// Runs every suite over the corpus.
pub fn run_suites(tol: &Tolerances) -> Result<(Vec<PairResult>, Vec<SuiteResult>)> {
    let entries = corpus();
    let pairs: Vec<PairResult> = entries.par_iter().map(|e| check_pair(e, tol)).collect::<Result<_>>()?;
    let count = |f: &dyn Fn(&PairResult) -> bool| pairs.iter().filter(|p| f(p)).count() as f64;
    let max = |f: &dyn Fn(&PairResult) -> f64| pairs.iter().map(f).fold(0.0, f64::max);
    let suite = |name, max_deviation: f64, tol: f64| SuiteResult { name, max_deviation, tol, pass: max_deviation <= tol };
    let suites = vec![
        suite("classification_mismatches", count(&|p| p.classification != p.expected), 0.0),
        suite("hierarchy_violations", count(&|p| !p.hierarchy_ok), 0.0),
        suite("route_drilling", max(&|p| p.route_drilling), tol.route),
        suite("route_bending", max(&|p| p.route_bending), tol.route),
        suite("third_rank_oracle", max(&|p| p.third_rank_oracle), tol.oracle),
        suite("fd_connectors", max(&|p| p.fd_connectors), tol.fd),
    ];
    Ok((pairs, suites))
}

pub(super) fn verify(cfg: &JobConfig) -> Result<Outcome> {
    let tol = Tolerances::from_config(cfg)?;
    let (pairs, suites) = run_suites(&tol)?;
    let mut csv = String::from("suite,max_deviation,tol,pass\n");
    for s in &suites {
        csv.push_str(&format!("{},{},{},{}\n", s.name, format_float(s.max_deviation), format_float(s.tol), s.pass));
    }
    let ok = suites.iter().all(|s| s.pass);
    let out = cfg.out_dir();
    write_file(&out, "summary.csv", &csv)?;
    let status = if ok { "ok" } else { "failed" };
    write_json(&out, "report.json", &json!({"command": "verify", "status": status, "tolerances": tol, "suites": suites, "pairs": pairs}))?;
    print!("{csv}");
    if ok {
        Ok(Outcome::Ok)
    } else {
        let failed: Vec<&str> = suites.iter().filter(|s| !s.pass).map(|s| s.name).collect();
        Ok(Outcome::Failed(format!("suites above tolerance: {}", failed.join(", "))))
    }
}
