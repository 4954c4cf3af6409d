//! The worked example cases: soft elasticity, pure dilation, Enneper to
//! Bour `m = 3`, and the Goursat family `h = κw`.
//!
//! Each case writes a source mesh, one target mesh per panel, and table
//! rows comparing closed-form densities with the library's evaluation at
//! `|w| ∈ {1/2, 1, 2}`, `arg w = π/2`.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, FRAC_PI_6};
use std::path::Path as FsPath;

use clap::ValueEnum;
use num_complex::Complex64;
use serde::Serialize;
use serde_json::json;

use super::config::JobConfig;
use super::{relative, write_file, write_json, Outcome};
use crate::corpus::{
    dilation, enneper_to_bour3, expected_dilation, expected_enneper_bour3, expected_goursat_kappa, goursat_kappa,
    soft_elasticity,
};
use crate::deformation::DeformationPair;
use crate::energetics::total_density;
use crate::error::{Error, Result};
use crate::meshgen::{export, format_float, sample_pair, Side};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Case {
    #[value(name = "soft-elasticity")]
    SoftElasticity,
    #[value(name = "dilation")]
    Dilation,
    #[value(name = "enneper-bour3")]
    EnneperBour3,
    #[value(name = "goursat-kappa")]
    GoursatKappa,
    #[value(name = "all")]
    All,
}

impl Case {
    pub fn name(&self) -> &'static str {
        match self {
            Case::SoftElasticity => "soft-elasticity",
            Case::Dilation => "dilation",
            Case::EnneperBour3 => "enneper-bour3",
            Case::GoursatKappa => "goursat-kappa",
            Case::All => "all",
        }
    }
}

pub const SAMPLE_RADII: [f64; 3] = [0.5, 1.0, 2.0];
pub const SAMPLE_ANGLE: f64 = FRAC_PI_2;

/// Goursat parameters shown by default.
pub const GOURSAT_KAPPAS: [f64; 6] = [0.5, -0.5, 2.0 / 3.0, -2.0 / 3.0, 1.5, -1.5];

type Expected = Box<dyn Fn(Complex64) -> [f64; 3]>;

struct Panel {
    slug: String,
    params: String,
    pair: DeformationPair,
    expected: Expected,
}

#[derive(Clone, Debug, Serialize)]
pub struct Row {
    pub case: &'static str,
    pub panel: String,
    pub rho: f64,
    pub theta: f64,
    pub expected: [f64; 3],
    pub computed: [f64; 3],
    pub deviation: f64,
}

fn slug(x: f64) -> String {
    format_float(x).replace('-', "m")
}

fn panels(case: Case, cfg: &JobConfig) -> Result<Vec<Panel>> {
    let i = Complex64::new(0.0, 1.0);
    let one = Complex64::new(1.0, 0.0);
    Ok(match case {
        Case::SoftElasticity => {
            let alphas = match cfg.f64_opt("alpha0")? {
                Some(a) => vec![a],
                None => vec![0.0, FRAC_PI_6, FRAC_PI_4, FRAC_PI_2],
            };
            let mut out = Vec::new();
            for (name, a) in [("i", i), ("1", one)] {
                for &alpha in &alphas {
                    out.push(Panel {
                        slug: format!("a{name}-alpha{}deg", slug(alpha.to_degrees())),
                        params: format!("a={name} c=-1 alpha0={}", format_float(alpha)),
                        pair: soft_elasticity(a, -one, alpha)?,
                        expected: Box::new(|_| [0.0; 3]),
                    });
                }
            }
            out
        }
        Case::Dilation => {
            let lambda = cfg.f64_or("lambda", 2.0)?;
            vec![Panel {
                slug: format!("lambda-{}", slug(lambda)),
                params: format!("lambda={}", format_float(lambda)),
                pair: dilation(lambda)?,
                expected: Box::new(move |_| expected_dilation(lambda)),
            }]
        }
        Case::EnneperBour3 => vec![Panel {
            slug: "bour3".into(),
            params: "h=id".into(),
            pair: enneper_to_bour3()?,
            expected: Box::new(expected_enneper_bour3),
        }],
        Case::GoursatKappa => {
            let kappas = match cfg.f64_opt("kappa")? {
                Some(k) => vec![k],
                None => GOURSAT_KAPPAS.to_vec(),
            };
            kappas
                .into_iter()
                .map(|k| {
                    Ok(Panel {
                        slug: format!("kappa-{}", slug(k)),
                        params: format!("kappa={}", format_float(k)),
                        pair: goursat_kappa(k)?,
                        expected: Box::new(move |w| expected_goursat_kappa(k, w)),
                    })
                })
                .collect::<Result<_>>()?
        }
        Case::All => return Err(Error::InvalidParams("`all` has no panels of its own".into())),
    })
}

/// Closed-form vs computed table rows for one case.
pub fn table(case: Case, cfg: &JobConfig) -> Result<Vec<Row>> {
    Ok(run_case(case, cfg, None)?.0)
}

fn run_case(case: Case, cfg: &JobConfig, out: Option<&FsPath>) -> Result<(Vec<Row>, Vec<String>)> {
    let moduli = cfg.moduli()?;
    let panels = panels(case, cfg)?;
    let mut rows = Vec::new();
    let mut files = Vec::new();
    for p in &panels {
        for rho in SAMPLE_RADII {
            let w = Complex64::from_polar(rho, SAMPLE_ANGLE);
            let e = total_density(&p.pair, w, &moduli)?;
            let computed = [e.w_s, e.w_d, e.w_b];
            let expected = (p.expected)(w);
            let deviation = computed
                .iter()
                .zip(&expected)
                .map(|(a, b)| (a - b).abs() / b.abs().max(1.0))
                .fold(0.0, f64::max);
            rows.push(Row { case: case.name(), panel: p.params.clone(), rho, theta: SAMPLE_ANGLE, expected, computed, deviation });
        }
    }
    if let Some(out) = out {
        let grid = cfg.grid()?;
        let format = cfg.format()?;
        let dir = out.join(case.name());
        let mut meshes = Vec::new();
        if let Some(first) = panels.first() {
            meshes.push(("source".to_string(), sample_pair(&first.pair, first.pair.source().domain(), &grid, &moduli, Side::Source)?));
        }
        for p in &panels {
            meshes.push((p.slug.clone(), sample_pair(&p.pair, p.pair.source().domain(), &grid, &moduli, Side::Target)?));
        }
        for (name, mesh) in meshes {
            for f in export(&mesh, format, &dir.join(format!("{name}.{}", format.extension())))? {
                files.push(relative(&f, out));
            }
        }
    }
    Ok((rows, files))
}

fn rows_csv(rows: &[Row]) -> String {
    let mut out = String::from("case,panel,rho,theta,Ws_expected,Ws,Wd_expected,Wd,Wb_expected,Wb,deviation\n");
    for r in rows {
        let f = format_float;
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{}\n",
            r.case,
            r.panel,
            f(r.rho),
            f(r.theta),
            f(r.expected[0]),
            f(r.computed[0]),
            f(r.expected[1]),
            f(r.computed[1]),
            f(r.expected[2]),
            f(r.computed[2]),
            f(r.deviation)
        ));
    }
    out
}

pub(super) fn reproduce(case: Case, cfg: &JobConfig) -> Result<Outcome> {
    let tol = cfg.tol()?;
    let out = cfg.out_dir();
    let cases = match case {
        Case::All => vec![Case::SoftElasticity, Case::Dilation, Case::EnneperBour3, Case::GoursatKappa],
        c => vec![c],
    };
    let (mut rows, mut files) = (Vec::new(), Vec::new());
    for c in cases {
        let (r, f) = run_case(c, cfg, Some(&out))?;
        rows.extend(r);
        files.extend(f);
    }
    let csv = rows_csv(&rows);
    write_file(&out, "summary.csv", &csv)?;
    let worst = rows.iter().map(|r| r.deviation).fold(0.0, f64::max);
    let ok = worst <= tol;
    let report = json!({
        "command": "reproduce",
        "case": case.name(),
        "status": if ok { "ok" } else { "failed" },
        "tol": tol,
        "max_deviation": worst,
        "rows": rows,
        "files": files,
    });
    write_json(&out, "report.json", &report)?;
    print!("{csv}");
    if ok {
        Ok(Outcome::Ok)
    } else {
        Ok(Outcome::Failed(format!("closed-form deviation {worst:e} above {tol:e}")))
    }
}
