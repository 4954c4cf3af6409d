use serde_json::json;

use super::config::JobConfig;
use super::{relative, write_file, write_json, Outcome};
use crate::error::Result;
use crate::meshgen::{export, format_float, sample_pair, sample_surface, SampledSurface};
use crate::neutrality::{classify as classify_pair, PROBE_MARGIN};

/// `(name, min, max, sup |·|)` for K and each density, plus the weighted total.
fn field_stats(s: &SampledSurface, cfg: &JobConfig) -> Result<Vec<(&'static str, f64, f64, f64)>> {
    let moduli = cfg.moduli()?;
    let getters: [(&'static str, Box<dyn Fn(&crate::meshgen::Vertex) -> f64>); 5] = [
        ("K", Box::new(|v| v.gauss)),
        ("Ws", Box::new(|v| v.w_s)),
        ("Wd", Box::new(|v| v.w_d)),
        ("Wb", Box::new(|v| v.w_b)),
        ("W", Box::new(move |v| moduli.weigh(v.w_s, v.w_d, v.w_b))),
    ];
    Ok(getters
        .iter()
        .map(|(name, get)| {
            let xs = s.vertices.iter().map(get);
            let (lo, hi, sup) = xs.fold((f64::INFINITY, f64::NEG_INFINITY, 0.0f64), |(lo, hi, sup), x| {
                (lo.min(x), hi.max(x), sup.max(x.abs()))
            });
            (*name, lo, hi, sup)
        })
        .collect())
}

fn stats_csv(stats: &[(&str, f64, f64, f64)]) -> String {
    let mut out = String::from("field,min,max,sup\n");
    for (name, lo, hi, sup) in stats {
        out.push_str(&format!("{name},{},{},{}\n", format_float(*lo), format_float(*hi), format_float(*sup)));
    }
    out
}

pub(super) fn surface(cfg: &JobConfig) -> Result<Outcome> {
    let s = cfg.source_surface()?;
    let format = cfg.format()?;
    let out = cfg.out_dir();
    let mesh = sample_surface(&s, s.domain(), &cfg.grid()?)?;
    let files = export(&mesh, format, &out.join(format!("surface.{}", format.extension())))?;
    let stats = field_stats(&mesh, cfg)?;
    write_file(&out, "summary.csv", &stats_csv(&stats))?;
    let report = json!({
        "command": "surface",
        "status": "ok",
        "source": s.f().to_string(),
        "vertices": mesh.vertices.len(),
        "excluded": mesh.excluded_count(),
        "faces": mesh.faces.len(),
        "files": files.iter().map(|f| relative(f, &out)).collect::<Vec<_>>(),
    });
    write_json(&out, "report.json", &report)?;
    println!("surface: {} vertices, {} faces -> {}", mesh.vertices.len(), mesh.faces.len(), out.display());
    Ok(Outcome::Ok)
}

pub(super) fn energies(cfg: &JobConfig) -> Result<Outcome> {
    let pair = cfg.pair()?;
    let format = cfg.format()?;
    let out = cfg.out_dir();
    let mesh = sample_pair(&pair, pair.source().domain(), &cfg.grid()?, &cfg.moduli()?, cfg.side()?)?;
    let files = export(&mesh, format, &out.join(format!("energies.{}", format.extension())))?;
    let stats = field_stats(&mesh, cfg)?;
    write_file(&out, "summary.csv", &stats_csv(&stats))?;
    let report = json!({
        "command": "energies",
        "status": "ok",
        "source": pair.source().f().to_string(),
        "target": pair.target().f().to_string(),
        "h": pair.h().to_string(),
        "vertices": mesh.vertices.len(),
        "excluded": mesh.excluded_count(),
        "stats": stats.iter().map(|(n, lo, hi, sup)| json!({"field": n, "min": lo, "max": hi, "sup": sup})).collect::<Vec<_>>(),
        "files": files.iter().map(|f| relative(f, &out)).collect::<Vec<_>>(),
    });
    write_json(&out, "report.json", &report)?;
    print!("{}", stats_csv(&stats));
    Ok(Outcome::Ok)
}

pub(super) fn classify(cfg: &JobConfig) -> Result<Outcome> {
    let pair = cfg.pair()?;
    let probes = pair.probe_points(cfg.probes()?, PROBE_MARGIN);
    let report = classify_pair(&pair, &probes, cfg.tol()?)?;
    println!("{}", report.classification);
    if cfg.is_set("out") {
        let value = json!({
            "command": "classify",
            "status": "ok",
            "source": pair.source().f().to_string(),
            "target": pair.target().f().to_string(),
            "h": pair.h().to_string(),
            "report": report,
        });
        write_json(&cfg.out_dir(), "report.json", &value)?;
    }
    Ok(Outcome::Ok)
}
