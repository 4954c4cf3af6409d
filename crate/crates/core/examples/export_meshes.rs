//! Samples Bour's surface and a Goursat deformation of it and writes OBJ
//! (with a field sidecar) and PLY meshes.
//!
//! Usage: `cargo run --example export_meshes [out-dir]`.

use std::path::PathBuf;

use neutral_modes::corpus::goursat_kappa;
use neutral_modes::energetics::Moduli;
use neutral_modes::meshgen::{export, parse_ply, sample_pair, sample_surface, ExportFormat, GridSpec, Side};
use neutral_modes::Result;

fn main() -> Result<()> {
    let out = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(|| std::env::temp_dir().join("neutral-modes-meshes"));
    let pair = goursat_kappa(1.5)?;
    let grid = GridSpec::new(24, 96)?;

    let source = sample_surface(pair.source(), pair.source().domain(), &grid)?;
    let mut files = export(&source, ExportFormat::Obj, &out.join("bour1.obj"))?;

    let deformed = sample_pair(&pair, pair.source().domain(), &grid, &Moduli::unit(), Side::Target)?;
    files.extend(export(&deformed, ExportFormat::Ply, &out.join("goursat-1.5.ply"))?);

    for f in &files {
        println!("wrote {}", f.display());
    }
    let back = parse_ply(&std::fs::read_to_string(out.join("goursat-1.5.ply"))?)?;
    let wb = back.column("Wb").unwrap_or_default();
    println!(
        "{} vertices, {} faces; Wb in [{:.4}, {:.4}]",
        back.vertices.len(),
        back.faces.len(),
        wb.iter().copied().fold(f64::INFINITY, f64::min),
        wb.iter().copied().fold(0.0, f64::max)
    );
    Ok(())
}
