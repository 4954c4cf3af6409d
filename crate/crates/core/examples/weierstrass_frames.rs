//! Frames, metric and curvature of Enneper's surface and two Bour surfaces.
//!
//! Prints position, metric factor `|r_,u|`, normal and Gaussian curvature at
//! a few parameter points, and checks the frame is orthonormal.

use neutral_modes::holomorphic::DomainSpec;
use neutral_modes::weierstrass::WeierstrassSurface;
use neutral_modes::Result;
use num_complex::Complex64;

fn main() -> Result<()> {
    let surfaces = [
        ("enneper", WeierstrassSurface::enneper(DomainSpec::disk(2.0)?)?),
        ("bour m=1", WeierstrassSurface::bour(1, DomainSpec::standard_annulus())?),
        ("bour m=3", WeierstrassSurface::bour(3, DomainSpec::standard_annulus())?),
    ];
    let points = [Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0), Complex64::from_polar(1.5, 2.0)];
    for (name, s) in &surfaces {
        println!("{name}: F = {}", s.f());
        for &w in &points {
            let f = s.frame_at(w)?;
            let k = s.curvature_at(w)?;
            let defect = f.e_u.dot(&f.e_v).abs().max(f.e_u.dot(&f.nu).abs()).max((f.nu.norm() - 1.0).abs());
            println!(
                "  w = {w:.3}  r = ({:+.4}, {:+.4}, {:+.4})  |r_u| = {:.4}  K = {:+.5}  H = {:.1e}  frame defect {:.1e}",
                f.r.x, f.r.y, f.r.z, f.metric_factor, k.gauss, k.mean, defect
            );
        }
    }
    Ok(())
}
