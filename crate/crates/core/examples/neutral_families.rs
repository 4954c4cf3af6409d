//! The constructors of each neutral family and their classification.

use neutral_modes::holomorphic::{DomainSpec, HolomorphicFn, Mobius};
use neutral_modes::neutrality::{
    classify, make_bending_neutral, make_bonnet, make_drilling_neutral, make_goursat, GoursatMap, PROBE_MARGIN,
    TOL_EXACT,
};
use neutral_modes::weierstrass::WeierstrassSurface;
use neutral_modes::{Error, Result};
use num_complex::Complex64;

fn main() -> Result<()> {
    let bour1 = WeierstrassSurface::bour(1, DomainSpec::standard_annulus())?;
    let enneper = WeierstrassSurface::enneper(DomainSpec::standard_annulus())?;
    let rotation = HolomorphicFn::mobius(Mobius::special(Complex64::new(0.6, 0.0), Complex64::new(0.0, 0.8))?);

    let pairs = [
        ("bonnet, alpha0 = 1", make_bonnet(&bour1, 1.0)?),
        ("drilling neutral, lambda = 3, rotated", make_drilling_neutral(&bour1, &rotation, 3.0, 0.2)?),
        ("bending neutral, g = w^2", make_bending_neutral(&enneper, &HolomorphicFn::identity(), &HolomorphicFn::parse("pow(id,2)")?)?),
        ("goursat, kappa = 1/2", make_goursat(&bour1, GoursatMap::Kappa(0.5))?),
    ];
    for (name, pair) in &pairs {
        let r = classify(pair, &pair.probe_points(128, PROBE_MARGIN), TOL_EXACT)?;
        println!(
            "{name:<40} F* = {:<48} -> {:<16} (stretch {:.1e}, drill {:.1e}, bend {:.1e})",
            pair.target().f().to_string(),
            r.classification.to_string(),
            r.stretching_residual,
            r.drilling_residual,
            r.bending_residual
        );
    }

    // A dilation of the sphere is not bending-neutral, so it cannot carry a drilling-neutral family.
    match make_drilling_neutral(&bour1, &HolomorphicFn::parse("scale(2,id)")?, 1.0, 0.0) {
        Err(Error::NotNeutral(r)) => println!("h = 2w rejected: residual {r:.3}"),
        other => println!("unexpected: {:?}", other.map(|_| ())),
    }
    Ok(())
}
