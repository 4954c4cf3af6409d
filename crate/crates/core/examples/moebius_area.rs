//! Area-preserving Möbius maps are exactly the rotations of the sphere.
//!
//! Draws random maps, half of them of the special form `(aw − c̄)/(cw + ā)`,
//! and compares the coefficient test with the pointwise neutrality residual.

use neutral_modes::holomorphic::{DomainSpec, HolomorphicFn, Mobius};
use neutral_modes::neutrality::{area_preserving_moebius_check, bending_neutral_residual, spherical_arc_ratio};
use neutral_modes::Result;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let z = |rng: &mut ChaCha8Rng| Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
    let probes = DomainSpec::disk(0.9)?.quasi_random_points(40, 0.0);
    let (mut agree, mut special_count) = (0, 0);
    let total = 200;
    for k in 0..total {
        let m = if k % 2 == 0 {
            Mobius::special(z(&mut rng), z(&mut rng))?
        } else {
            Mobius::new(z(&mut rng), z(&mut rng), z(&mut rng), z(&mut rng))?
        };
        let (a, b, c, d) = m.coefficients();
        let check = area_preserving_moebius_check(a, b, c, d)?.area_preserving;
        let pts: Vec<_> = probes.iter().copied().filter(|&w| m.derivative_at(w).is_some_and(|d| d.norm() < 1e6)).collect();
        let residual = bending_neutral_residual(&HolomorphicFn::mobius(m), &pts)?;
        special_count += usize::from(check);
        agree += usize::from(check == (residual <= 1e-9));
    }
    println!("{special_count} of {total} maps area preserving; coefficient test and residual agree on {agree}");

    let two = HolomorphicFn::parse("scale(2,id)")?;
    let w = Complex64::new(1.0, 0.0);
    println!("h = 2w at w = 1: arc ratio {}", spherical_arc_ratio(&two, w, Complex64::new(1e-6, 0.0))?);
    Ok(())
}
